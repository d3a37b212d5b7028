#include "lmgdtc/floquet.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace lmgdtc {

void FloquetConfig::validate() const {
  params.validate();
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw Error("FloquetConfig: tau must be finite and non-negative");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw Error("FloquetConfig: epsilon must lie in [0, 1]");
}

UnitaryOperator floquet_operator(const SpinSystem& sys, const FloquetConfig& cfg) {
  cfg.validate();
  const UnitaryOperator drift = unitary_from_hamiltonian(build_h1(sys, cfg.params), cfg.tau);
  const UnitaryOperator kick = kick_unitary(sys, cfg.phi());
  return UnitaryOperator::trusted(kick.matrix() * drift.matrix());
}

TrajectoryCursor::TrajectoryCursor(const UnitaryOperator& u, const StateVector& psi0)
    : u_(&u), current_(psi0.amplitudes()), scratch_(psi0.dim()) {
  if (u.dim() != psi0.dim()) throw Error("evolve: operator and state dimensions differ");
}

void TrajectoryCursor::advance() {
  scratch_.noalias() = u_->matrix() * current_;
  current_.swap(scratch_);
  ++step_;
}

Trajectory evolve(const UnitaryOperator& u, const StateVector& psi0, int n_steps) {
  if (n_steps < 0) throw Error("evolve: n_steps must be non-negative");
  TrajectoryCursor cursor(u, psi0);
  Trajectory traj;
  traj.states.reserve(static_cast<std::size_t>(n_steps) + 1);
  traj.states.push_back(psi0);
  for (int k = 0; k < n_steps; ++k) {
    cursor.advance();
    traj.states.push_back(cursor.state());
  }
  return traj;
}

FloquetPropagator::FloquetPropagator(SpinSystem sys, HamiltonianParams params, double tau)
    : sys_(sys), params_(params), tau_(tau), ground_(ground_state(build_h1(sys, params))) {
  FloquetConfig{tau, 0.0, params}.validate();

  const Eigen::MatrixXd h1 = build_h1(sys_, params_).real_matrix();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> h1_es(h1);
  if (h1_es.info() != Eigen::Success) throw Error("FloquetPropagator: H1 diagonalization failed");

  // S_x is real symmetric tridiagonal.
  const Eigen::VectorXd off = sx_offdiagonal(sys_);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sx_es;
  sx_es.computeFromTridiagonal(Eigen::VectorXd::Zero(sys_.dim()), off, Eigen::ComputeEigenvectors);
  if (sx_es.info() != Eigen::Success) throw Error("FloquetPropagator: S_x diagonalization failed");
  kick_eigenvalues_ = sx_es.eigenvalues();
  kick_basis_ = sx_es.eigenvectors();

  const Eigen::MatrixXd overlap = kick_basis_.transpose() * h1_es.eigenvectors();
  Eigen::VectorXcd phases(sys_.dim());
  for (Index k = 0; k < phases.size(); ++k) phases(k) = std::polar(1.0, -h1_es.eigenvalues()(k) * tau_);
  // D = B diag(e^{-iE tau}) B^T, split into real and imaginary parts.
  const Eigen::MatrixXd re = (overlap * phases.real().asDiagonal()) * overlap.transpose();
  const Eigen::MatrixXd im = (overlap * phases.imag().asDiagonal()) * overlap.transpose();
  drift_kick_basis_.resize(sys_.dim(), sys_.dim());
  drift_kick_basis_.real() = re;
  drift_kick_basis_.imag() = im;

  psi0_kick_basis_ = kick_basis_.transpose().cast<Complex>() * ground_.state.amplitudes();
}

UnitaryOperator FloquetPropagator::floquet_operator(double epsilon) const {
  config(epsilon).validate();
  const double phi = config(epsilon).phi();
  Eigen::VectorXcd kick(sys_.dim());
  for (Index k = 0; k < kick.size(); ++k) kick(k) = std::polar(1.0, -phi * kick_eigenvalues_(k));
  const Eigen::MatrixXcd w = kick_basis_.cast<Complex>();
  return UnitaryOperator::trusted(w * (kick.asDiagonal() * drift_kick_basis_) * w.transpose());
}

Eigen::VectorXcd FloquetPropagator::to_dicke(const Eigen::VectorXcd& kick_amplitudes) const {
  Eigen::VectorXcd out(kick_amplitudes.size());
  out.real() = kick_basis_ * kick_amplitudes.real();
  out.imag() = kick_basis_ * kick_amplitudes.imag();
  return out;
}

void FloquetPropagator::run_kick_basis(double epsilon, int n_steps, const Visitor& visit, int stride) const {
  config(epsilon).validate();
  if (n_steps < 0) throw Error("FloquetPropagator::run: n_steps must be non-negative");
  if (stride < 1) throw Error("FloquetPropagator::run: stride must be positive");
  const double phi = config(epsilon).phi();
  Eigen::VectorXcd kick(sys_.dim());
  for (Index k = 0; k < kick.size(); ++k) kick(k) = std::polar(1.0, -phi * kick_eigenvalues_(k));

  Eigen::VectorXcd psi = psi0_kick_basis_;
  Eigen::VectorXcd scratch(psi.size());
  visit(0, psi);
  for (int step = 1; step <= n_steps; ++step) {
    scratch.noalias() = drift_kick_basis_ * psi;
    psi = kick.cwiseProduct(scratch);
    if (step % stride == 0) visit(step, psi);
  }
}

void FloquetPropagator::run(double epsilon, int n_steps, const Visitor& visit, int stride) const {
  run_kick_basis(
      epsilon, n_steps, [&](int step, const Eigen::VectorXcd& psi) { visit(step, to_dicke(psi)); }, stride);
}

}  // namespace lmgdtc
