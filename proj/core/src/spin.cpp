#include "lmgdtc/spin.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace lmgdtc {

SpinSystem::SpinSystem(int n_spins) : n_spins_(n_spins) {
  if (n_spins < 1) throw Error("SpinSystem: n_spins must be positive, got " + std::to_string(n_spins));
}

void HamiltonianParams::validate() const {
  if (!(j_coupling > 0.0) || !std::isfinite(j_coupling)) throw Error("HamiltonianParams: j_coupling must be > 0");
  if (!std::isfinite(h_field)) throw Error("HamiltonianParams: h_field must be finite");
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw Error("HamiltonianParams: delta must be >= 0");
}

HermitianOperator::HermitianOperator(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) throw Error("HermitianOperator: matrix must be square and non-empty");
  const double dev = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (dev > kHermiticityTolerance) throw Error("HermitianOperator: matrix is not Hermitian (max deviation " + std::to_string(dev) + ")");
}

bool HermitianOperator::is_real() const { return entries_.imag().cwiseAbs().maxCoeff() == 0.0; }

StateVector::StateVector(Eigen::VectorXcd amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw Error("StateVector: empty amplitude vector");
  const double dev = std::abs(amplitudes_.norm() - 1.0);
  if (!(dev <= kNormTolerance)) throw Error("StateVector: amplitudes not normalized (|norm - 1| = " + std::to_string(dev) + ")");
}

StateVector StateVector::normalized(Eigen::VectorXcd amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw Error("StateVector: cannot normalize a zero or non-finite vector");
  amplitudes /= n;
  return StateVector(std::move(amplitudes));
}

StateVector StateVector::basis_state(Index dim, Index k) {
  if (k < 0 || k >= dim) throw Error("StateVector: basis index out of range");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(k) = 1.0;
  return StateVector(std::move(v));
}

UnitaryOperator::UnitaryOperator(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) throw Error("UnitaryOperator: matrix must be square and non-empty");
  const double dev = unitarity_defect();
  if (!(dev <= kUnitarityTolerance)) throw Error("UnitaryOperator: matrix is not unitary (defect " + std::to_string(dev) + ")");
}

UnitaryOperator UnitaryOperator::trusted(Eigen::MatrixXcd entries) { return UnitaryOperator(std::move(entries), Unchecked{}); }

double UnitaryOperator::unitarity_defect() const {
  return (entries_.adjoint() * entries_ - Eigen::MatrixXcd::Identity(dim(), dim())).norm();
}

StateVector UnitaryOperator::apply(const StateVector& psi) const {
  if (psi.dim() != dim()) throw Error("UnitaryOperator::apply: dimension mismatch");
  return StateVector::normalized(entries_ * psi.amplitudes());
}

SpectralDecomposition diagonalize(const HermitianOperator& op) {
  SpectralDecomposition out;
  if (op.is_real()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.real_matrix());
    if (es.info() != Eigen::Success) throw Error("diagonalize: real eigensolver failed");
    out.values = es.eigenvalues();
    out.vectors = es.eigenvectors().cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.matrix());
    if (es.info() != Eigen::Success) throw Error("diagonalize: complex eigensolver failed");
    out.values = es.eigenvalues();
    out.vectors = es.eigenvectors();
  }
  return out;
}

Eigen::VectorXd sz_diagonal(const SpinSystem& sys) {
  Eigen::VectorXd d(sys.dim());
  for (Index k = 0; k < sys.dim(); ++k) d(k) = sys.m(k);
  return d;
}

Eigen::VectorXd sx_offdiagonal(const SpinSystem& sys) {
  const double s = sys.total_spin();
  Eigen::VectorXd off(sys.dim() - 1);
  for (Index k = 0; k + 1 < sys.dim(); ++k) {
    const double m = sys.m(k);
    off(k) = 0.5 * std::sqrt(s * (s + 1.0) - m * (m + 1.0));
  }
  return off;
}

HermitianOperator build_sz(const SpinSystem& sys) {
  return HermitianOperator(sz_diagonal(sys).cast<Complex>().asDiagonal().toDenseMatrix());
}

HermitianOperator build_sx(const SpinSystem& sys) {
  const Eigen::VectorXd off = sx_offdiagonal(sys);
  Eigen::MatrixXcd sx = Eigen::MatrixXcd::Zero(sys.dim(), sys.dim());
  for (Index k = 0; k < off.size(); ++k) {
    sx(k + 1, k) = off(k);
    sx(k, k + 1) = off(k);
  }
  return HermitianOperator(std::move(sx));
}

HermitianOperator build_sy(const SpinSystem& sys) {
  const Eigen::MatrixXcd sx = build_sx(sys).matrix();
  const Eigen::MatrixXcd sz = build_sz(sys).matrix();
  return HermitianOperator(Complex(0.0, 1.0) * (sx * sz - sz * sx));
}

HermitianOperator build_h1(const SpinSystem& sys, const HamiltonianParams& p) {
  p.validate();
  const double n = sys.n_spins();
  const Eigen::VectorXd sz = sz_diagonal(sys);
  const Eigen::VectorXd off = sx_offdiagonal(sys);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(sys.dim(), sys.dim());
  for (Index k = 0; k < sys.dim(); ++k) h(k, k) = -(2.0 * p.j_coupling / n) * sz(k) * sz(k) + p.delta * sz(k);
  for (Index k = 0; k < off.size(); ++k) {
    h(k + 1, k) = -2.0 * p.h_field * off(k);
    h(k, k + 1) = -2.0 * p.h_field * off(k);
  }
  return HermitianOperator(std::move(h));
}

Eigen::VectorXcd fix_global_phase(Eigen::VectorXcd v) {
  Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  const double a = std::abs(v(imax));
  if (a > 0.0) v *= std::conj(v(imax)) / a;
  v(imax) = Complex(std::abs(v(imax)), 0.0);
  return v;
}

GroundState ground_state(const SpectralDecomposition& spectrum) {
  const Index dim = spectrum.values.size();
  const double range = spectrum.values(dim - 1) - spectrum.values(0);
  const double gap = dim > 1 ? spectrum.values(1) - spectrum.values(0) : 0.0;
  const bool degenerate = dim > 1 && gap < 1e-12 * range;
  return GroundState{StateVector::normalized(fix_global_phase(spectrum.vectors.col(0))), spectrum.values(0), gap, degenerate};
}

GroundState ground_state(const HermitianOperator& hamiltonian) { return ground_state(diagonalize(hamiltonian)); }

UnitaryOperator unitary_from_hamiltonian(const SpectralDecomposition& spectrum, double time) {
  if (!std::isfinite(time)) throw Error("unitary_from_hamiltonian: time must be finite");
  Eigen::VectorXcd phases(spectrum.values.size());
  for (Index k = 0; k < phases.size(); ++k) phases(k) = std::polar(1.0, -spectrum.values(k) * time);
  Eigen::MatrixXcd u = spectrum.vectors * phases.asDiagonal() * spectrum.vectors.adjoint();
  return UnitaryOperator::trusted(std::move(u));
}

UnitaryOperator unitary_from_hamiltonian(const HermitianOperator& hamiltonian, double time) {
  return unitary_from_hamiltonian(diagonalize(hamiltonian), time);
}

UnitaryOperator kick_unitary(const SpinSystem& sys, double phi) { return unitary_from_hamiltonian(build_sx(sys), phi); }

double expectation(const HermitianOperator& op, const StateVector& psi) {
  if (op.dim() != psi.dim()) throw Error("expectation: dimension mismatch");
  return psi.amplitudes().dot(op.matrix() * psi.amplitudes()).real();
}

}  // namespace lmgdtc
