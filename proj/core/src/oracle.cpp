#include "lmgdtc/oracle.hpp"

#include <bit>
#include <cmath>

namespace lmgdtc {

namespace {

void check_size(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kOracleMaxQubits) throw Error("oracle: n_qubits must lie in [1, 10]");
}

Index full_dim(int n_qubits) { return Index{1} << n_qubits; }

double binomial(int n, int k) { return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0))); }

Eigen::VectorXcd evolve_state(const UnitaryOperator& u, Eigen::VectorXcd psi, int n_steps) {
  for (int k = 0; k < n_steps; ++k) psi = u.matrix() * psi;
  return psi;
}

}  // namespace

QubitState::QubitState(int n_qubits, Eigen::VectorXcd amplitudes) : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  check_size(n_qubits);
  if (amplitudes_.size() != full_dim(n_qubits)) throw Error("QubitState: amplitude count must be 2^N");
  if (std::abs(amplitudes_.norm() - 1.0) > StateVector::kNormTolerance) throw Error("QubitState: amplitudes must be normalized");
}

HermitianOperator oracle_collective(int n_qubits, Axis axis) {
  check_size(n_qubits);
  const Index dim = full_dim(n_qubits);
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(dim, dim);
  for (int site = 0; site < n_qubits; ++site) {
    const Index mask = Index{1} << site;
    for (Index b = 0; b < dim; ++b) {
      const bool up = (b & mask) != 0;
      switch (axis) {
        case Axis::Z:
          s(b, b) += up ? 0.5 : -0.5;
          break;
        case Axis::X:
          s(b ^ mask, b) += 0.5;
          break;
        case Axis::Y:
          // sigma_y |down> = i |up>, sigma_y |up> = -i |down>
          s(b ^ mask, b) += up ? Complex(0.0, -0.5) : Complex(0.0, 0.5);
          break;
      }
    }
  }
  return HermitianOperator(std::move(s));
}

HermitianOperator oracle_hamiltonian(int n_qubits, const HamiltonianParams& params) {
  params.validate();
  const Eigen::MatrixXcd sz = oracle_collective(n_qubits, Axis::Z).matrix();
  const Eigen::MatrixXcd sx = oracle_collective(n_qubits, Axis::X).matrix();
  const double n = n_qubits;
  Eigen::MatrixXcd h = -(2.0 * params.j_coupling / n) * (sz * sz) - 2.0 * params.h_field * sx + params.delta * sz;
  return HermitianOperator(std::move(h));
}

UnitaryOperator oracle_floquet_operator(int n_qubits, const FloquetConfig& cfg) {
  cfg.validate();
  const UnitaryOperator drift = unitary_from_hamiltonian(oracle_hamiltonian(n_qubits, cfg.params), cfg.tau);
  const UnitaryOperator kick = unitary_from_hamiltonian(oracle_collective(n_qubits, Axis::X), cfg.phi());
  return UnitaryOperator::trusted(kick.matrix() * drift.matrix());
}

QubitState oracle_ground_state(int n_qubits, const HamiltonianParams& params) {
  const GroundState g = ground_state(oracle_hamiltonian(n_qubits, params));
  if (g.degenerate) throw Error("oracle: ground state is degenerate");
  return QubitState(n_qubits, g.state.amplitudes());
}

Eigen::MatrixXd dicke_embedding(int n_qubits) {
  check_size(n_qubits);
  const Index dim = full_dim(n_qubits);
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(dim, n_qubits + 1);
  for (Index b = 0; b < dim; ++b) {
    const int ups = std::popcount(static_cast<unsigned long>(b));
    e(b, ups) = 1.0 / std::sqrt(binomial(n_qubits, ups));
  }
  return e;
}

Eigen::VectorXcd project_symmetric(const QubitState& state) {
  return dicke_embedding(state.n_qubits()).transpose().cast<Complex>() * state.amplitudes();
}

OracleSeries oracle_evolve_and_measure(int n_qubits, const FloquetConfig& cfg, int n_steps) {
  if (n_steps < 0) throw Error("oracle: n_steps must be non-negative");
  const UnitaryOperator u = oracle_floquet_operator(n_qubits, cfg);
  const Eigen::MatrixXcd sz = oracle_collective(n_qubits, Axis::Z).matrix();
  const Eigen::MatrixXcd embed = dicke_embedding(n_qubits).cast<Complex>();
  Eigen::VectorXcd psi = oracle_ground_state(n_qubits, cfg.params).amplitudes();

  OracleSeries out;
  for (int step = 0; step <= n_steps; ++step) {
    if (step > 0) psi = u.matrix() * psi;
    out.magnetization.push_back(step, psi.dot(sz * psi).real() / n_qubits);
    const Eigen::VectorXcd sym = embed.adjoint() * psi;
    const double weight = sym.squaredNorm();
    out.max_leakage = std::max(out.max_leakage, std::abs(1.0 - weight));
    out.ipr.push_back(step, sym.cwiseAbs2().cwiseAbs2().sum() / (weight * weight));
  }
  return out;
}

double oracle_qfi(int n_qubits, const FloquetConfig& cfg, int n_steps, double d) {
  if (n_steps < 0) throw Error("oracle: n_steps must be non-negative");
  if (!(d > 0.0) || cfg.epsilon - d < 0.0 || cfg.epsilon + d > 1.0) throw Error("oracle: epsilon +- d must stay in [0, 1]");
  const Eigen::VectorXcd psi0 = oracle_ground_state(n_qubits, cfg.params).amplitudes();
  auto state_at = [&](double eps) {
    FloquetConfig c = cfg;
    c.epsilon = eps;
    return evolve_state(oracle_floquet_operator(n_qubits, c), psi0, n_steps);
  };
  auto estimate = [&](double step) {
    const double fidelity = std::abs(state_at(cfg.epsilon - step).dot(state_at(cfg.epsilon + step)));
    return 2.0 * (1.0 - fidelity) / (step * step);
  };
  const double coarse = estimate(d);
  const double fine = estimate(0.5 * d);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace lmgdtc
