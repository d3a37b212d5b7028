#pragma once

#include <functional>
#include <numbers>
#include <vector>

#include "lmgdtc/spin.hpp"

namespace lmgdtc {

/// Drive protocol: evolve under H1 for a time tau, then kick by phi = (1 - epsilon) pi about x.
struct FloquetConfig {
  double tau = 0.6;
  double epsilon = 0.0;
  HamiltonianParams params{};

  [[nodiscard]] double phi() const { return (1.0 - epsilon) * std::numbers::pi; }
  void validate() const;
};

/// U_F = exp(-i phi S_x) exp(-i H1 tau); H1 acts first.
UnitaryOperator floquet_operator(const SpinSystem& sys, const FloquetConfig& cfg);

struct Trajectory {
  std::vector<StateVector> states;  // states[k] = U^k psi0
  [[nodiscard]] int n_steps() const { return static_cast<int>(states.size()) - 1; }
};

/// Streams U^k psi0 for k = 0, 1, ... by repeated application.
class TrajectoryCursor {
 public:
  TrajectoryCursor(const UnitaryOperator& u, const StateVector& psi0);

  [[nodiscard]] int step() const { return step_; }
  [[nodiscard]] const Eigen::VectorXcd& amplitudes() const { return current_; }
  [[nodiscard]] StateVector state() const { return StateVector::normalized(current_); }
  void advance();

 private:
  const UnitaryOperator* u_;
  Eigen::VectorXcd current_;
  Eigen::VectorXcd scratch_;
  int step_ = 0;
};

Trajectory evolve(const UnitaryOperator& u, const StateVector& psi0, int n_steps);

/// Precomputed Floquet dynamics for fixed (N, J, h, delta, tau) and any epsilon.
///
/// H1 does not depend on epsilon, so its decomposition is done once. The
/// state is propagated in the S_x eigenbasis, where the kick is diagonal:
///   psi' <- exp(-i phi Lambda_x) D psi',   D = W^T exp(-i H1 tau) W,
/// which costs one dense complex mat-vec per period.
class FloquetPropagator {
 public:
  using Visitor = std::function<void(int step, const Eigen::VectorXcd& amplitudes)>;

  FloquetPropagator(SpinSystem sys, HamiltonianParams params, double tau);

  [[nodiscard]] const SpinSystem& system() const { return sys_; }
  [[nodiscard]] const HamiltonianParams& params() const { return params_; }
  [[nodiscard]] double tau() const { return tau_; }
  [[nodiscard]] FloquetConfig config(double epsilon) const { return FloquetConfig{tau_, epsilon, params_}; }
  [[nodiscard]] const GroundState& ground() const { return ground_; }
  [[nodiscard]] const StateVector& initial_state() const { return ground_.state; }

  /// Dense U_F in the Dicke basis.
  [[nodiscard]] UnitaryOperator floquet_operator(double epsilon) const;

  /// Calls visit(k, psi_k) in the Dicke basis for k = 0, stride, 2*stride, ... <= n_steps.
  void run(double epsilon, int n_steps, const Visitor& visit, int stride = 1) const;
  /// Same, but amplitudes are in the S_x eigenbasis (columns of kick_basis()).
  void run_kick_basis(double epsilon, int n_steps, const Visitor& visit, int stride = 1) const;

  [[nodiscard]] const Eigen::MatrixXd& kick_basis() const { return kick_basis_; }
  [[nodiscard]] Eigen::VectorXcd to_dicke(const Eigen::VectorXcd& kick_amplitudes) const;

 private:
  SpinSystem sys_;
  HamiltonianParams params_;
  double tau_;
  GroundState ground_;
  Eigen::VectorXd kick_eigenvalues_;
  Eigen::MatrixXd kick_basis_;
  Eigen::MatrixXcd drift_kick_basis_;
  Eigen::VectorXcd psi0_kick_basis_;
};

}  // namespace lmgdtc
