#pragma once

// Brute-force reference over the full 2^N qubit Hilbert space. Everything is
// dense and built from single-site Pauli operators so that it is obviously
// right; it exists to check the collective-spin reduction, not to be fast.

#include <Eigen/Dense>

#include "lmgdtc/floquet.hpp"
#include "lmgdtc/observables.hpp"
#include "lmgdtc/spin.hpp"

namespace lmgdtc {

inline constexpr int kOracleMaxQubits = 10;

/// Normalized amplitudes over the 2^N computational basis; bit i set means qubit i is up.
class QubitState {
 public:
  QubitState(int n_qubits, Eigen::VectorXcd amplitudes);

  [[nodiscard]] int n_qubits() const { return n_qubits_; }
  [[nodiscard]] const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }

 private:
  int n_qubits_;
  Eigen::VectorXcd amplitudes_;
};

enum class Axis { X, Y, Z };

/// S_a = (1/2) sum_i sigma_a^(i).
HermitianOperator oracle_collective(int n_qubits, Axis axis);

/// -(2J/N) S_z^2 - 2h S_x + delta S_z over the full space.
HermitianOperator oracle_hamiltonian(int n_qubits, const HamiltonianParams& params);

/// exp(-i phi S_x) exp(-i H1 tau) over the full space.
UnitaryOperator oracle_floquet_operator(int n_qubits, const FloquetConfig& cfg);

/// Ground state of the full-space H1, phase fixed like the collective one.
QubitState oracle_ground_state(int n_qubits, const HamiltonianParams& params);

/// Columns are the Dicke states |S, m> for m = -S..S embedded in the qubit basis.
Eigen::MatrixXd dicke_embedding(int n_qubits);

/// Amplitudes on the Dicke states, i.e. the symmetric-sector projection.
Eigen::VectorXcd project_symmetric(const QubitState& state);

struct OracleSeries {
  ObservableSeries magnetization{"m_z"};
  ObservableSeries ipr{"ipr"};
  /// Largest 1 - ||P_sym psi||^2 over the run.
  double max_leakage = 0.0;
};

/// Ground state, then n_steps Floquet periods; m_z = <S_z>/N and the IPR of the
/// symmetric-sector amplitudes at every step 0..n_steps.
OracleSeries oracle_evolve_and_measure(int n_qubits, const FloquetConfig& cfg, int n_steps);

/// QFI from the overlap of states at epsilon +- d:
///   F(d) = 2 (1 - |<psi(eps - d)|psi(eps + d)>|) / d^2,
/// Richardson-extrapolated from d and d/2 to remove the O(d^2) term.
double oracle_qfi(int n_qubits, const FloquetConfig& cfg, int n_steps, double d = 1e-3);

}  // namespace lmgdtc
