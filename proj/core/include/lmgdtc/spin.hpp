#pragma once

// Collective-spin (Dicke sector) operators for N qubits with all-to-all
// coupling. Basis index k corresponds to S_z eigenvalue m = k - S, so the
// basis runs from m = -S up to m = +S.

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace lmgdtc {

using Complex = std::complex<double>;
using Index = Eigen::Index;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SpinSystem {
 public:
  explicit SpinSystem(int n_spins);

  [[nodiscard]] int n_spins() const { return n_spins_; }
  [[nodiscard]] Index dim() const { return n_spins_ + 1; }
  [[nodiscard]] double total_spin() const { return 0.5 * n_spins_; }
  /// S_z eigenvalue of basis state k.
  [[nodiscard]] double m(Index k) const { return static_cast<double>(k) - total_spin(); }

  friend bool operator==(const SpinSystem&, const SpinSystem&) = default;

 private:
  int n_spins_;
};

struct HamiltonianParams {
  double j_coupling = 1.0;
  double h_field = 0.3;
  double delta = 1e-5;

  void validate() const;
};

/// Dense Hermitian matrix; construction checks Hermiticity entrywise to 1e-12.
class HermitianOperator {
 public:
  explicit HermitianOperator(Eigen::MatrixXcd entries);

  [[nodiscard]] Index dim() const { return entries_.rows(); }
  [[nodiscard]] const Eigen::MatrixXcd& matrix() const { return entries_; }
  [[nodiscard]] bool is_real() const;
  [[nodiscard]] Eigen::MatrixXd real_matrix() const { return entries_.real(); }

  static constexpr double kHermiticityTolerance = 1e-12;

 private:
  Eigen::MatrixXcd entries_;
};

/// Normalized amplitude vector over a basis. Construction checks the norm to 1e-10.
class StateVector {
 public:
  explicit StateVector(Eigen::VectorXcd amplitudes);
  /// Rescales to unit norm; throws on a zero vector.
  static StateVector normalized(Eigen::VectorXcd amplitudes);
  static StateVector basis_state(Index dim, Index k);

  [[nodiscard]] Index dim() const { return amplitudes_.size(); }
  [[nodiscard]] const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }

  static constexpr double kNormTolerance = 1e-10;

 private:
  Eigen::VectorXcd amplitudes_;
};

class UnitaryOperator {
 public:
  /// Checks ||U^dagger U - 1||_F <= 1e-10.
  explicit UnitaryOperator(Eigen::MatrixXcd entries);
  /// Skips the O(dim^3) check; for matrices unitary by construction.
  static UnitaryOperator trusted(Eigen::MatrixXcd entries);

  [[nodiscard]] Index dim() const { return entries_.rows(); }
  [[nodiscard]] const Eigen::MatrixXcd& matrix() const { return entries_; }
  [[nodiscard]] double unitarity_defect() const;
  [[nodiscard]] StateVector apply(const StateVector& psi) const;

  static constexpr double kUnitarityTolerance = 1e-10;

 private:
  struct Unchecked {};
  UnitaryOperator(Eigen::MatrixXcd entries, Unchecked) : entries_(std::move(entries)) {}
  Eigen::MatrixXcd entries_;
};

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
/// Real-symmetric input is diagonalized with the real solver.
struct SpectralDecomposition {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
};

SpectralDecomposition diagonalize(const HermitianOperator& op);

HermitianOperator build_sz(const SpinSystem& sys);
HermitianOperator build_sx(const SpinSystem& sys);
/// S_y = i [S_x, S_z].
HermitianOperator build_sy(const SpinSystem& sys);

/// Real diagonal of S_z and the off-diagonal band of S_x (element k couples k and k+1).
Eigen::VectorXd sz_diagonal(const SpinSystem& sys);
Eigen::VectorXd sx_offdiagonal(const SpinSystem& sys);

/// H1 = -(2J/N) S_z^2 - 2h S_x + delta S_z.
HermitianOperator build_h1(const SpinSystem& sys, const HamiltonianParams& p);

struct GroundState {
  StateVector state;
  double energy;
  double gap;
  /// Set when the two lowest levels differ by less than 1e-12 of the spectral range.
  bool degenerate;
};

GroundState ground_state(const HermitianOperator& hamiltonian);
GroundState ground_state(const SpectralDecomposition& spectrum);

/// Multiplies by a global phase so the largest-magnitude amplitude is real positive.
Eigen::VectorXcd fix_global_phase(Eigen::VectorXcd v);

/// exp(-i H t) via V exp(-i Lambda t) V^dagger.
UnitaryOperator unitary_from_hamiltonian(const HermitianOperator& hamiltonian, double time);
UnitaryOperator unitary_from_hamiltonian(const SpectralDecomposition& spectrum, double time);

/// exp(-i phi S_x).
UnitaryOperator kick_unitary(const SpinSystem& sys, double phi);

double expectation(const HermitianOperator& op, const StateVector& psi);

}  // namespace lmgdtc
