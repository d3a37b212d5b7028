#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "lmgdtc/floquet.hpp"
#include "lmgdtc/spin.hpp"

namespace lmgdtc {

/// Stroboscopic record (step, value) with strictly increasing steps.
class ObservableSeries {
 public:
  struct Point {
    int step;
    double value;
  };

  explicit ObservableSeries(std::string label) : label_(std::move(label)) {}
  ObservableSeries(std::string label, std::vector<Point> points);

  void push_back(int step, double value);

  [[nodiscard]] const std::string& label() const { return label_; }
  [[nodiscard]] const std::vector<Point>& points() const { return points_; }
  [[nodiscard]] std::size_t size() const { return points_.size(); }
  [[nodiscard]] std::vector<double> values() const;

 private:
  std::string label_;
  std::vector<Point> points_;
};

struct SpectrumResult {
  std::vector<double> frequencies;  // omega, radians per unit time, spanning [0, pi/tau]
  std::vector<double> amplitudes;   // |DFT| / length
  double subharmonic_amplitude;     // amplitude at omega = pi/tau
};

struct QfiResult {
  double epsilon;
  int n_steps;
  double value;
  double stencil_step;
  /// Relative change against the half-step estimate; negative when not checked.
  double relative_change = -1.0;
};

/// <S_z>/N.
double magnetization(const StateVector& state, const SpinSystem& sys);
double magnetization(const Eigen::VectorXcd& amplitudes, const SpinSystem& sys);

ObservableSeries magnetization_series(const FloquetPropagator& prop, double epsilon, int n_steps);

/// Amplitude spectrum of the raw series; no window, no detrending.
SpectrumResult subharmonic_spectrum(const ObservableSeries& series, double tau);

/// d^2 m / d eps^2 at `at` from the five-point second-difference stencil on a uniform grid.
double susceptibility(const std::vector<std::pair<double, double>>& mz_on_grid, double at);

/// (1/n_pulses) * sum_{n=0}^{n_pulses} m_z(2n).
double order_parameter(const FloquetPropagator& prop, double epsilon, int n_pulses);
double order_parameter(const FloquetConfig& cfg, const SpinSystem& sys, int n_pulses);

/// Pure-state QFI, 4(<d psi|d psi> - |<d psi|psi>|^2), with d psi from the
/// five-point first-derivative stencil in epsilon.
QfiResult qfi(const FloquetPropagator& prop, double epsilon, int n_steps, double stencil_step = 1e-6);
QfiResult qfi(const SpinSystem& sys, const FloquetConfig& base_cfg, double epsilon, int n_steps,
              double stencil_step = 1e-6);
/// QFI at several step counts from a single set of five trajectories. Steps must be ascending.
std::vector<QfiResult> qfi_series(const FloquetPropagator& prop, double epsilon, const std::vector<int>& steps,
                                  double stencil_step = 1e-6);
/// Recomputes at half the stencil step and keeps halving (up to `max_halvings`)
/// until the relative change drops below `tolerance`.
QfiResult qfi_checked(const FloquetPropagator& prop, double epsilon, int n_steps, double stencil_step = 1e-6,
                      double tolerance = 0.01, int max_halvings = 4);

/// QFI of a family of pure states from five amplitude vectors sampled at eps + k*step, k = -2..2.
double qfi_from_stencil(const std::array<Eigen::VectorXcd, 5>& samples, double step);

/// sum_i |<z_i|psi>|^4 in the Dicke (S_z eigen-) basis.
double ipr(const StateVector& state);
double ipr(const Eigen::VectorXcd& amplitudes);

/// Mean of ipr over steps 0..n_pulses (n_pulses + 1 samples).
double taipr(const FloquetPropagator& prop, double epsilon, int n_pulses);
double taipr(const FloquetConfig& cfg, const SpinSystem& sys, int n_pulses);

/// -ln(taipr).
double renyi2(double taipr_value);

/// (1/N) ||[H1, h S_x]||_1 / ||H1||_1 with the trace norm.
double commutator_measure(const SpinSystem& sys, const HamiltonianParams& params);
double trace_norm(const Eigen::MatrixXcd& a);

}  // namespace lmgdtc
