#include "lmgdtc/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "lmgdtc/stencil.hpp"

namespace lmgdtc {

ObservableSeries::ObservableSeries(std::string label, std::vector<Point> points) : label_(std::move(label)) {
  points_.reserve(points.size());
  for (const auto& p : points) push_back(p.step, p.value);
}

void ObservableSeries::push_back(int step, double value) {
  if (!points_.empty() && step <= points_.back().step) throw Error("ObservableSeries: steps must be strictly increasing");
  points_.push_back({step, value});
}

std::vector<double> ObservableSeries::values() const {
  std::vector<double> v;
  v.reserve(points_.size());
  for (const auto& p : points_) v.push_back(p.value);
  return v;
}

double magnetization(const Eigen::VectorXcd& amplitudes, const SpinSystem& sys) {
  if (amplitudes.size() != sys.dim()) throw Error("magnetization: dimension mismatch");
  double acc = 0.0;
  double norm = 0.0;
  for (Index k = 0; k < amplitudes.size(); ++k) {
    const double p = std::norm(amplitudes(k));
    acc += p * sys.m(k);
    norm += p;
  }
  return acc / norm / sys.n_spins();
}

double magnetization(const StateVector& state, const SpinSystem& sys) { return magnetization(state.amplitudes(), sys); }

ObservableSeries magnetization_series(const FloquetPropagator& prop, double epsilon, int n_steps) {
  ObservableSeries series("m_z");
  prop.run(epsilon, n_steps, [&](int step, const Eigen::VectorXcd& psi) { series.push_back(step, magnetization(psi, prop.system())); });
  return series;
}

SpectrumResult subharmonic_spectrum(const ObservableSeries& series, double tau) {
  const auto& pts = series.points();
  const std::size_t len = pts.size();
  if (len < 8) throw Error("subharmonic_spectrum: need at least 8 samples");
  if (!(tau > 0.0)) throw Error("subharmonic_spectrum: tau must be positive");
  const int stride = pts[1].step - pts[0].step;
  for (std::size_t i = 1; i < len; ++i) {
    if (pts[i].step - pts[i - 1].step != stride) throw Error("subharmonic_spectrum: steps are not uniformly spaced");
  }
  if (stride != 1) throw Error("subharmonic_spectrum: series must be sampled every period");

  // Cycles per period k/len for k = 0..floor(len/2); for odd len the Nyquist
  // point 1/2 is appended so the range always ends at omega = pi/tau.
  std::vector<double> cycles;
  for (std::size_t k = 0; k <= len / 2; ++k) cycles.push_back(static_cast<double>(k) / static_cast<double>(len));
  if (len % 2 == 1) cycles.push_back(0.5);

  SpectrumResult out;
  out.frequencies.reserve(cycles.size());
  out.amplitudes.reserve(cycles.size());
  for (double f : cycles) {
    Complex acc = 0.0;
    for (std::size_t n = 0; n < len; ++n) acc += pts[n].value * std::polar(1.0, -2.0 * std::numbers::pi * f * static_cast<double>(n));
    out.frequencies.push_back(2.0 * std::numbers::pi * f / tau);
    out.amplitudes.push_back(std::abs(acc) / static_cast<double>(len));
  }
  double alt = 0.0;
  for (std::size_t n = 0; n < len; ++n) alt += (n % 2 == 0 ? 1.0 : -1.0) * pts[n].value;
  out.subharmonic_amplitude = std::abs(alt) / static_cast<double>(len);
  return out;
}

double susceptibility(const std::vector<std::pair<double, double>>& mz_on_grid, double at) {
  const std::size_t n = mz_on_grid.size();
  if (n < 5) throw Error("susceptibility: grid needs at least five points");
  const double step = mz_on_grid[1].first - mz_on_grid[0].first;
  if (!(step > 0.0)) throw Error("susceptibility: grid must be strictly increasing");
  std::size_t idx = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(mz_on_grid[i].first - at) <= 1e-9 * step + 1e-15) {
      idx = i;
      break;
    }
  }
  if (idx == n) throw Error("susceptibility: evaluation point is not on the grid");
  if (idx < 2 || idx + 2 >= n) throw Error("susceptibility: evaluation point too close to the grid boundary");
  std::array<double, 5> f{};
  for (int k = -2; k <= 2; ++k) {
    const auto& p = mz_on_grid[idx + k];
    const double expected_x = at + k * step;
    if (std::abs(p.first - expected_x) > 1e-6 * step) throw Error("susceptibility: grid is not uniform around the evaluation point");
    f[k + 2] = p.second;
  }
  return stencil::second_derivative(f, step);
}

double order_parameter(const FloquetPropagator& prop, double epsilon, int n_pulses) {
  if (n_pulses < 1) throw Error("order_parameter: n_pulses must be >= 1");
  double sum = 0.0;
  prop.run(epsilon, 2 * n_pulses, [&](int, const Eigen::VectorXcd& psi) { sum += magnetization(psi, prop.system()); }, 2);
  return sum / n_pulses;
}

double order_parameter(const FloquetConfig& cfg, const SpinSystem& sys, int n_pulses) {
  const FloquetPropagator prop(sys, cfg.params, cfg.tau);
  return order_parameter(prop, cfg.epsilon, n_pulses);
}

double qfi_from_stencil(const std::array<Eigen::VectorXcd, 5>& samples, double step) {
  const Eigen::VectorXcd d = stencil::first_derivative(samples, step);
  const Eigen::VectorXcd& psi = samples[2];
  const double value = 4.0 * (d.squaredNorm() - std::norm(psi.dot(d)));
  return value;
}

namespace {

void check_stencil(double epsilon, double step) {
  if (!(step > 0.0)) throw Error("qfi: stencil_step must be positive");
  if (epsilon - 2.0 * step < 0.0 || epsilon + 2.0 * step >= 1.0)
    throw Error("qfi: stencil eps +/- 2*step leaves [0, 1)");
}

double clamp_qfi(double v) {
  if (v < 0.0 && v >= -1e-6) return 0.0;
  return v;
}

}  // namespace

std::vector<QfiResult> qfi_series(const FloquetPropagator& prop, double epsilon, const std::vector<int>& steps,
                                  double stencil_step) {
  check_stencil(epsilon, stencil_step);
  if (steps.empty()) return {};
  if (!std::is_sorted(steps.begin(), steps.end()) || steps.front() < 0) throw Error("qfi_series: steps must be ascending and non-negative");

  // samples[k][j] = psi_{steps[j]} at eps + (k-2)*step, kick basis.
  std::array<std::vector<Eigen::VectorXcd>, 5> samples;
  for (int k = 0; k < 5; ++k) {
    std::size_t next = 0;
    samples[k].resize(steps.size());
    prop.run_kick_basis(epsilon + (k - 2) * stencil_step, steps.back(), [&](int step, const Eigen::VectorXcd& psi) {
      while (next < steps.size() && steps[next] == step) samples[k][next++] = psi;
    });
  }
  std::vector<QfiResult> out;
  out.reserve(steps.size());
  for (std::size_t j = 0; j < steps.size(); ++j) {
    std::array<Eigen::VectorXcd, 5> at{samples[0][j], samples[1][j], samples[2][j], samples[3][j], samples[4][j]};
    out.push_back({epsilon, steps[j], clamp_qfi(qfi_from_stencil(at, stencil_step)), stencil_step});
  }
  return out;
}

QfiResult qfi(const FloquetPropagator& prop, double epsilon, int n_steps, double stencil_step) {
  return qfi_series(prop, epsilon, {n_steps}, stencil_step).front();
}

QfiResult qfi(const SpinSystem& sys, const FloquetConfig& base_cfg, double epsilon, int n_steps, double stencil_step) {
  check_stencil(epsilon, stencil_step);
  const FloquetPropagator prop(sys, base_cfg.params, base_cfg.tau);
  return qfi(prop, epsilon, n_steps, stencil_step);
}

QfiResult qfi_checked(const FloquetPropagator& prop, double epsilon, int n_steps, double stencil_step, double tolerance,
                      int max_halvings) {
  QfiResult coarse = qfi(prop, epsilon, n_steps, stencil_step);
  for (int i = 0; i <= max_halvings; ++i) {
    QfiResult fine = qfi(prop, epsilon, n_steps, 0.5 * coarse.stencil_step);
    const double scale = std::max(std::abs(fine.value), 1e-12);
    fine.relative_change = std::abs(fine.value - coarse.value) / scale;
    if (fine.relative_change < tolerance || i == max_halvings) return fine;
    coarse = fine;
  }
  return coarse;
}

double ipr(const Eigen::VectorXcd& amplitudes) {
  double acc = 0.0;
  double norm = 0.0;
  for (Index k = 0; k < amplitudes.size(); ++k) {
    const double p = std::norm(amplitudes(k));
    acc += p * p;
    norm += p;
  }
  return acc / (norm * norm);
}

double ipr(const StateVector& state) { return ipr(state.amplitudes()); }

double taipr(const FloquetPropagator& prop, double epsilon, int n_pulses) {
  if (n_pulses < 1) throw Error("taipr: n_pulses must be >= 1");
  double sum = 0.0;
  prop.run(epsilon, n_pulses, [&](int, const Eigen::VectorXcd& psi) { sum += ipr(psi); });
  return sum / (n_pulses + 1);
}

double taipr(const FloquetConfig& cfg, const SpinSystem& sys, int n_pulses) {
  const FloquetPropagator prop(sys, cfg.params, cfg.tau);
  return taipr(prop, cfg.epsilon, n_pulses);
}

double renyi2(double taipr_value) {
  if (!(taipr_value > 0.0)) throw Error("renyi2: TAIPR must be positive");
  return -std::log(taipr_value);
}

double trace_norm(const Eigen::MatrixXcd& a) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
  return svd.singularValues().sum();
}

double commutator_measure(const SpinSystem& sys, const HamiltonianParams& params) {
  const Eigen::MatrixXcd h1 = build_h1(sys, params).matrix();
  const Eigen::MatrixXcd hsx = params.h_field * build_sx(sys).matrix();
  const double denom = trace_norm(h1);
  if (!(denom > 0.0)) throw Error("commutator_measure: H1 has zero trace norm");
  return trace_norm(h1 * hsx - hsx * h1) / denom / sys.n_spins();
}

}  // namespace lmgdtc
