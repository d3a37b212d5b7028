#include "lmgdtc/critical.hpp"

#include <algorithm>
#include <cmath>

#include "lmgdtc/observables.hpp"

namespace lmgdtc {

std::vector<double> uniform_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw Error("uniform_grid: need step > 0 and hi >= lo");
  const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) grid.push_back(lo + static_cast<double>(i) * step);
  return grid;
}

namespace {

Extremum golden_max(const std::function<double(double)>& f, double a, double b, Extremum best, double tolerance) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tolerance) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  // Golden-section assumes local unimodality; never return worse than the grid point.
  if (fc > best.value) best = {c, fc};
  if (fd > best.value) best = {d, fd};
  return best;
}

}  // namespace

Extremum locate_maximum(const std::function<double(double)>& f, double lo, double hi, double step, double tolerance) {
  const auto grid = uniform_grid(lo, hi, step);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = f(grid[i]);
  const auto it = std::max_element(values.begin(), values.end());
  const auto i = static_cast<std::size_t>(it - values.begin());
  Extremum best{grid[i], *it};
  if (tolerance <= 0.0 || grid.size() < 2) return best;
  const double a = i > 0 ? grid[i - 1] : grid[i];
  const double b = i + 1 < grid.size() ? grid[i + 1] : grid[i];
  return golden_max(f, a, b, best, tolerance);
}

Extremum locate_minimum(const std::function<double(double)>& f, double lo, double hi, double step, double tolerance) {
  const Extremum e = locate_maximum([&](double x) { return -f(x); }, lo, hi, step, tolerance);
  return {e.location, -e.value};
}

double magnetization_at(const FloquetPropagator& prop, double epsilon, int n_step) {
  double m = 0.0;
  prop.run(
      epsilon, n_step, [&](int step, const Eigen::VectorXcd& psi) {
        if (step == n_step) m = magnetization(psi, prop.system());
      },
      std::max(n_step, 1));
  return m;
}

Extremum susceptibility_peak(const FloquetPropagator& prop, int n_step, double lo, double hi, double step) {
  const auto grid = uniform_grid(lo, hi, step);
  if (grid.size() < 5) throw Error("susceptibility_peak: grid needs at least five points");
  std::vector<std::pair<double, double>> curve;
  curve.reserve(grid.size());
  for (double e : grid) curve.emplace_back(e, magnetization_at(prop, e, n_step));
  Extremum best{grid[2], -1.0};
  for (std::size_t i = 2; i + 2 < grid.size(); ++i) {
    const double chi = std::abs(susceptibility(curve, grid[i]));
    if (chi > best.value) best = {grid[i], chi};
  }
  return best;
}

Extremum qfi_maximum(const FloquetPropagator& prop, int n_steps, double lo, double hi, double step, double stencil_step,
                     double tolerance) {
  return locate_maximum([&](double e) { return qfi(prop, e, n_steps, stencil_step).value; }, lo, hi, step, tolerance);
}

Extremum taipr_minimum(const FloquetPropagator& prop, int n_pulses, double lo, double hi, double step, double tolerance) {
  return locate_minimum([&](double e) { return taipr(prop, e, n_pulses); }, lo, hi, step, tolerance);
}

double order_parameter_drop(const std::vector<std::pair<double, double>>& curve, double ordered_threshold) {
  if (curve.size() < 2) throw Error("order_parameter_drop: need at least two points");
  const double start = std::abs(curve.front().second);
  if (start < ordered_threshold) return curve.front().first;
  const double target = 0.5 * start;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    const double prev = std::abs(curve[i - 1].second);
    const double cur = std::abs(curve[i].second);
    if (cur < target) {
      const double t = (prev - target) / (prev - cur);
      return curve[i - 1].first + t * (curve[i].first - curve[i - 1].first);
    }
  }
  return curve.back().first;
}

}  // namespace lmgdtc
