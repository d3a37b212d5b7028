#include "lmgdtc/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lmgdtc/spin.hpp"

namespace lmgdtc {

namespace {

double safe_eval(const std::function<double(const std::vector<double>&)>& f, const std::vector<double>& x) {
  const double v = f(x);
  return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
}

}  // namespace

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective, std::vector<double> x0,
                          const std::vector<double>& initial_step, const SimplexOptions& options) {
  const std::size_t n = x0.size();
  if (n == 0 || initial_step.size() != n) throw Error("nelder_mead: dimension mismatch");

  // Standard coefficients.
  constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;

  std::vector<std::vector<double>> simplex(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += initial_step[i];
  std::vector<double> fvals(n + 1);
  int evals = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    fvals[i] = safe_eval(objective, simplex[i]);
    ++evals;
  }

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  bool converged = false;

  while (evals < options.max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fvals[a] < fvals[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t k = 0; k < n; ++k) diameter = std::max(diameter, std::abs(simplex[i][k] - simplex[best][k]));
    const double spread = std::abs(fvals[worst] - fvals[best]);
    if (std::isfinite(fvals[worst]) && spread <= options.f_tolerance * (std::abs(fvals[best]) + options.f_tolerance) &&
        diameter <= options.x_tolerance) {
      converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k] / static_cast<double>(n);
    }
    for (std::size_t k = 0; k < n; ++k) trial[k] = centroid[k] + kReflect * (centroid[k] - simplex[worst][k]);
    const double f_reflect = safe_eval(objective, trial);
    ++evals;

    if (f_reflect < fvals[best]) {
      for (std::size_t k = 0; k < n; ++k) trial2[k] = centroid[k] + kExpand * (trial[k] - centroid[k]);
      const double f_expand = safe_eval(objective, trial2);
      ++evals;
      if (f_expand < f_reflect) {
        simplex[worst] = trial2;
        fvals[worst] = f_expand;
      } else {
        simplex[worst] = trial;
        fvals[worst] = f_reflect;
      }
      continue;
    }
    if (f_reflect < fvals[second]) {
      simplex[worst] = trial;
      fvals[worst] = f_reflect;
      continue;
    }
    // Contraction, outside if the reflected point improved on the worst vertex.
    const bool outside = f_reflect < fvals[worst];
    for (std::size_t k = 0; k < n; ++k) {
      const double from = outside ? trial[k] : simplex[worst][k];
      trial2[k] = centroid[k] + kContract * (from - centroid[k]);
    }
    const double f_contract = safe_eval(objective, trial2);
    ++evals;
    if (f_contract < (outside ? f_reflect : fvals[worst])) {
      simplex[worst] = trial2;
      fvals[worst] = f_contract;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < n; ++k) simplex[i][k] = simplex[best][k] + kShrink * (simplex[i][k] - simplex[best][k]);
      fvals[i] = safe_eval(objective, simplex[i]);
      ++evals;
    }
  }

  const auto best_it = std::min_element(fvals.begin(), fvals.end());
  const auto best_idx = static_cast<std::size_t>(best_it - fvals.begin());
  return SimplexResult{simplex[best_idx], *best_it, evals, converged};
}

}  // namespace lmgdtc
