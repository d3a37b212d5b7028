#pragma once

#include <functional>
#include <vector>

namespace lmgdtc {

struct SimplexOptions {
  int max_evaluations = 4000;
  /// Stop when the spread of objective values across the simplex falls below
  /// f_tolerance * (|f_best| + f_tolerance) and the simplex diameter is below x_tolerance.
  double f_tolerance = 1e-12;
  double x_tolerance = 1e-10;
};

struct SimplexResult {
  std::vector<double> x;
  double value;
  int evaluations;
  bool converged;
};

/// Nelder-Mead downhill simplex. The initial simplex is x0 plus one vertex per
/// coordinate displaced by initial_step[i].
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective, std::vector<double> x0,
                          const std::vector<double>& initial_step, const SimplexOptions& options = {});

}  // namespace lmgdtc
