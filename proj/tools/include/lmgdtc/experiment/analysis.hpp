#pragma once

// Post-processing of sweep results into fitted critical parameters.
//
// An analysis spec is a JSON list; each entry has a unique "name" and a
// "type":
//   collapse         finite-size scaling collapse of one observable
//   power_law_max    F_max(N) = a N^b from per-size maxima
//   pareto           location of per-size extrema fitted to a + b / N^c
//   time_exponent    F(n) = alpha n^beta from a qfi_series at fixed epsilon
//   susceptibility   per-size peak of |d^2 m_z / d eps^2|
//   phase_boundary   epsilon_c along h or tau from order-parameter drop or extremum
//   trend            monotonicity of a scalar along h or tau
// The report maps each name to its result.

#include <utility>
#include <vector>

#include "lmgdtc/experiment/config.hpp"
#include "lmgdtc/experiment/results.hpp"

namespace lmgdtc::experiment {

struct AnalysisOptions {
  unsigned workers = 1;
  std::uint64_t seed = 12345;
};

json run_analysis(const std::vector<ResultRow>& rows, const json& specs, const AnalysisOptions& options = {});

/// Scalar rows of `observable` grouped into (epsilon, value) curves per N, at a
/// single (h, tau). Curves are sorted by epsilon. Throws when several (h, tau) are present.
std::map<int, std::vector<std::pair<double, double>>> curves_by_size(const std::vector<ResultRow>& rows,
                                                                     const std::string& observable,
                                                                     std::optional<double> coordinate = std::nullopt);

/// Location and value of the extremum of a sampled curve inside [lo, hi].
std::pair<double, double> curve_extremum(const std::vector<std::pair<double, double>>& curve, bool maximum, double lo,
                                         double hi);

}  // namespace lmgdtc::experiment
