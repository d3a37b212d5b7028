#pragma once

#include <vector>

#include "lmgdtc/experiment/config.hpp"

namespace lmgdtc::experiment {

struct OracleCheckOptions {
  std::vector<int> sizes{2, 4, 6, 8};
  std::vector<double> epsilons{0.05, 0.1, 0.2};
  double h_field = 0.3;
  double tau = 0.6;
  int n_steps = 50;
  int qfi_steps = 10;
  double series_tolerance = 1e-8;
  double qfi_tolerance = 5e-3;  // relative
};

/// Compares the collective-spin pipeline with the 2^N qubit oracle: per-step
/// m_z and IPR over n_steps periods, and the QFI against the overlap method.
/// The report carries per-case deviations and an overall "pass" flag.
json run_oracle_check(const OracleCheckOptions& options);

}  // namespace lmgdtc::experiment
