#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "lmgdtc/experiment/config.hpp"
#include "lmgdtc/experiment/results.hpp"
#include "lmgdtc/floquet.hpp"

namespace lmgdtc::experiment {

/// Thread-safe, build-once store of propagators keyed by (N, J, h, delta, tau).
/// Concurrent requests for the same key wait for a single construction.
class PropagatorCache {
 public:
  std::shared_ptr<const FloquetPropagator> get(int n_spins, const HamiltonianParams& params, double tau);
  [[nodiscard]] std::size_t size() const;

 private:
  using Key = std::tuple<int, double, double, double, double>;
  struct Slot {
    std::once_flag once;
    std::shared_ptr<const FloquetPropagator> value;
  };
  mutable std::mutex mutex_;
  std::map<Key, std::shared_ptr<Slot>> slots_;
};

/// All rows for one grid point, in observable-selection order.
std::vector<ResultRow> compute_point(const ExperimentConfig& config, const GridPoint& point, PropagatorCache& cache);

struct SweepOptions {
  unsigned workers = 0;  // 0: hardware concurrency
  /// Reuse per-point files left by an earlier run of the same config.
  bool resume = true;
  std::function<void(std::size_t done, std::size_t total)> progress;
};

struct SweepFailure {
  std::size_t grid_index;
  std::string message;
};

struct SweepSummary {
  std::size_t grid_points = 0;
  std::size_t computed = 0;
  std::size_t reused = 0;
  std::vector<SweepFailure> failures;
  double wall_seconds = 0.0;
  std::filesystem::path results;
  std::filesystem::path manifest;
};

/// Runs every grid point and writes into `out_dir`:
///   points/<index>.csv  one file per finished point (the resume state)
///   results.csv         all rows merged in grid-index order
///   manifest.json       config echo, versions, counts, failures, wall time
/// A point that throws is recorded as a failure; the rest of the sweep continues.
SweepSummary run_sweep(const ExperimentConfig& config, const std::filesystem::path& out_dir, const SweepOptions& options = {});

/// Worker count from the LMGDTC_WORKERS environment variable, or 0 when unset.
unsigned workers_from_environment();

std::string code_version();

}  // namespace lmgdtc::experiment
