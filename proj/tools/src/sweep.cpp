#include "lmgdtc/experiment/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "lmgdtc/critical.hpp"
#include "lmgdtc/observables.hpp"
#include "lmgdtc/parallel.hpp"

#ifndef LMGDTC_VERSION
#define LMGDTC_VERSION "unknown"
#endif

namespace lmgdtc::experiment {

namespace fs = std::filesystem;

std::shared_ptr<const FloquetPropagator> PropagatorCache::get(int n_spins, const HamiltonianParams& params, double tau) {
  std::shared_ptr<Slot> slot;
  {
    std::lock_guard lock(mutex_);
    auto& entry = slots_[Key{n_spins, params.j_coupling, params.h_field, params.delta, tau}];
    if (!entry) entry = std::make_shared<Slot>();
    slot = entry;
  }
  std::call_once(slot->once, [&] { slot->value = std::make_shared<const FloquetPropagator>(SpinSystem(n_spins), params, tau); });
  return slot->value;
}

std::size_t PropagatorCache::size() const {
  std::lock_guard lock(mutex_);
  return slots_.size();
}

std::string code_version() { return LMGDTC_VERSION; }

unsigned workers_from_environment() {
  const char* env = std::getenv("LMGDTC_WORKERS");
  if (!env || !*env) return 0;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 0) throw Error("LMGDTC_WORKERS must be a non-negative integer");
  return static_cast<unsigned>(v);
}

std::vector<ResultRow> compute_point(const ExperimentConfig& config, const GridPoint& point, PropagatorCache& cache) {
  const HamiltonianParams params = config.params(point.h_field);
  std::shared_ptr<const FloquetPropagator> prop;
  auto propagator = [&]() -> const FloquetPropagator& {
    if (!prop) prop = cache.get(point.n_spins, params, point.tau);
    return *prop;
  };

  std::vector<ResultRow> rows;
  auto emit = [&](Observable o, std::optional<double> coordinate, double value, std::optional<double> error = std::nullopt) {
    rows.push_back({point.index, point.n_spins, point.h_field, point.tau, point.epsilon, config.n_steps, to_string(o),
                    coordinate, value, error});
  };

  const int n = config.n_steps;
  const double eps = point.epsilon;
  std::optional<double> taipr_value;
  for (Observable o : config.observables) {
    switch (o) {
      case Observable::Magnetization:
        emit(o, std::nullopt, magnetization_at(propagator(), eps, n));
        break;
      case Observable::MagnetizationSeries:
      case Observable::IprSeries:
      case Observable::Spectrum: {
        ObservableSeries series(to_string(o));
        const auto& sys = propagator().system();
        propagator().run(eps, n, [&](int step, const Eigen::VectorXcd& psi) {
          if (step < config.series_from) return;
          series.push_back(step, o == Observable::IprSeries ? ipr(psi) : magnetization(psi, sys));
        });
        if (o == Observable::Spectrum) {
          const SpectrumResult s = subharmonic_spectrum(series, point.tau);
          for (std::size_t k = 0; k < s.frequencies.size(); ++k) emit(o, s.frequencies[k], s.amplitudes[k]);
        } else {
          for (const auto& p : series.points()) emit(o, p.step, p.value);
        }
        break;
      }
      case Observable::OrderParameter:
        emit(o, std::nullopt, order_parameter(propagator(), eps, n));
        break;
      case Observable::Qfi: {
        const QfiResult q = qfi(propagator(), eps, n, config.qfi_stencil_step);
        emit(o, std::nullopt, q.value);
        break;
      }
      case Observable::QfiSeries:
        for (const QfiResult& q : qfi_series(propagator(), eps, config.qfi_steps, config.qfi_stencil_step))
          emit(o, q.n_steps, q.value);
        break;
      case Observable::Ipr: {
        double value = 0.0;
        propagator().run(eps, n, [&](int step, const Eigen::VectorXcd& psi) {
          if (step == n) value = ipr(psi);
        }, std::max(n, 1));
        emit(o, std::nullopt, value);
        break;
      }
      case Observable::Taipr:
      case Observable::Renyi2:
        if (!taipr_value) taipr_value = taipr(propagator(), eps, n);
        emit(o, std::nullopt, o == Observable::Taipr ? *taipr_value : renyi2(*taipr_value));
        break;
      case Observable::Commutator:
        emit(o, std::nullopt, commutator_measure(SpinSystem(point.n_spins), params));
        break;
    }
  }
  return rows;
}

namespace {

std::string point_file_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%07zu.csv", index);
  return buf;
}

std::string iso_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_atomically(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    if (!out) throw Error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

SweepSummary run_sweep(const ExperimentConfig& config, const fs::path& out_dir, const SweepOptions& options) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::string started_at = iso_timestamp();
  const auto grid = config.grid();
  const fs::path points_dir = out_dir / "points";
  const fs::path manifest_path = out_dir / "manifest.json";
  fs::create_directories(points_dir);

  if (fs::exists(manifest_path)) {
    const json old = json::parse(read_file(manifest_path), nullptr, false);
    if (old.is_discarded() || old.value("config_digest", "") != config.digest())
      throw Error(out_dir.string() + " holds results of a different configuration; choose another --out");
  }
  if (!options.resume) {
    for (const auto& entry : fs::directory_iterator(points_dir)) fs::remove(entry.path());
  }
  // Record the digest before any point is written so an interrupted run can be resumed safely.
  {
    json pending{{"schema_version", kCsvSchemaVersion}, {"config_digest", config.digest()}, {"status", "running"},
                 {"config", config.to_json()}, {"started_at", started_at}};
    write_atomically(manifest_path, pending.dump(2) + "\n");
  }

  SweepSummary summary;
  summary.grid_points = grid.size();
  std::vector<char> reused(grid.size(), 0);
  for (const auto& p : grid) reused[p.index] = fs::exists(points_dir / point_file_name(p.index)) ? 1 : 0;

  PropagatorCache cache;
  std::mutex failure_mutex;
  std::atomic<std::size_t> done{0};
  const unsigned workers = resolve_workers(options.workers);
  parallel_for(grid.size(), workers, [&](std::size_t i) {
    const GridPoint& p = grid[i];
    if (!reused[i]) {
      try {
        std::ostringstream body;
        write_rows(body, compute_point(config, p, cache));
        write_atomically(points_dir / point_file_name(p.index), body.str());
      } catch (const std::exception& e) {
        std::lock_guard lock(failure_mutex);
        summary.failures.push_back({p.index, e.what()});
      }
    }
    const std::size_t finished = ++done;
    if (options.progress) options.progress(finished, grid.size());
  });
  std::sort(summary.failures.begin(), summary.failures.end(),
            [](const SweepFailure& a, const SweepFailure& b) { return a.grid_index < b.grid_index; });

  // Merge in grid order; the body depends only on the config, never on scheduling.
  std::string merged = std::string(kCsvHeader) + "\n";
  for (const auto& p : grid) {
    const fs::path file = points_dir / point_file_name(p.index);
    if (!fs::exists(file)) continue;
    merged += read_file(file);
    if (reused[p.index]) ++summary.reused;
    else ++summary.computed;
  }
  summary.results = out_dir / "results.csv";
  write_atomically(summary.results, merged);

  summary.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json failures = json::array();
  for (const auto& f : summary.failures) failures.push_back({{"grid_index", f.grid_index}, {"error", f.message}});
  json manifest{
      {"schema_version", kCsvSchemaVersion},
      {"csv_columns", kCsvHeader},
      {"code_version", code_version()},
      {"config_digest", config.digest()},
      {"config", config.to_json()},
      {"status", summary.failures.empty() ? "complete" : "partial"},
      {"started_at", started_at},
      {"wall_time_seconds", summary.wall_seconds},
      {"workers", workers},
      {"grid_points", summary.grid_points},
      {"computed", summary.computed},
      {"reused", summary.reused},
      {"failures", failures},
      {"series_window", {{"from", config.series_from}, {"to", config.n_steps}}},
  };
  summary.manifest = manifest_path;
  write_atomically(manifest_path, manifest.dump(2) + "\n");
  return summary;
}

}  // namespace lmgdtc::experiment
