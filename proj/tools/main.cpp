#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "lmgdtc/experiment/analysis.hpp"
#include "lmgdtc/experiment/config.hpp"
#include "lmgdtc/experiment/oracle_check.hpp"
#include "lmgdtc/experiment/plot_data.hpp"
#include "lmgdtc/experiment/sweep.hpp"

namespace fs = std::filesystem;
using namespace lmgdtc;
using namespace lmgdtc::experiment;

namespace {

ExperimentConfig resolve_config(const std::string& config_path, const std::string& preset) {
  if (!config_path.empty() && !preset.empty()) throw Error("pass either --config or --preset, not both");
  if (!config_path.empty()) return load_config(config_path);
  if (!preset.empty()) return load_preset(preset);
  throw Error("one of --config or --preset is required");
}

unsigned resolve_worker_count(int flag, const ExperimentConfig* config) {
  if (flag >= 0) return static_cast<unsigned>(flag);
  if (unsigned env = workers_from_environment(); env > 0) return env;
  if (config && config->workers > 0) return config->workers;
  return 0;
}

void write_json(const fs::path& path, const json& j) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return json::parse(in);
}

/// Accepts a sweep directory or a results.csv path.
fs::path results_path(const fs::path& input) {
  return fs::is_directory(input) ? input / "results.csv" : input;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Floquet LMG time-crystal experiments: sweeps, scaling analysis and plot data"};
  app.require_subcommand(1);
  app.set_version_flag("--version", code_version());

  std::string config_path, preset, out = "out";
  int workers = -1;
  bool fresh = false, quiet = false;

  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep and write results.csv + manifest.json");
  sweep->add_option("--config", config_path, "Experiment config (JSON)");
  sweep->add_option("--preset", preset, "Shipped preset id, e.g. fig2a");
  sweep->add_option("--workers", workers, "Worker threads (0 = all cores; default $LMGDTC_WORKERS)");
  sweep->add_option("--out", out, "Output directory")->capture_default_str();
  sweep->add_flag("--fresh", fresh, "Discard per-point results from an earlier run");
  sweep->add_flag("--quiet", quiet, "No progress output");

  std::string input, analysis_path, report_path;
  auto* analyze = app.add_subcommand("analyze", "Fit critical parameters from sweep results");
  analyze->add_option("--input", input, "Sweep directory or results.csv")->required();
  analyze->add_option("--config", config_path, "Config whose 'analysis' list to run");
  analyze->add_option("--preset", preset, "Preset whose 'analysis' list to run");
  analyze->add_option("--analysis", analysis_path, "JSON file with an analysis list (overrides the config's)");
  analyze->add_option("--workers", workers, "Worker threads for multi-start fits");
  analyze->add_option("--out", out, "Report path (default: report.json beside the results)");

  std::string figure;
  auto* plot = app.add_subcommand("plot-data", "Emit per-panel CSV bundles");
  plot->add_option("--input", input, "Sweep directory or results.csv");
  plot->add_option("--report", report_path, "Analysis report (needed for collapse panels)");
  plot->add_option("--preset", figure, "Figure id (fig1a ... fig6)")->required();
  plot->add_option("--out", out, "Directory receiving <figure>/")->capture_default_str();

  OracleCheckOptions oracle;
  auto* check = app.add_subcommand("oracle-check", "Compare against the brute-force qubit simulation");
  check->add_option("--sizes", oracle.sizes, "Qubit counts (<= 10)")->capture_default_str();
  check->add_option("--epsilon", oracle.epsilons, "Kick imperfections")->capture_default_str();
  check->add_option("--steps", oracle.n_steps, "Periods compared per series")->capture_default_str();
  check->add_option("--out", out, "Report path (stdout when omitted)");

  auto* presets = app.add_subcommand("presets", "List shipped presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep) {
      const ExperimentConfig config = resolve_config(config_path, preset);
      SweepOptions options;
      options.workers = resolve_worker_count(workers, &config);
      options.resume = !fresh;
      if (!quiet) {
        options.progress = [last = std::size_t{0}](std::size_t done, std::size_t total) mutable {
          const std::size_t pct = 100 * done / total;
          if (pct / 5 != last / 5 || done == total) {
            std::fprintf(stderr, "\r%zu/%zu points (%zu%%)", done, total, pct);
            if (done == total) std::fputc('\n', stderr);
            last = pct;
          }
        };
      }
      const SweepSummary s = run_sweep(config, out, options);
      std::printf("%s: %zu points (%zu computed, %zu reused, %zu failed) in %.1f s\n%s\n", config.name.c_str(), s.grid_points,
                  s.computed, s.reused, s.failures.size(), s.wall_seconds, s.results.string().c_str());
      return s.failures.empty() ? 0 : 2;
    }
    if (*analyze) {
      json specs;
      AnalysisOptions options;
      if (!analysis_path.empty()) {
        specs = read_json(analysis_path);
      } else {
        const ExperimentConfig config = resolve_config(config_path, preset);
        specs = config.analysis;
        options.seed = config.seed;
      }
      options.workers = resolve_worker_count(workers, nullptr);
      const fs::path results = results_path(input);
      const json report = run_analysis(read_results(results), specs, options);
      const fs::path report_out = analyze->count("--out") ? fs::path(out) : results.parent_path() / "report.json";
      write_json(report_out, report);
      std::printf("%s\n", report_out.c_str());
      return 0;
    }
    if (*plot) {
      std::vector<ResultRow> rows;
      if (!input.empty()) rows = read_results(results_path(input));
      json report;
      if (!report_path.empty()) report = read_json(report_path);
      const fs::path dir = emit_plot_data(figure, rows, report_path.empty() ? nullptr : &report, out);
      std::printf("%s\n", dir.c_str());
      return 0;
    }
    if (*check) {
      const json report = run_oracle_check(oracle);
      if (check->count("--out")) write_json(out, report);
      else std::printf("%s\n", report.dump(2).c_str());
      return report.at("pass").get<bool>() ? 0 : 1;
    }
    if (*presets) {
      for (const auto& id : list_presets()) std::printf("%s\n", id.c_str());
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
