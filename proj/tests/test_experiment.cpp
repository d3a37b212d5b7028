#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lmgdtc/experiment/analysis.hpp"
#include "lmgdtc/experiment/config.hpp"
#include "lmgdtc/experiment/oracle_check.hpp"
#include "lmgdtc/experiment/plot_data.hpp"
#include "lmgdtc/experiment/results.hpp"
#include "lmgdtc/experiment/sweep.hpp"
#include "lmgdtc/observables.hpp"

using namespace lmgdtc;
using namespace lmgdtc::experiment;
namespace fs = std::filesystem;

namespace {

json small_config_json() {
  return json::parse(R"({
    "name": "small",
    "grid": {"N": [8, 12], "h": [0.3], "tau": [0.6], "epsilon": {"start": 0.05, "stop": 0.15, "step": 0.025}},
    "n_steps": 20,
    "observables": ["magnetization", "order_parameter", "qfi", "taipr", "ipr_series"],
    "series": {"from": 15}
  })");
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) : path_(fs::temp_directory_path() / ("lmgdtc_test_" + tag)) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  [[nodiscard]] const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Config, ParsesRangesAndLists) {
  EXPECT_EQ(parse_axis(json(0.3), "x"), std::vector<double>{0.3});
  EXPECT_EQ(parse_axis(json::parse("[1, 2]"), "x"), (std::vector<double>{1, 2}));
  EXPECT_EQ(parse_axis(json::parse(R"({"start": 0, "stop": 1, "count": 3})"), "x"), (std::vector<double>{0, 0.5, 1}));
  EXPECT_EQ(parse_axis(json::parse(R"({"start": 0, "stop": 0.3, "step": 0.1})"), "x").size(), 4u);
  EXPECT_THROW(parse_axis(json::parse(R"({"start": 0, "stop": 1})"), "x"), Error);
  EXPECT_THROW(parse_axis(json("bad"), "x"), Error);
}

TEST(Config, GridOrderEpsilonFastest) {
  const ExperimentConfig c = ExperimentConfig::from_json(small_config_json());
  const auto g = c.grid();
  ASSERT_EQ(g.size(), 10u);
  EXPECT_EQ(g[0].n_spins, 8);
  EXPECT_NEAR(g[1].epsilon, 0.075, 1e-15);
  EXPECT_EQ(g[5].n_spins, 12);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(g[i].index, i);
}

TEST(Config, ValidationErrors) {
  auto expect_invalid = [](const std::function<void(json&)>& edit) {
    json j = small_config_json();
    edit(j);
    EXPECT_THROW(ExperimentConfig::from_json(j).validate(), Error) << j.dump();
  };
  expect_invalid([](json& j) { j["grid"]["N"] = json::array({0}); });
  expect_invalid([](json& j) { j["grid"]["N"] = json::array({2.5}); });
  expect_invalid([](json& j) { j["grid"]["epsilon"] = json::array({1.5}); });
  expect_invalid([](json& j) { j["grid"]["epsilon"] = json::array({0.0}); });  // no room for the QFI stencil
  expect_invalid([](json& j) { j["observables"] = json::array({"bogus"}); });
  expect_invalid([](json& j) { j["observables"] = json::array(); });
  expect_invalid([](json& j) { j["observables"] = json::array({"spectrum"}); });  // window of 6 steps
  expect_invalid([](json& j) { j["observables"] = json::array({"qfi_series"}); });
  expect_invalid([](json& j) { j["series"]["from"] = 30; });
  expect_invalid([](json& j) { j.erase("grid"); });
  EXPECT_NO_THROW(ExperimentConfig::from_json(small_config_json()).validate());
}

TEST(Config, JsonRoundTripAndDigest) {
  const ExperimentConfig c = ExperimentConfig::from_json(small_config_json());
  const ExperimentConfig back = ExperimentConfig::from_json(c.to_json());
  EXPECT_EQ(back.digest(), c.digest());
  ExperimentConfig renamed = c;
  renamed.name = "other";
  renamed.workers = 7;
  EXPECT_EQ(renamed.digest(), c.digest());
  ExperimentConfig changed = c;
  changed.n_steps = 21;
  EXPECT_NE(changed.digest(), c.digest());
}

TEST(Config, PresetsLoadAndValidate) {
  const auto ids = list_presets();
  EXPECT_GE(ids.size(), 16u);
  for (const auto& id : ids) {
    const ExperimentConfig c = load_preset(id);
    EXPECT_NO_THROW(c.validate()) << id;
    EXPECT_EQ(c.name, id);
  }
  EXPECT_THROW(load_preset("no_such_preset"), Error);
}

TEST(Config, LoadsFileWithComments) {
  TempDir dir("config");
  const fs::path p = dir.path() / "c.json";
  std::ofstream(p) << "// sweep\n" << small_config_json().dump(2);
  EXPECT_EQ(load_config(p).sizes, (std::vector<int>{8, 12}));
  EXPECT_THROW(load_config(dir.path() / "missing.json"), Error);
}

TEST(Results, CsvRoundTripIsExact) {
  const ResultRow row{3, 100, 0.3, 0.6, 0.1 + 0.2, 50, "qfi_series", 10.0, 1.0 / 3.0, std::nullopt};
  const ResultRow back = parse_csv_line(to_csv_line(row));
  EXPECT_EQ(back.grid_index, row.grid_index);
  EXPECT_EQ(back.epsilon, row.epsilon);
  EXPECT_EQ(back.value, row.value);
  EXPECT_EQ(back.coordinate, row.coordinate);
  EXPECT_FALSE(back.error.has_value());
  const ResultRow scalar{0, 2, 0.0, 0.0, 0.0, 0, "ipr", std::nullopt, 1e-300, 2.5e-17};
  const ResultRow sb = parse_csv_line(to_csv_line(scalar));
  EXPECT_FALSE(sb.coordinate.has_value());
  EXPECT_EQ(sb.value, 1e-300);
  EXPECT_EQ(sb.error, 2.5e-17);
  EXPECT_THROW(parse_csv_line("1,2,3"), Error);
}

TEST(Results, RejectsWrongHeader) {
  TempDir dir("header");
  std::ofstream(dir.path() / "r.csv") << "a,b,c\n";
  EXPECT_THROW(read_results(dir.path() / "r.csv"), Error);
}

TEST(Sweep, PointMatchesDirectComputation) {
  const ExperimentConfig c = ExperimentConfig::from_json(small_config_json());
  PropagatorCache cache;
  const GridPoint pt = c.grid()[6];
  const auto rows = compute_point(c, pt, cache);
  const FloquetPropagator prop(SpinSystem(pt.n_spins), c.params(pt.h_field), pt.tau);
  const auto scalar = [&](const std::string& name) -> double {
    for (const auto& r : rows)
      if (r.observable == name) return r.value;
    ADD_FAILURE() << name;
    return NAN;
  };
  std::vector<Eigen::VectorXcd> states;
  prop.run(pt.epsilon, 20, [&](int, const Eigen::VectorXcd& psi) { states.push_back(psi); });
  EXPECT_EQ(scalar("magnetization"), magnetization(states.back(), prop.system()));
  EXPECT_NEAR(scalar("order_parameter"), order_parameter(prop, pt.epsilon, 20), 1e-14);
  EXPECT_NEAR(scalar("qfi"), qfi(prop, pt.epsilon, 20, c.qfi_stencil_step).value, 1e-9);
  EXPECT_NEAR(scalar("taipr"), taipr(prop, pt.epsilon, 20), 1e-14);
  int series = 0;
  for (const auto& r : rows)
    if (r.observable == "ipr_series") {
      ++series;
      EXPECT_NEAR(r.value, ipr(states[static_cast<std::size_t>(*r.coordinate)]), 1e-14);
    }
  EXPECT_EQ(series, 6);
  EXPECT_EQ(cache.size(), 1u);
}

TEST(Sweep, DeterministicAcrossWorkerCounts) {
  const ExperimentConfig c = ExperimentConfig::from_json(small_config_json());
  TempDir a("det_a"), b("det_b");
  SweepOptions one, four;
  one.workers = 1;
  four.workers = 4;
  const auto ra = run_sweep(c, a.path(), one);
  const auto rb = run_sweep(c, b.path(), four);
  EXPECT_TRUE(ra.failures.empty());
  EXPECT_EQ(ra.computed, 10u);
  EXPECT_EQ(slurp(ra.results), slurp(rb.results));
  const json manifest = json::parse(slurp(ra.manifest));
  EXPECT_EQ(manifest.at("status"), "complete");
  EXPECT_EQ(manifest.at("config_digest"), c.digest());
}

TEST(Sweep, ResumeRecomputesOnlyMissingPoints) {
  const ExperimentConfig c = ExperimentConfig::from_json(small_config_json());
  TempDir dir("resume");
  SweepOptions opts;
  opts.workers = 1;
  const auto first = run_sweep(c, dir.path(), opts);
  const std::string reference = slurp(first.results);
  fs::remove(dir.path() / "points" / "0000003.csv");
  fs::remove(dir.path() / "points" / "0000007.csv");
  const auto second = run_sweep(c, dir.path(), opts);
  EXPECT_EQ(second.computed, 2u);
  EXPECT_EQ(second.reused, 8u);
  EXPECT_EQ(slurp(second.results), reference);
  opts.resume = false;
  EXPECT_EQ(run_sweep(c, dir.path(), opts).computed, 10u);
}

TEST(Sweep, RefusesForeignOutputDirectory) {
  ExperimentConfig c = ExperimentConfig::from_json(small_config_json());
  TempDir dir("digest");
  SweepOptions opts;
  opts.workers = 1;
  run_sweep(c, dir.path(), opts);
  c.n_steps = 22;
  EXPECT_THROW(run_sweep(c, dir.path(), opts), Error);
}

TEST(Analysis, FixtureReport) {
  // Synthetic rows: order parameter with a known drop and a QFI peak moving as 0.12 + 0.5/N.
  std::vector<ResultRow> rows;
  std::size_t idx = 0;
  for (int n : {100, 200, 400, 800}) {
    const double peak = 0.12 + 0.5 / n;
    for (int i = 0; i <= 40; ++i) {
      const double e = 0.005 * i;
      rows.push_back({idx, n, 0.3, 0.6, e, 50, "qfi", std::nullopt, 3.0 * std::pow(n, 1.4) * std::exp(-std::pow((e - peak) / 0.03, 2)), std::nullopt});
      rows.push_back({idx, n, 0.3, 0.6, e, 50, "magnetization", std::nullopt, -0.5 * std::tanh((0.13 - e) * 40.0), std::nullopt});
      ++idx;
    }
  }
  const json specs = json::parse(R"([
    {"name": "pl", "type": "power_law_max", "observable": "qfi"},
    {"name": "loc", "type": "pareto", "observable": "qfi", "extremum": "max"},
    {"name": "chi", "type": "susceptibility", "observable": "magnetization"}
  ])");
  const json report = run_analysis(rows, specs);
  EXPECT_NEAR(report.at("pl").at("params").at("b").get<double>(), 1.4, 0.01);
  EXPECT_EQ(report.at("loc").at("locations").size(), 4u);
  EXPECT_EQ(report.at("chi").at("peaks").size(), 4u);
  EXPECT_THROW(run_analysis(rows, json::parse(R"([{"name": "bad", "type": "nonsense"}])")), Error);
  EXPECT_THROW(run_analysis({}, specs), Error);
}

TEST(Analysis, CurveExtremumWindow) {
  const std::vector<std::pair<double, double>> c{{0.0, 5.0}, {0.1, 1.0}, {0.2, 3.0}, {0.3, 2.0}};
  EXPECT_EQ(curve_extremum(c, true, 0.05, 0.35).first, 0.2);
  EXPECT_EQ(curve_extremum(c, false, 0.0, 0.3).first, 0.1);
  EXPECT_THROW(curve_extremum(c, true, 0.31, 0.35), Error);
}

TEST(PlotData, EmptySelectionLeavesNoBundle) {
  TempDir dir("plot");
  EXPECT_THROW(emit_plot_data("fig2a", {}, nullptr, dir.path()), Error);
  EXPECT_TRUE(fs::is_empty(dir.path()));
  EXPECT_THROW(emit_plot_data("fig99", {}, nullptr, dir.path()), Error);
}

TEST(PlotData, WritesBundleFromSweep) {
  json j = small_config_json();
  j["observables"] = json::array({"order_parameter"});
  const ExperimentConfig c = ExperimentConfig::from_json(j);
  TempDir dir("plot_ok");
  SweepOptions opts;
  opts.workers = 1;
  const auto summary = run_sweep(c, dir.path() / "sweep", opts);
  const fs::path bundle = emit_plot_data("fig2a", read_results(summary.results), nullptr, dir.path() / "plots");
  EXPECT_TRUE(fs::exists(bundle / "README.md"));
  EXPECT_TRUE(fs::exists(bundle / "fig2a.csv"));
}

TEST(OracleCheck, SmallCasePasses) {
  OracleCheckOptions o;
  o.sizes = {2, 4};
  o.epsilons = {0.1};
  o.n_steps = 20;
  const json r = run_oracle_check(o);
  EXPECT_TRUE(r.at("pass").get<bool>()) << r.dump(2);
}
