#include "lmgdtc/experiment/config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <utility>

#include "lmgdtc/critical.hpp"

#ifndef LMGDTC_DEFAULT_PRESET_DIR
#define LMGDTC_DEFAULT_PRESET_DIR "presets"
#endif

namespace lmgdtc::experiment {

namespace {

constexpr std::array<std::pair<Observable, const char*>, 11> kObservableNames{{
    {Observable::Magnetization, "magnetization"},
    {Observable::MagnetizationSeries, "magnetization_series"},
    {Observable::Spectrum, "spectrum"},
    {Observable::OrderParameter, "order_parameter"},
    {Observable::Qfi, "qfi"},
    {Observable::QfiSeries, "qfi_series"},
    {Observable::Ipr, "ipr"},
    {Observable::IprSeries, "ipr_series"},
    {Observable::Taipr, "taipr"},
    {Observable::Renyi2, "renyi2"},
    {Observable::Commutator, "commutator"},
}};

template <class T>
T field(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

}  // namespace

std::string to_string(Observable o) {
  for (const auto& [value, name] : kObservableNames)
    if (value == o) return name;
  throw Error("unknown observable");
}

Observable parse_observable(const std::string& name) {
  for (const auto& [value, known] : kObservableNames)
    if (name == known) return value;
  throw Error("unknown observable '" + name + "'");
}

bool is_series(Observable o) {
  return o == Observable::MagnetizationSeries || o == Observable::Spectrum || o == Observable::QfiSeries ||
         o == Observable::IprSeries;
}

std::vector<double> parse_axis(const json& j, const std::string& what) {
  if (j.is_number()) return {j.get<double>()};
  if (j.is_array()) {
    std::vector<double> out;
    for (const auto& v : j) out.push_back(v.get<double>());
    return out;
  }
  if (!j.is_object() || !j.contains("start") || !j.contains("stop"))
    throw Error(what + ": expected a number, a list, or {start, stop, step|count}");
  const double start = j.at("start").get<double>();
  const double stop = j.at("stop").get<double>();
  if (j.contains("count")) {
    const int count = j.at("count").get<int>();
    if (count < 1) throw Error(what + ": count must be positive");
    if (count == 1) return {start};
    std::vector<double> out;
    for (int i = 0; i < count; ++i) out.push_back(start + (stop - start) * i / (count - 1));
    return out;
  }
  if (!j.contains("step")) throw Error(what + ": range needs step or count");
  return uniform_grid(start, stop, j.at("step").get<double>());
}

void ExperimentConfig::validate() const {
  if (sizes.empty() || h_values.empty() || tau_values.empty() || epsilons.empty())
    throw Error("config: every sweep axis (N, h, tau, epsilon) needs at least one value");
  for (int n : sizes)
    if (n < 1) throw Error("config: N must be positive");
  for (double t : tau_values)
    if (!(t >= 0.0) || !std::isfinite(t)) throw Error("config: tau must be finite and non-negative");
  for (double e : epsilons)
    if (!(e >= 0.0 && e <= 1.0)) throw Error("config: epsilon must lie in [0, 1]");
  for (double h : h_values) params(h).validate();
  if (n_steps < 0) throw Error("config: n_steps must be non-negative");
  if (observables.empty()) throw Error("config: no observables selected");
  if (series_from < 0 || series_from > n_steps) throw Error("config: series.from must lie in [0, n_steps]");
  if (wants(Observable::Spectrum)) {
    if (n_steps - series_from + 1 < 8) throw Error("config: spectrum needs a series window of at least 8 steps");
    for (double t : tau_values)
      if (!(t > 0.0)) throw Error("config: spectrum needs tau > 0");
  }
  if (wants(Observable::Qfi) || wants(Observable::QfiSeries)) {
    if (!(qfi_stencil_step > 0.0)) throw Error("config: qfi.stencil_step must be positive");
    for (double e : epsilons) {
      if (e - 2.0 * qfi_stencil_step < 0.0 || e + 2.0 * qfi_stencil_step >= 1.0)
        throw Error("config: epsilon " + std::to_string(e) + " leaves no room for the QFI stencil");
    }
  }
  if (wants(Observable::QfiSeries)) {
    if (qfi_steps.empty()) throw Error("config: qfi_series needs qfi.steps");
    if (!std::is_sorted(qfi_steps.begin(), qfi_steps.end()) || qfi_steps.front() < 0)
      throw Error("config: qfi.steps must be non-negative and ascending");
  }
  if (!analysis.is_array()) throw Error("config: analysis must be a list");
}

std::vector<GridPoint> ExperimentConfig::grid() const {
  std::vector<GridPoint> points;
  points.reserve(sizes.size() * h_values.size() * tau_values.size() * epsilons.size());
  for (int n : sizes)
    for (double h : h_values)
      for (double t : tau_values)
        for (double e : epsilons) points.push_back({points.size(), n, h, t, e});
  return points;
}

bool ExperimentConfig::wants(Observable o) const {
  return std::find(observables.begin(), observables.end(), o) != observables.end();
}

json ExperimentConfig::to_json() const {
  json obs = json::array();
  for (auto o : observables) obs.push_back(to_string(o));
  json j{
      {"name", name},
      {"description", description},
      {"grid", {{"N", sizes}, {"h", h_values}, {"tau", tau_values}, {"epsilon", epsilons}}},
      {"params", {{"J", j_coupling}, {"delta", delta}}},
      {"n_steps", n_steps},
      {"observables", obs},
      {"qfi", {{"stencil_step", qfi_stencil_step}, {"steps", qfi_steps}}},
      {"series", {{"from", series_from}}},
      {"seed", seed},
      {"analysis", analysis},
  };
  if (workers > 0) j["workers"] = workers;
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  try {
    ExperimentConfig c;
    c.name = field<std::string>(j, "name", c.name);
    c.description = field<std::string>(j, "description", "");
    const json& g = j.at("grid");
    for (double n : parse_axis(g.at("N"), "grid.N")) {
      if (n != std::round(n)) throw Error("grid.N: sizes must be integers");
      c.sizes.push_back(static_cast<int>(n));
    }
    c.h_values = parse_axis(g.at("h"), "grid.h");
    c.tau_values = parse_axis(g.at("tau"), "grid.tau");
    c.epsilons = parse_axis(g.at("epsilon"), "grid.epsilon");
    if (j.contains("params")) {
      c.j_coupling = field(j.at("params"), "J", c.j_coupling);
      c.delta = field(j.at("params"), "delta", c.delta);
    }
    c.n_steps = field(j, "n_steps", c.n_steps);
    for (const auto& o : j.at("observables")) c.observables.push_back(parse_observable(o.get<std::string>()));
    if (j.contains("qfi")) {
      c.qfi_stencil_step = field(j.at("qfi"), "stencil_step", c.qfi_stencil_step);
      if (j.at("qfi").contains("steps")) {
        for (double s : parse_axis(j.at("qfi").at("steps"), "qfi.steps")) c.qfi_steps.push_back(static_cast<int>(std::lround(s)));
      }
    }
    if (j.contains("series")) c.series_from = field(j.at("series"), "from", c.series_from);
    c.seed = field<std::uint64_t>(j, "seed", c.seed);
    c.workers = field<unsigned>(j, "workers", 0u);
    c.analysis = field<json>(j, "analysis", json::array());
    return c;
  } catch (const json::exception& e) {
    throw Error(std::string("config: ") + e.what());
  }
}

std::string ExperimentConfig::digest() const {
  json j = to_json();
  j.erase("workers");
  j.erase("analysis");
  j.erase("description");
  j.erase("name");
  // FNV-1a over the canonical dump; nlohmann sorts object keys.
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char ch : j.dump()) {
    hash ^= ch;
    hash *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("config: cannot open " + path.string());
  json j;
  try {
    j = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw Error("config: " + path.string() + ": " + e.what());
  }
  ExperimentConfig c = ExperimentConfig::from_json(j);
  c.validate();
  return c;
}

std::filesystem::path preset_directory() {
  if (const char* env = std::getenv("LMGDTC_PRESET_DIR"); env && *env) return env;
  return LMGDTC_DEFAULT_PRESET_DIR;
}

ExperimentConfig load_preset(const std::string& id_or_path) {
  const std::filesystem::path direct(id_or_path);
  if (direct.extension() == ".json" && std::filesystem::exists(direct)) return load_config(direct);
  const auto path = preset_directory() / (id_or_path + ".json");
  if (!std::filesystem::exists(path)) throw Error("unknown preset '" + id_or_path + "' (looked in " + preset_directory().string() + ")");
  return load_config(path);
}

std::vector<std::string> list_presets() {
  std::vector<std::string> ids;
  const auto dir = preset_directory();
  if (!std::filesystem::is_directory(dir)) return ids;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".json") ids.push_back(entry.path().stem().string());
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace lmgdtc::experiment
