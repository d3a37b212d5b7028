#include "lmgdtc/experiment/plot_data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>

#include "lmgdtc/experiment/analysis.hpp"
#include "lmgdtc/observables.hpp"

namespace lmgdtc::experiment {

namespace fs = std::filesystem;

namespace {

// Pseudo-critical points are searched in this bracket; see README.
constexpr double kSearchLo = 0.10;
constexpr double kSearchHi = 0.20;

Table scalar_table(const std::vector<ResultRow>& rows, const std::string& observable, const std::string& file,
                   const std::string& description, const std::vector<std::string>& keys, const std::vector<std::string>& axes) {
  Table t{file, description, keys, axes, {}};
  for (const auto& r : select(rows, observable)) {
    std::vector<double> line;
    for (const auto& k : keys) {
      if (k == "N") line.push_back(r.n_spins);
      else if (k == "h") line.push_back(r.h_field);
      else if (k == "tau") line.push_back(r.tau);
      else if (k == "epsilon") line.push_back(r.epsilon);
      else if (k == "n" || k == "omega") line.push_back(r.coordinate.value_or(r.n_steps));
      else line.push_back(r.value);
    }
    t.rows.push_back(std::move(line));
  }
  return t;
}

Table extremum_table(const std::vector<ResultRow>& rows, const std::string& observable, bool maximum, bool location,
                     const std::string& file, const std::string& description, const std::string& column, const std::string& axis) {
  Table t{file, description + " (grid extremum inside eps in [0.10, 0.20])", {"N", column}, {"x", axis}, {}};
  for (const auto& [size, curve] : curves_by_size(rows, observable)) {
    const auto [x, y] = curve_extremum(curve, maximum, kSearchLo, kSearchHi);
    t.rows.push_back({static_cast<double>(size), location ? x : y});
  }
  return t;
}

Table collapse_table(const json* report, const std::string& name, const std::string& file, const std::string& description) {
  if (!report || !report->contains(name))
    throw Error("plot-data: this figure needs an analysis report containing '" + name + "' (pass --report)");
  Table t{file, description, {"N", "u", "v", "dv"}, {"series", "x", "y", "y error"}, {}};
  for (const auto& p : report->at(name).at("points"))
    t.rows.push_back({p.at("N").get<double>(), p.at("u").get<double>(), p.at("v").get<double>(), p.at("dv").get<double>()});
  return t;
}

std::vector<Table> fig1b(const std::vector<ResultRow>& rows) {
  std::set<int> shown{101};
  for (int n = 200; n <= 221; n += 3) shown.insert(n);
  Table mz{"fig1b_magnetization.csv", "m_z(n, eps) for n in {200, 203, ..., 221} and n = 101", {"n", "epsilon", "m_z"},
           {"series", "x", "y"}, {}};
  std::map<double, std::vector<std::pair<double, double>>> by_step;
  for (const auto& r : select(rows, "magnetization_series")) {
    if (!r.coordinate) continue;
    const int n = static_cast<int>(std::lround(*r.coordinate));
    if (!shown.count(n)) continue;
    mz.rows.push_back({*r.coordinate, r.epsilon, r.value});
    by_step[*r.coordinate].emplace_back(r.epsilon, r.value);
  }
  Table chi{"fig1b_susceptibility.csv", "inset: m_z and chi = d^2 m_z / d eps^2 at n = 101", {"epsilon", "m_z", "chi"},
            {"x", "y (left)", "y (right)"}, {}};
  if (auto it = by_step.find(101.0); it != by_step.end()) {
    auto curve = it->second;
    std::sort(curve.begin(), curve.end());
    for (std::size_t i = 2; i + 2 < curve.size(); ++i)
      chi.rows.push_back({curve[i].first, curve[i].second, susceptibility(curve, curve[i].first)});
  }
  return {mz, chi};
}

std::vector<Table> fig3f(const std::vector<ResultRow>& rows) {
  // Fixed epsilon = argmax of the n = 50 QFI inside the search bracket.
  std::vector<std::pair<double, double>> ref;
  for (const auto& r : select(rows, "qfi_series"))
    if (r.coordinate && *r.coordinate == 50.0) ref.emplace_back(r.epsilon, r.value);
  if (ref.empty()) throw Error("plot-data: fig3f needs qfi_series rows at n = 50");
  std::sort(ref.begin(), ref.end());
  const double eps = curve_extremum(ref, true, kSearchLo, kSearchHi).first;
  Table t{"fig3f.csv", "F_Q(n) at eps = eps_max (argmax of F_Q at n = 50)", {"n", "epsilon", "qfi"}, {"x", "label", "y"}, {}};
  for (const auto& r : select(rows, "qfi_series"))
    if (r.coordinate && r.epsilon == eps) t.rows.push_back({*r.coordinate, r.epsilon, r.value});
  return {t};
}

using Recipe = std::function<std::vector<Table>(const std::vector<ResultRow>&, const json*)>;

const std::map<std::string, Recipe>& recipes() {
  static const std::map<std::string, Recipe> table{
      {"fig1a",
       [](const auto& rows, const json*) {
         return std::vector<Table>{
             scalar_table(rows, "magnetization_series", "fig1a_magnetization.csv", "stroboscopic m_z(n, eps) over the series window",
                          {"epsilon", "n", "m_z"}, {"series", "x", "y"}),
             scalar_table(rows, "spectrum", "fig1a_spectrum.csv", "inset: |FFT| of m_z; peak at omega = pi / tau",
                          {"epsilon", "omega", "amplitude"}, {"series", "x", "y"})};
       }},
      {"fig1b", [](const auto& rows, const json*) { return fig1b(rows); }},
      {"fig2a",
       [](const auto& rows, const json*) {
         return std::vector<Table>{scalar_table(rows, "order_parameter", "fig2a.csv", "order parameter vs eps per N",
                                                {"N", "epsilon", "order_parameter"}, {"series", "x", "y"})};
       }},
      {"fig2b",
       [](const auto&, const json* report) {
         return std::vector<Table>{collapse_table(report, "order_parameter_collapse", "fig2b.csv",
                                                  "collapse: u = N^{1/nu}(eps - eps_c), v = m N^{-zeta/nu}")};
       }},
      {"fig3a",
       [](const auto& rows, const json*) {
         return std::vector<Table>{
             scalar_table(rows, "qfi", "fig3a.csv", "F_Q vs eps per N at n = n_steps", {"N", "epsilon", "qfi"}, {"series", "x", "y"})};
       }},
      {"fig3b",
       [](const auto& rows, const json*) {
         return std::vector<Table>{extremum_table(rows, "qfi", true, false, "fig3b.csv", "F_Q^max vs N (log-log)", "qfi_max", "y")};
       }},
      {"fig3c",
       [](const auto& rows, const json*) {
         return std::vector<Table>{extremum_table(rows, "qfi", true, true, "fig3c.csv", "eps_max vs N", "epsilon_max", "y")};
       }},
      {"fig3d",
       [](const auto&, const json* report) {
         return std::vector<Table>{
             collapse_table(report, "qfi_collapse", "fig3d.csv", "collapse: u = N^{1/nu}(eps - eps_c), v = F_Q N^{-zeta/nu}")};
       }},
      {"fig3e",
       [](const auto& rows, const json*) {
         return std::vector<Table>{scalar_table(rows, "qfi_series", "fig3e.csv", "F_Q vs eps for several n",
                                                {"n", "epsilon", "qfi"}, {"series", "x", "y"})};
       }},
      {"fig3f", [](const auto& rows, const json*) { return fig3f(rows); }},
      {"fig4a",
       [](const auto& rows, const json*) {
         return std::vector<Table>{
             scalar_table(rows, "taipr", "fig4a.csv", "TAIPR vs eps per N", {"N", "epsilon", "taipr"}, {"series", "x", "y"})};
       }},
      {"fig4b",
       [](const auto& rows, const json*) {
         return std::vector<Table>{extremum_table(rows, "taipr", false, true, "fig4b.csv", "eps_min (TAIPR argmin) vs N", "epsilon_min", "y")};
       }},
      {"fig5a",
       [](const auto& rows, const json*) {
         return std::vector<Table>{
             scalar_table(rows, "renyi2", "fig5a.csv", "Renyi-2 entropy map over (eps, h)", {"h", "epsilon", "renyi2"}, {"y", "x", "color"})};
       }},
      {"fig5b",
       [](const auto& rows, const json*) {
         return std::vector<Table>{scalar_table(rows, "order_parameter", "fig5b.csv", "order parameter map over (eps, h)",
                                                {"h", "epsilon", "order_parameter"}, {"y", "x", "color"})};
       }},
      {"fig5c",
       [](const auto& rows, const json*) {
         return std::vector<Table>{scalar_table(rows, "order_parameter", "fig5c.csv", "order parameter map over (eps, tau)",
                                                {"tau", "epsilon", "order_parameter"}, {"y", "x", "color"})};
       }},
      {"fig6",
       [](const auto& rows, const json*) {
         return std::vector<Table>{
             scalar_table(rows, "commutator", "fig6.csv", "commutator measure C vs h", {"h", "commutator"}, {"x", "y"})};
       }},
  };
  return table;
}

void write_table(const fs::path& path, const Table& t) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
}

}  // namespace

std::vector<std::string> plot_figures() {
  std::vector<std::string> ids;
  for (const auto& [id, recipe] : recipes()) ids.push_back(id);
  return ids;
}

std::vector<Table> figure_tables(const std::string& figure, const std::vector<ResultRow>& rows, const json* report) {
  const auto it = recipes().find(figure);
  if (it == recipes().end()) throw Error("plot-data: unknown figure '" + figure + "'");
  auto tables = it->second(rows, report);
  for (const auto& t : tables)
    if (t.rows.empty()) throw Error("plot-data: " + figure + " has no data for " + t.file + " (missing observable or columns)");
  return tables;
}

fs::path emit_plot_data(const std::string& figure, const std::vector<ResultRow>& rows, const json* report, const fs::path& out_dir) {
  if (rows.empty() && !report) throw Error("plot-data: empty result set");
  const auto tables = figure_tables(figure, rows, report);

  const fs::path target = out_dir / figure;
  const fs::path staging = out_dir / ("." + figure + ".partial");
  fs::remove_all(staging);
  fs::create_directories(staging);
  for (const auto& t : tables) write_table(staging / t.file, t);

  std::ofstream readme(staging / "README.md");
  readme << "# " << figure << "\n\n";
  for (const auto& t : tables) {
    readme << "## " << t.file << "\n\n" << t.description << "\n\n| column | axis |\n|---|---|\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) readme << "| " << t.columns[i] << " | " << t.axes[i] << " |\n";
    readme << '\n';
  }
  readme.close();

  fs::remove_all(target);
  fs::rename(staging, target);
  return target;
}

}  // namespace lmgdtc::experiment
