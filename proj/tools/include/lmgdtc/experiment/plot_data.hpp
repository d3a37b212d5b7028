#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lmgdtc/experiment/config.hpp"
#include "lmgdtc/experiment/results.hpp"

namespace lmgdtc::experiment {

struct Table {
  std::string file;         // e.g. "fig2a.csv"
  std::string description;  // one line for the bundle README
  std::vector<std::string> columns;
  std::vector<std::string> axes;  // what each column is plotted as
  std::vector<std::vector<double>> rows;
};

/// Figure ids with a plot-data recipe: fig1a ... fig6.
std::vector<std::string> plot_figures();

/// Tidy tables for one figure. Collapse panels read the analysis report.
std::vector<Table> figure_tables(const std::string& figure, const std::vector<ResultRow>& rows, const json* report);

/// Writes <out_dir>/<figure>/ with one CSV per table and a README. The bundle
/// is assembled in a temporary directory and only moved into place when complete.
std::filesystem::path emit_plot_data(const std::string& figure, const std::vector<ResultRow>& rows, const json* report,
                                     const std::filesystem::path& out_dir);

}  // namespace lmgdtc::experiment
