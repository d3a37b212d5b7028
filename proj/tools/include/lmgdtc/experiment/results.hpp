#pragma once

// Result rows and their CSV form. Floats are written with 17 significant
// digits so a read-back is bit-exact.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lmgdtc::experiment {

inline constexpr int kCsvSchemaVersion = 1;
inline constexpr const char* kCsvHeader = "grid_index,N,h,tau,epsilon,n_steps,observable,coordinate,value,error";

struct ResultRow {
  std::size_t grid_index;
  int n_spins;
  double h_field;
  double tau;
  double epsilon;
  int n_steps;
  std::string observable;
  /// Step for time series, angular frequency for spectra; empty for scalars.
  std::optional<double> coordinate;
  double value;
  std::optional<double> error;
};

std::string format_double(double v);
std::string to_csv_line(const ResultRow& row);
ResultRow parse_csv_line(const std::string& line);

void write_rows(std::ostream& out, const std::vector<ResultRow>& rows);
/// Reads a results CSV; the header must match the current schema.
std::vector<ResultRow> read_results(const std::filesystem::path& path);

/// Rows of one observable, in file order.
std::vector<ResultRow> select(const std::vector<ResultRow>& rows, const std::string& observable);

}  // namespace lmgdtc::experiment
