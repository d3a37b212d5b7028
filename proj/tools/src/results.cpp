#include "lmgdtc/experiment/results.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lmgdtc/spin.hpp"

namespace lmgdtc::experiment {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else if (c != '\r') {
      current.push_back(c);
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

double parse_double(const std::string& s) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw Error("csv: bad number '" + s + "'");
  return v;
}

long parse_integer(const std::string& s) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw Error("csv: bad integer '" + s + "'");
  return v;
}

std::optional<double> optional_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_double(s);
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv_line(const ResultRow& r) {
  std::string line;
  line += std::to_string(r.grid_index) + ',';
  line += std::to_string(r.n_spins) + ',';
  line += format_double(r.h_field) + ',';
  line += format_double(r.tau) + ',';
  line += format_double(r.epsilon) + ',';
  line += std::to_string(r.n_steps) + ',';
  line += r.observable + ',';
  if (r.coordinate) line += format_double(*r.coordinate);
  line += ',';
  line += format_double(r.value) + ',';
  if (r.error) line += format_double(*r.error);
  return line;
}

ResultRow parse_csv_line(const std::string& line) {
  const auto f = split(line);
  if (f.size() != 10) throw Error("csv: expected 10 fields, got " + std::to_string(f.size()));
  return ResultRow{static_cast<std::size_t>(parse_integer(f[0])),
                   static_cast<int>(parse_integer(f[1])),
                   parse_double(f[2]),
                   parse_double(f[3]),
                   parse_double(f[4]),
                   static_cast<int>(parse_integer(f[5])),
                   f[6],
                   optional_double(f[7]),
                   parse_double(f[8]),
                   optional_double(f[9])};
}

void write_rows(std::ostream& out, const std::vector<ResultRow>& rows) {
  for (const auto& r : rows) out << to_csv_line(r) << '\n';
}

std::vector<ResultRow> read_results(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw Error(path.string() + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw Error(path.string() + ": header does not match results schema v" + std::to_string(kCsvSchemaVersion));
  std::vector<ResultRow> rows;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      rows.push_back(parse_csv_line(line));
    } catch (const Error& e) {
      throw Error(path.string() + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return rows;
}

std::vector<ResultRow> select(const std::vector<ResultRow>& rows, const std::string& observable) {
  std::vector<ResultRow> out;
  for (const auto& r : rows)
    if (r.observable == observable) out.push_back(r);
  return out;
}

}  // namespace lmgdtc::experiment
