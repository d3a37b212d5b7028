#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lmgdtc/spin.hpp"

namespace lmgdtc::experiment {

using nlohmann::json;

/// Observables a sweep can record. Scalars give one row per grid point;
/// series give one row per step (or frequency bin).
enum class Observable {
  Magnetization,        // m_z at n_steps
  MagnetizationSeries,  // m_z(n) over the series window
  Spectrum,             // |DFT| of the m_z series window
  OrderParameter,       // time-averaged even-period m_z with n_pulses = n_steps
  Qfi,                  // F_Q at n_steps
  QfiSeries,            // F_Q at every entry of qfi.steps
  Ipr,                  // IPR at n_steps
  IprSeries,            // IPR(n) over the series window
  Taipr,
  Renyi2,
  Commutator,           // C(h) for the grid point's N and h
};

std::string to_string(Observable o);
Observable parse_observable(const std::string& name);
bool is_series(Observable o);

struct GridPoint {
  std::size_t index;
  int n_spins;
  double h_field;
  double tau;
  double epsilon;
};

struct ExperimentConfig {
  std::string name = "custom";
  std::string description;

  std::vector<int> sizes;
  std::vector<double> h_values;
  std::vector<double> tau_values;
  std::vector<double> epsilons;

  double j_coupling = 1.0;
  double delta = 1e-5;
  int n_steps = 100;
  std::vector<Observable> observables;

  double qfi_stencil_step = 1e-6;
  std::vector<int> qfi_steps;
  /// First step of the time-series window; series run from here to n_steps.
  int series_from = 0;

  std::uint64_t seed = 12345;
  unsigned workers = 0;  // 0: not pinned by the config
  json analysis = json::array();

  /// Throws lmgdtc::Error with a message naming the offending field.
  void validate() const;
  /// Grid in (N, h, tau, epsilon) order, epsilon fastest.
  [[nodiscard]] std::vector<GridPoint> grid() const;
  [[nodiscard]] HamiltonianParams params(double h_field) const { return {j_coupling, h_field, delta}; }
  [[nodiscard]] bool wants(Observable o) const;

  [[nodiscard]] json to_json() const;
  static ExperimentConfig from_json(const json& j);
  /// Stable 64-bit digest of the physics-relevant fields (workers excluded).
  [[nodiscard]] std::string digest() const;
};

ExperimentConfig load_config(const std::filesystem::path& path);

/// Directory holding the shipped presets: $LMGDTC_PRESET_DIR, else the build-time default.
std::filesystem::path preset_directory();
/// Accepts a preset id ("fig2a") or a path to a JSON file.
ExperimentConfig load_preset(const std::string& id_or_path);
std::vector<std::string> list_presets();

/// Parses a list [a, b, ...] or a range {"start", "stop", "step"} / {"start", "stop", "count"}.
std::vector<double> parse_axis(const json& j, const std::string& what);

}  // namespace lmgdtc::experiment
