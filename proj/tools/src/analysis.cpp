#include "lmgdtc/experiment/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "lmgdtc/critical.hpp"
#include "lmgdtc/observables.hpp"
#include "lmgdtc/scaling.hpp"

namespace lmgdtc::experiment {

namespace {

using Curve = std::vector<std::pair<double, double>>;

bool same(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }

bool coordinate_matches(const ResultRow& r, std::optional<double> coordinate) {
  if (!coordinate) return !r.coordinate.has_value();
  return r.coordinate && same(*r.coordinate, *coordinate);
}

json points_json(const Curve& pts, const char* x, const char* y) {
  json out = json::array();
  for (const auto& [a, b] : pts) out.push_back({{x, a}, {y, b}});
  return out;
}

json fit_json(const FitResult& fit) {
  json params = json::object();
  json errors = json::object();
  for (const auto& [name, value] : fit.params) {
    params[name] = value;
    errors[name] = fit.error(name);
  }
  return {{"params", params}, {"errors", errors}, {"residual", fit.residual}, {"degenerate", fit.degenerate}};
}

std::pair<double, double> window(const json& spec, double lo, double hi) {
  if (!spec.contains("range")) return {lo, hi};
  const auto r = spec.at("range").get<std::vector<double>>();
  if (r.size() != 2 || !(r[0] < r[1])) throw Error("analysis: range must be [lo, hi] with lo < hi");
  return {r[0], r[1]};
}

std::optional<double> spec_coordinate(const json& spec) {
  if (spec.contains("step")) return spec.at("step").get<double>();
  return std::nullopt;
}

json analyze_collapse(const std::vector<ResultRow>& rows, const json& spec, const json& report, const AnalysisOptions& options) {
  const std::string observable = spec.at("observable").get<std::string>();
  const auto curves = curves_by_size(rows, observable, spec_coordinate(spec));
  const json g = spec.at("guess");
  const CollapseParams guess{g.at("x_c").get<double>(), g.at("nu").get<double>(), g.at("zeta").get<double>()};
  const ScalingTransform transform = parse_transform(spec.value("transform", "positive"));

  CollapseOptions copts;
  copts.restarts = spec.value("restarts", copts.restarts);
  copts.seed = spec.value("seed", options.seed);
  copts.workers = options.workers;
  if (spec.contains("fixed_x_c")) {
    const json& f = spec.at("fixed_x_c");
    if (f.is_number()) {
      copts.fixed_x_c = f.get<double>();
    } else {
      const std::string from = f.at("from").get<std::string>();
      if (!report.contains(from)) throw Error("analysis: fixed_x_c refers to unknown analysis '" + from + "'");
      copts.fixed_x_c = report.at(from).at("x_c").get<double>();
    }
  }
  const double center = spec.value("center", copts.fixed_x_c.value_or(guess.x_c));
  const double half = spec.value("window", 0.06);

  ScalingDataset data;
  for (const auto& [size, curve] : curves) {
    std::vector<CurvePoint> pts;
    for (const auto& [x, y] : curve)
      if (x >= center - half && x <= center + half) pts.push_back({x, y, std::nullopt});
    data.add_curve(size, std::move(pts));
  }
  const CollapseResult r = fss_collapse(data, guess, transform, copts);
  json rescaled = json::array();
  for (const auto& p : rescale(data, {r.x_c, r.nu, r.zeta}, transform))
    rescaled.push_back({{"N", p.size}, {"u", p.u}, {"v", p.v}, {"dv", p.dv}});
  return {{"x_c", r.x_c},
          {"nu", r.nu},
          {"zeta", r.zeta},
          {"zeta_over_nu", r.zeta / r.nu},
          {"uncertainties", {{"x_c", r.uncertainties[0]}, {"nu", r.uncertainties[1]}, {"zeta", r.uncertainties[2]}}},
          {"quality", r.quality},
          {"terms", r.terms},
          {"converged", r.converged},
          {"x_c_fixed", copts.fixed_x_c.has_value()},
          {"transform", to_string(transform)},
          {"window", {center - half, center + half}},
          {"points", rescaled}};
}

Curve extrema(const std::vector<ResultRow>& rows, const json& spec, bool maximum, Curve* values) {
  const auto curves = curves_by_size(rows, spec.at("observable").get<std::string>(), spec_coordinate(spec));
  Curve locations;
  for (const auto& [size, curve] : curves) {
    const auto [lo, hi] = window(spec, curve.front().first, curve.back().first);
    const auto [x, y] = curve_extremum(curve, maximum, lo, hi);
    locations.emplace_back(size, x);
    if (values) values->emplace_back(size, y);
  }
  return locations;
}

json analyze_power_law_max(const std::vector<ResultRow>& rows, const json& spec) {
  Curve values;
  const Curve locations = extrema(rows, spec, true, &values);
  json out = fit_json(power_law_fit(values));
  out["maxima"] = points_json(values, "N", "value");
  out["locations"] = points_json(locations, "N", "epsilon");
  return out;
}

json analyze_pareto(const std::vector<ResultRow>& rows, const json& spec) {
  const bool maximum = spec.value("extremum", "max") == "max";
  const Curve locations = extrema(rows, spec, maximum, nullptr);
  json out = fit_json(pareto_fit(locations));
  out["locations"] = points_json(locations, "N", "epsilon");
  return out;
}

json analyze_time_exponent(const std::vector<ResultRow>& rows, const json& spec) {
  const std::string observable = spec.value("observable", "qfi_series");
  const auto selected = select(rows, observable);
  if (selected.empty()) throw Error("analysis: no rows for '" + observable + "'");
  const int size = spec.value("N", selected.front().n_spins);
  double target = NAN;
  if (spec.at("epsilon").is_number()) {
    target = spec.at("epsilon").get<double>();
  } else if (spec.at("epsilon") == "argmax") {
    // epsilon maximizing the series at a reference step, e.g. the n = 50 QFI peak
    const double at = spec.at("at_step").get<double>();
    Curve ref;
    for (const auto& r : selected)
      if (r.n_spins == size && r.coordinate && same(*r.coordinate, at)) ref.emplace_back(r.epsilon, r.value);
    if (ref.empty()) throw Error("analysis: no samples at the reference step");
    std::sort(ref.begin(), ref.end());
    const auto [lo, hi] = window(spec, ref.front().first, ref.back().first);
    target = curve_extremum(ref, true, lo, hi).first;
  } else {
    throw Error("analysis: epsilon must be a number or \"argmax\"");
  }
  double best = std::numeric_limits<double>::infinity();
  double epsilon = target;
  for (const auto& r : selected) {
    if (r.n_spins == size && std::abs(r.epsilon - target) < best) {
      best = std::abs(r.epsilon - target);
      epsilon = r.epsilon;
    }
  }
  const auto steps = spec.value("steps", std::vector<double>{});
  Curve pts;
  for (const auto& r : selected) {
    if (r.n_spins != size || r.epsilon != epsilon || !r.coordinate) continue;
    if (steps.size() == 2 && (*r.coordinate < steps[0] || *r.coordinate > steps[1])) continue;
    pts.emplace_back(*r.coordinate, r.value);
  }
  json out = fit_json(time_exponent_fit(pts));
  out["N"] = size;
  out["epsilon"] = epsilon;
  out["points"] = points_json(pts, "n", "value");
  return out;
}

json analyze_susceptibility(const std::vector<ResultRow>& rows, const json& spec) {
  const auto curves = curves_by_size(rows, spec.value("observable", "magnetization"), spec_coordinate(spec));
  json out = json::array();
  for (const auto& [size, curve] : curves) {
    const auto [lo, hi] = window(spec, curve.front().first, curve.back().first);
    double at = NAN, peak = -1.0;
    for (std::size_t i = 2; i + 2 < curve.size(); ++i) {
      if (curve[i].first < lo || curve[i].first > hi) continue;
      const double chi = std::abs(susceptibility(curve, curve[i].first));
      if (chi > peak) {
        peak = chi;
        at = curve[i].first;
      }
    }
    out.push_back({{"N", size}, {"epsilon", at}, {"abs_chi", peak}});
  }
  return {{"peaks", out}};
}

/// Curves eps -> value keyed by the value of `axis` ("h" or "tau") at a single N.
std::map<double, Curve> curves_along(const std::vector<ResultRow>& rows, const std::string& observable, const std::string& axis) {
  std::map<double, Curve> out;
  std::set<int> sizes;
  for (const auto& r : select(rows, observable)) {
    if (r.coordinate) continue;
    sizes.insert(r.n_spins);
    const double key = axis == "h" ? r.h_field : axis == "tau" ? r.tau : throw Error("analysis: axis must be h or tau");
    out[key].emplace_back(r.epsilon, r.value);
  }
  if (sizes.size() > 1) throw Error("analysis: phase boundary needs a single N");
  if (out.empty()) throw Error("analysis: no rows for '" + observable + "'");
  for (auto& [k, c] : out) std::sort(c.begin(), c.end());
  return out;
}

json monotonicity(const Curve& pts) {
  bool inc = true, dec = true;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    inc = inc && pts[i].second > pts[i - 1].second;
    dec = dec && pts[i].second < pts[i - 1].second;
  }
  return {{"strictly_increasing", inc}, {"strictly_decreasing", dec}};
}

json analyze_phase_boundary(const std::vector<ResultRow>& rows, const json& spec) {
  const std::string axis = spec.at("axis").get<std::string>();
  const std::string observable = spec.value("observable", "order_parameter");
  const std::string method = spec.value("method", "half_drop");
  Curve boundary;
  for (const auto& [key, curve] : curves_along(rows, observable, axis)) {
    double eps_c = NAN;
    if (method == "half_drop") {
      eps_c = order_parameter_drop(curve, spec.value("ordered_threshold", 0.05));
    } else if (method == "argmin" || method == "argmax") {
      const auto [lo, hi] = window(spec, curve.front().first, curve.back().first);
      eps_c = curve_extremum(curve, method == "argmax", lo, hi).first;
    } else {
      throw Error("analysis: unknown phase-boundary method '" + method + "'");
    }
    boundary.emplace_back(key, eps_c);
  }
  json out = monotonicity(boundary);
  out["method"] = method;
  out["boundary"] = points_json(boundary, axis.c_str(), "epsilon_c");
  return out;
}

json analyze_trend(const std::vector<ResultRow>& rows, const json& spec) {
  const std::string axis = spec.at("axis").get<std::string>();
  Curve pts;
  for (const auto& r : select(rows, spec.at("observable").get<std::string>())) {
    if (r.coordinate) continue;
    pts.emplace_back(axis == "h" ? r.h_field : r.tau, r.value);
  }
  std::sort(pts.begin(), pts.end());
  json out = monotonicity(pts);
  out["points"] = points_json(pts, axis.c_str(), "value");
  return out;
}

}  // namespace

std::map<int, Curve> curves_by_size(const std::vector<ResultRow>& rows, const std::string& observable,
                                    std::optional<double> coordinate) {
  std::map<int, Curve> curves;
  std::optional<std::pair<double, double>> h_tau;
  for (const auto& r : rows) {
    if (r.observable != observable || !coordinate_matches(r, coordinate)) continue;
    if (!h_tau) h_tau = {r.h_field, r.tau};
    if (r.h_field != h_tau->first || r.tau != h_tau->second)
      throw Error("analysis: '" + observable + "' spans several (h, tau); select one");
    curves[r.n_spins].emplace_back(r.epsilon, r.value);
  }
  if (curves.empty()) throw Error("analysis: no rows for '" + observable + "'");
  for (auto& [n, c] : curves) std::sort(c.begin(), c.end());
  return curves;
}

std::pair<double, double> curve_extremum(const Curve& curve, bool maximum, double lo, double hi) {
  std::optional<std::pair<double, double>> best;
  for (const auto& p : curve) {
    if (p.first < lo || p.first > hi) continue;
    if (!best || (maximum ? p.second > best->second : p.second < best->second)) best = p;
  }
  if (!best) throw Error("analysis: no samples inside the search range");
  return *best;
}

json run_analysis(const std::vector<ResultRow>& rows, const json& specs, const AnalysisOptions& options) {
  if (!specs.is_array()) throw Error("analysis: spec must be a list");
  if (rows.empty()) throw Error("analysis: no result rows");
  json report = json::object();
  for (const json& spec : specs) {
    try {
      const std::string name = spec.at("name").get<std::string>();
      const std::string type = spec.at("type").get<std::string>();
      if (report.contains(name)) throw Error("analysis: duplicate name '" + name + "'");
      json result;
      if (type == "collapse") result = analyze_collapse(rows, spec, report, options);
      else if (type == "power_law_max") result = analyze_power_law_max(rows, spec);
      else if (type == "pareto") result = analyze_pareto(rows, spec);
      else if (type == "time_exponent") result = analyze_time_exponent(rows, spec);
      else if (type == "susceptibility") result = analyze_susceptibility(rows, spec);
      else if (type == "phase_boundary") result = analyze_phase_boundary(rows, spec);
      else if (type == "trend") result = analyze_trend(rows, spec);
      else throw Error("analysis: unknown type '" + type + "'");
      result["type"] = type;
      report[name] = std::move(result);
    } catch (const json::exception& e) {
      throw Error(std::string("analysis: malformed spec: ") + e.what());
    }
  }
  return report;
}

}  // namespace lmgdtc::experiment
