#include "lmgdtc/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "lmgdtc/optimize.hpp"
#include "lmgdtc/parallel.hpp"
#include "lmgdtc/spin.hpp"

namespace lmgdtc {

ScalingDataset::ScalingDataset(std::map<int, std::vector<CurvePoint>> curves) : curves_(std::move(curves)) {}

void ScalingDataset::add_curve(int size, std::vector<CurvePoint> points) { curves_[size] = std::move(points); }

void ScalingDataset::validate() const {
  if (curves_.size() < 3) throw Error("ScalingDataset: need at least 3 system sizes");
  for (const auto& [size, pts] : curves_) {
    if (size <= 0) throw Error("ScalingDataset: system sizes must be positive");
    if (pts.size() < 5) throw Error("ScalingDataset: curve N=" + std::to_string(size) + " has fewer than 5 points");
    for (std::size_t i = 1; i < pts.size(); ++i)
      if (!(pts[i].x > pts[i - 1].x)) throw Error("ScalingDataset: x must be strictly increasing (N=" + std::to_string(size) + ")");
  }
}

ScalingDataset ScalingDataset::windowed(double lo, double hi) const {
  ScalingDataset out;
  for (const auto& [size, pts] : curves_) {
    std::vector<CurvePoint> kept;
    for (const auto& p : pts)
      if (p.x >= lo && p.x <= hi) kept.push_back(p);
    out.add_curve(size, std::move(kept));
  }
  return out;
}

std::size_t ScalingDataset::total_points() const {
  std::size_t n = 0;
  for (const auto& [size, pts] : curves_) n += pts.size();
  return n;
}

ScalingTransform parse_transform(const std::string& name) {
  if (name == "positive" || name == "qfi" || name == "order-param") return ScalingTransform::PositiveExponent;
  if (name == "negative" || name == "order-param-eq") return ScalingTransform::NegativeExponent;
  throw Error("unknown scaling transform '" + name + "' (expected positive, negative, qfi, order-param or order-param-eq)");
}

std::string to_string(ScalingTransform t) { return t == ScalingTransform::PositiveExponent ? "positive" : "negative"; }

std::map<int, std::vector<double>> estimate_errors(const ScalingDataset& data) {
  std::map<int, std::vector<double>> out;
  for (const auto& [size, pts] : data.curves()) {
    std::vector<double> err(pts.size(), 0.0);
    double ss = 0.0;
    double ymax = 0.0;
    int count = 0;
    for (std::size_t k = 0; k < pts.size(); ++k) ymax = std::max(ymax, std::abs(pts[k].y));
    for (std::size_t k = 1; k + 1 < pts.size(); ++k) {
      const double t = (pts[k].x - pts[k - 1].x) / (pts[k + 1].x - pts[k - 1].x);
      const double r = pts[k].y - ((1.0 - t) * pts[k - 1].y + t * pts[k + 1].y);
      ss += r * r;
      ++count;
    }
    // Interpolation residual of iid noise has variance ~1.5 sigma^2 on a uniform grid.
    double sigma = count > 0 ? std::sqrt(ss / count / 1.5) : 0.0;
    sigma = std::max(sigma, 1e-6 * std::max(ymax, 1e-300));
    for (std::size_t k = 0; k < pts.size(); ++k) err[k] = pts[k].y_err.value_or(sigma);
    out[size] = std::move(err);
  }
  return out;
}

namespace {

double size_factor(int size, const CollapseParams& p, ScalingTransform t) {
  const double exponent = p.zeta / p.nu;
  return std::pow(static_cast<double>(size), t == ScalingTransform::NegativeExponent ? exponent : -exponent);
}

std::vector<RescaledPoint> rescale_with(const ScalingDataset& data, const std::map<int, std::vector<double>>& errors,
                                        const CollapseParams& p, ScalingTransform t) {
  std::vector<RescaledPoint> out;
  out.reserve(data.total_points());
  for (const auto& [size, pts] : data.curves()) {
    const double ufac = std::pow(static_cast<double>(size), 1.0 / p.nu);
    const double vfac = size_factor(size, p, t);
    const auto& err = errors.at(size);
    for (std::size_t k = 0; k < pts.size(); ++k)
      out.push_back({size, ufac * (pts[k].x - p.x_c), vfac * pts[k].y, vfac * err[k]});
  }
  return out;
}

double quality_of(const std::vector<RescaledPoint>& pts, double min_coverage, int* terms) {
  // Curves are contiguous runs in `pts` with increasing u.
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  for (std::size_t i = 0; i < pts.size();) {
    std::size_t j = i;
    while (j < pts.size() && pts[j].size == pts[i].size) ++j;
    runs.emplace_back(i, j);
    i = j;
  }
  double sum = 0.0;
  int count = 0;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    for (std::size_t i = runs[r].first; i < runs[r].second; ++i) {
      const double u = pts[i].u;
      double k = 0, kx = 0, ky = 0, kxx = 0, kxy = 0;
      int used = 0;
      for (std::size_t o = 0; o < runs.size(); ++o) {
        if (o == r) continue;
        const auto [b, e] = runs[o];
        if (e - b < 2 || u < pts[b].u || u > pts[e - 1].u) continue;
        const auto it = std::upper_bound(pts.begin() + static_cast<std::ptrdiff_t>(b), pts.begin() + static_cast<std::ptrdiff_t>(e), u,
                                         [](double val, const RescaledPoint& q) { return val < q.u; });
        std::size_t hi = static_cast<std::size_t>(it - pts.begin());
        if (hi >= e) hi = e - 1;
        const std::size_t lo = hi - 1;
        for (std::size_t q : {lo, hi}) {
          const double w = 1.0 / (pts[q].dv * pts[q].dv);
          k += w;
          kx += w * pts[q].u;
          ky += w * pts[q].v;
          kxx += w * pts[q].u * pts[q].u;
          kxy += w * pts[q].u * pts[q].v;
        }
        ++used;
      }
      if (used == 0) continue;
      const double det = k * kxx - kx * kx;
      if (!(det > 0.0)) continue;
      const double y_pred = (kxx * ky - kx * kxy) / det + u * (k * kxy - kx * ky) / det;
      const double dy2 = (kxx - 2.0 * u * kx + u * u * k) / det;
      const double diff = pts[i].v - y_pred;
      sum += diff * diff / (pts[i].dv * pts[i].dv + dy2);
      ++count;
    }
  }
  if (terms) *terms = count;
  if (count == 0 || static_cast<double>(count) < min_coverage * static_cast<double>(pts.size()))
    return std::numeric_limits<double>::infinity();
  return sum / count;
}

}  // namespace

std::vector<RescaledPoint> rescale(const ScalingDataset& data, const CollapseParams& p, ScalingTransform transform) {
  return rescale_with(data, estimate_errors(data), p, transform);
}

double collapse_quality(const ScalingDataset& data, const CollapseParams& p, ScalingTransform transform, double min_coverage,
                        int* terms) {
  if (!(p.nu > 0.0) || !std::isfinite(p.x_c) || !std::isfinite(p.zeta)) return std::numeric_limits<double>::infinity();
  return quality_of(rescale(data, p, transform), min_coverage, terms);
}

CollapseResult fss_collapse(const ScalingDataset& data, const CollapseParams& guess, ScalingTransform transform,
                            const CollapseOptions& options) {
  data.validate();
  if (!std::isfinite(guess.x_c) || !(guess.nu > 0.0) || !std::isfinite(guess.zeta)) throw Error("fss_collapse: guess must be finite with nu > 0");
  if (options.fixed_x_c && !std::isfinite(*options.fixed_x_c)) throw Error("fss_collapse: fixed x_c must be finite");
  const auto errors = estimate_errors(data);

  // Optimizer coordinates are the free subset of (x_c, nu, zeta).
  const bool pin = options.fixed_x_c.has_value();
  const std::size_t offset = pin ? 1 : 0;
  auto expand = [&](const std::vector<double>& x) {
    return pin ? CollapseParams{*options.fixed_x_c, x[0], x[1]} : CollapseParams{x[0], x[1], x[2]};
  };
  auto objective = [&](const std::vector<double>& x) {
    const CollapseParams p = expand(x);
    if (!(p.nu > 0.05)) return std::numeric_limits<double>::infinity();
    return quality_of(rescale_with(data, errors, p, transform), options.min_coverage, nullptr);
  };
  auto step_for = [&](const CollapseParams& p, double scale) {
    std::vector<double> step{0.5 * scale, 10.0 * scale * p.nu, 10.0 * scale * std::max(std::abs(p.zeta), 0.1)};
    return std::vector<double>(step.begin() + static_cast<std::ptrdiff_t>(offset), step.end());
  };
  auto coords = [&](const CollapseParams& p) {
    std::vector<double> x{p.x_c, p.nu, p.zeta};
    return std::vector<double>(x.begin() + static_cast<std::ptrdiff_t>(offset), x.end());
  };

  const int restarts = std::max(1, options.restarts);
  std::vector<CollapseParams> starts(static_cast<std::size_t>(restarts));
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double zeta_scale = std::max(std::abs(guess.zeta), 0.1);
  starts[0] = {pin ? *options.fixed_x_c : guess.x_c, guess.nu, guess.zeta};
  for (std::size_t r = 1; r < starts.size(); ++r) {
    const double xc = guess.x_c + 0.01 * gauss(rng);
    const double nu = guess.nu * std::exp(0.2 * gauss(rng));
    const double zeta = guess.zeta + 0.3 * zeta_scale * gauss(rng);
    starts[r] = {pin ? *options.fixed_x_c : xc, nu, zeta};
  }

  SimplexOptions sopts;
  sopts.max_evaluations = options.max_evaluations;
  sopts.f_tolerance = 1e-10;
  sopts.x_tolerance = 1e-7;
  std::vector<SimplexResult> results(starts.size());
  parallel_for(starts.size(), options.workers, [&](std::size_t r) {
    results[r] = nelder_mead(objective, coords(starts[r]), step_for(starts[r], 0.01), sopts);
  });

  std::size_t best = 0;
  bool any_converged = false;
  for (std::size_t r = 0; r < results.size(); ++r) {
    any_converged = any_converged || results[r].converged;
    if (results[r].value < results[best].value) best = r;
  }
  // Polish from the best point with a fresh, smaller simplex.
  const CollapseParams best_params = expand(results[best].x);
  SimplexResult polished = nelder_mead(objective, results[best].x, step_for(best_params, 0.002), sopts);
  const SimplexResult& final = polished.value <= results[best].value ? polished : results[best];
  const CollapseParams fitted = expand(final.x);

  CollapseResult out{fitted.x_c, fitted.nu, fitted.zeta, final.value, {NAN, NAN, NAN}, any_converged || polished.converged, 0};
  quality_of(rescale_with(data, errors, fitted, transform), options.min_coverage, &out.terms);
  if (pin) out.uncertainties[0] = 0.0;

  // Curvature of the quality at the minimum; the quality is chi^2 / terms, so
  // a unit change in chi^2 corresponds to 1/terms.
  const auto dim = static_cast<Eigen::Index>(final.x.size());
  if (std::isfinite(out.quality) && out.terms > 0) {
    const std::vector<double> x0 = final.x;
    const std::vector<double> h = step_for(fitted, 0.002);
    Eigen::MatrixXd hess(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index j = i; j < dim; ++j) {
        auto shifted = [&](double si, double sj) {
          std::vector<double> x = x0;
          x[static_cast<std::size_t>(i)] += si * h[static_cast<std::size_t>(i)];
          x[static_cast<std::size_t>(j)] += sj * h[static_cast<std::size_t>(j)];
          return objective(x);
        };
        const double hi = h[static_cast<std::size_t>(i)], hj = h[static_cast<std::size_t>(j)];
        const double value = i == j ? (shifted(1, 0) - 2.0 * out.quality + shifted(-1, 0)) / (hi * hi)
                                    : (shifted(1, 1) - shifted(1, -1) - shifted(-1, 1) + shifted(-1, -1)) / (4.0 * hi * hj);
        hess(i, j) = hess(j, i) = value;
      }
    }
    if (hess.allFinite()) {
      const Eigen::MatrixXd cov = 2.0 * hess.inverse() / out.terms;
      for (Eigen::Index i = 0; i < dim; ++i) {
        const double var = cov(i, i) > 0.0 ? cov(i, i) : (hess(i, i) > 0.0 ? 2.0 / (out.terms * hess(i, i)) : NAN);
        out.uncertainties[static_cast<std::size_t>(i) + offset] = std::sqrt(var);
      }
    }
  }
  return out;
}

double FitResult::param(const std::string& name) const {
  for (const auto& [n, v] : params)
    if (n == name) return v;
  throw Error("FitResult: no parameter named '" + name + "'");
}

double FitResult::error(const std::string& name) const {
  for (std::size_t i = 0; i < params.size(); ++i)
    if (params[i].first == name) {
      const double var = covariance(static_cast<Index>(i), static_cast<Index>(i));
      return var >= 0.0 ? std::sqrt(var) : NAN;
    }
  throw Error("FitResult: no parameter named '" + name + "'");
}

FitResult power_law_fit(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw Error("power_law_fit: need at least 3 points");
  const auto n = static_cast<Index>(points.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd rhs(n);
  for (Index i = 0; i < n; ++i) {
    const auto [x, y] = points[static_cast<std::size_t>(i)];
    if (!(x > 0.0) || !(y > 0.0)) throw Error("power_law_fit: x and y must be positive");
    design(i, 0) = 1.0;
    design(i, 1) = std::log(x);
    rhs(i) = std::log(y);
  }
  const Eigen::Matrix2d normal = design.transpose() * design;
  if (std::abs(normal.determinant()) < 1e-300) throw Error("power_law_fit: all x values are identical");
  const Eigen::Vector2d coef = normal.ldlt().solve(design.transpose() * rhs);
  const double rss = (design * coef - rhs).squaredNorm();
  const double s2 = n > 2 ? rss / static_cast<double>(n - 2) : 0.0;
  const Eigen::Matrix2d cov_log = s2 * normal.inverse();
  const double a = std::exp(coef(0));
  // Propagate ln(a) -> a.
  Eigen::Matrix2d jac = Eigen::Matrix2d::Identity();
  jac(0, 0) = a;
  FitResult out;
  out.params = {{"a", a}, {"b", coef(1)}};
  out.residual = rss;
  out.covariance = jac * cov_log * jac.transpose();
  return out;
}

namespace {

struct LinearPart {
  double a;
  double b;
  double rss;
};

LinearPart pareto_linear(const std::vector<std::pair<double, double>>& points, double c) {
  const auto n = static_cast<Index>(points.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd rhs(n);
  for (Index i = 0; i < n; ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = std::pow(points[static_cast<std::size_t>(i)].first, -c);
    rhs(i) = points[static_cast<std::size_t>(i)].second;
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);
  return {coef(0), coef(1), (design * coef - rhs).squaredNorm()};
}

}  // namespace

FitResult pareto_fit(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 4) throw Error("pareto_fit: need at least 4 points");
  double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
  for (const auto& [x, y] : points) {
    if (!(x > 0.0)) throw Error("pareto_fit: N must be positive");
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  FitResult out;
  if (ymax - ymin <= 1e-14 * std::max(std::abs(ymax), 1.0)) {
    out.params = {{"a", ymin}, {"b", 0.0}, {"c", NAN}};
    out.covariance = Eigen::MatrixXd::Constant(3, 3, NAN);
    out.degenerate = true;
    return out;
  }

  auto objective = [&](const std::vector<double>& c) {
    if (!(c[0] > 0.0) || c[0] > 20.0) return std::numeric_limits<double>::infinity();
    return pareto_linear(points, c[0]).rss;
  };
  SimplexOptions sopts;
  sopts.f_tolerance = 1e-15;
  sopts.x_tolerance = 1e-12;
  SimplexResult best{{0.5}, std::numeric_limits<double>::infinity(), 0, false};
  for (double c0 : {0.3, 0.5, 0.7, 1.0}) {
    SimplexResult r = nelder_mead(objective, {c0}, {0.1}, sopts);
    if (r.value < best.value) best = r;
  }
  const double c = best.x[0];
  const LinearPart lin = pareto_linear(points, c);
  out.params = {{"a", lin.a}, {"b", lin.b}, {"c", c}};
  out.residual = lin.rss;

  const auto n = static_cast<Index>(points.size());
  Eigen::MatrixXd jac(n, 3);
  for (Index i = 0; i < n; ++i) {
    const double x = points[static_cast<std::size_t>(i)].first;
    const double p = std::pow(x, -c);
    jac(i, 0) = 1.0;
    jac(i, 1) = p;
    jac(i, 2) = -lin.b * std::log(x) * p;
  }
  const double s2 = n > 3 ? lin.rss / static_cast<double>(n - 3) : 0.0;
  const Eigen::Matrix3d jtj = jac.transpose() * jac;
  out.covariance = s2 * jtj.completeOrthogonalDecomposition().pseudoInverse();
  out.degenerate = !best.converged && !std::isfinite(best.value);
  return out;
}

FitResult time_exponent_fit(const std::vector<std::pair<double, double>>& points) {
  for (const auto& [n, f] : points)
    if (!(n >= 1.0)) throw Error("time_exponent_fit: step counts must be >= 1");
  FitResult fit = power_law_fit(points);
  fit.params[0].first = "alpha";
  fit.params[1].first = "beta";
  return fit;
}

}  // namespace lmgdtc
