#pragma once

// Critical-point and exponent extraction: finite-size scaling collapse with a
// Houdayer-Hartmann master-curve quality, plus power-law and Pareto-form fits.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace lmgdtc {

struct CurvePoint {
  double x;
  double y;
  std::optional<double> y_err;
};

/// Curves keyed by system size N.
class ScalingDataset {
 public:
  ScalingDataset() = default;
  explicit ScalingDataset(std::map<int, std::vector<CurvePoint>> curves);

  void add_curve(int size, std::vector<CurvePoint> points);
  /// Throws unless there are >= 3 sizes, every curve has >= 5 points and x is strictly increasing.
  void validate() const;
  /// Keeps points with lo <= x <= hi.
  [[nodiscard]] ScalingDataset windowed(double lo, double hi) const;

  [[nodiscard]] const std::map<int, std::vector<CurvePoint>>& curves() const { return curves_; }
  [[nodiscard]] std::size_t total_points() const;

 private:
  std::map<int, std::vector<CurvePoint>> curves_;
};

/// Sign of the size prefactor in the scaling form y = N^{+-zeta/nu} f(N^{1/nu}(x - x_c)).
/// Collapsed ordinates are v = y N^{-+zeta/nu}.
///
/// Both the order parameter and the QFI are reported with PositiveExponent
/// (the plotted collapse m N^{-zeta/nu}, F N^{-zeta/nu}); NegativeExponent is
/// the m = N^{-zeta/nu} f form, which yields the same fit with zeta negated.
enum class ScalingTransform { PositiveExponent, NegativeExponent };

/// Accepts "positive", "negative", "qfi", "order-param" (both positive) and "order-param-eq" (negative).
ScalingTransform parse_transform(const std::string& name);
std::string to_string(ScalingTransform t);

struct CollapseParams {
  double x_c;
  double nu;
  double zeta;
};

struct RescaledPoint {
  int size;
  double u;
  double v;
  double dv;
};

struct CollapseResult {
  double x_c;
  double nu;
  double zeta;
  double quality;
  std::array<double, 3> uncertainties;  // x_c, nu, zeta
  bool converged;
  int terms;  // points that entered the quality sum
};

struct CollapseOptions {
  int restarts = 20;
  std::uint64_t seed = 12345;
  unsigned workers = 1;
  /// Minimum fraction of points that must have a master-curve prediction.
  double min_coverage = 0.3;
  int max_evaluations = 3000;
  /// Pins the critical point (e.g. to an independent estimate) and fits only nu and zeta.
  std::optional<double> fixed_x_c;
};

/// Per-point standard errors used by the quality. Given y_err is used as-is;
/// otherwise each curve gets a constant error from the variance of its
/// local linear-interpolation residuals.
std::map<int, std::vector<double>> estimate_errors(const ScalingDataset& data);

std::vector<RescaledPoint> rescale(const ScalingDataset& data, const CollapseParams& p, ScalingTransform transform);

/// Houdayer-Hartmann quality: mean over points of (v - Y)^2 / (dv^2 + dY^2),
/// where Y, dY come from a weighted straight-line fit through the bracketing
/// points of every other size. Returns +inf when too few points overlap.
double collapse_quality(const ScalingDataset& data, const CollapseParams& p, ScalingTransform transform,
                        double min_coverage = 0.3, int* terms = nullptr);

CollapseResult fss_collapse(const ScalingDataset& data, const CollapseParams& guess, ScalingTransform transform,
                            const CollapseOptions& options = {});

struct FitResult {
  std::vector<std::pair<std::string, double>> params;
  double residual = 0.0;
  Eigen::MatrixXd covariance;
  bool degenerate = false;

  [[nodiscard]] double param(const std::string& name) const;
  [[nodiscard]] double error(const std::string& name) const;
};

/// y = a x^b by linear least squares on (ln x, ln y). Residual is the log-space RSS.
FitResult power_law_fit(const std::vector<std::pair<double, double>>& points);

/// y = a + b / N^c, least squares. The linear parameters are eliminated and c
/// is minimized by simplex from c in {0.3, 0.5, 0.7, 1.0}.
FitResult pareto_fit(const std::vector<std::pair<double, double>>& points);

/// F = alpha n^beta.
FitResult time_exponent_fit(const std::vector<std::pair<double, double>>& points);

}  // namespace lmgdtc
