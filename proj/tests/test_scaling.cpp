#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lmgdtc/optimize.hpp"
#include "lmgdtc/scaling.hpp"
#include "lmgdtc/spin.hpp"

using namespace lmgdtc;

namespace {

// y = N^{-zeta/nu} g(N^{1/nu}(x - x_c)) with a sigmoid master curve, sampled
// across both plateaus, multiplicative noise with matching error bars.
ScalingDataset synthetic(const CollapseParams& p, double noise, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  ScalingDataset data;
  for (int n : {60, 100, 200, 400, 600, 1000}) {
    std::vector<CurvePoint> pts;
    for (int i = 0; i <= 100; ++i) {
      const double x = -0.4 + 0.01 * i;
      const double u = std::pow(n, 1.0 / p.nu) * (x - p.x_c);
      const double y = std::pow(n, -p.zeta / p.nu) / (1.0 + std::exp(u));
      const std::optional<double> err = noise > 0.0 ? std::optional<double>(noise * y) : std::nullopt;
      pts.push_back({x, y * (1.0 + noise * g(rng)), err});
    }
    data.add_curve(n, std::move(pts));
  }
  return data;
}

const CollapseParams kTruth{0.13, 2.4, -0.15};

}  // namespace

TEST(NelderMead, Rosenbrock) {
  auto f = [](const std::vector<double>& x) { return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2); };
  const SimplexResult r = nelder_mead(f, {-1.2, 1.0}, {0.5, 0.5}, {20000, 1e-15, 1e-12});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.x[0], 1.0, 1e-5);
  EXPECT_NEAR(r.x[1], 1.0, 1e-5);
}

TEST(ScalingDataset, Validation) {
  ScalingDataset d;
  d.add_curve(10, {{0, 0, {}}, {1, 0, {}}, {2, 0, {}}, {3, 0, {}}, {4, 0, {}}});
  d.add_curve(20, {{0, 0, {}}, {1, 0, {}}, {2, 0, {}}, {3, 0, {}}, {4, 0, {}}});
  EXPECT_THROW(d.validate(), Error);
  d.add_curve(30, {{0, 0, {}}, {1, 0, {}}, {1, 0, {}}, {3, 0, {}}, {4, 0, {}}});
  EXPECT_THROW(d.validate(), Error);
  d.add_curve(30, {{0, 0, {}}, {1, 0, {}}, {2, 0, {}}, {3, 0, {}}, {4, 0, {}}});
  EXPECT_NO_THROW(d.validate());
  EXPECT_EQ(d.windowed(1.0, 3.0).total_points(), 9u);
}

TEST(Transform, Parsing) {
  EXPECT_EQ(parse_transform("qfi"), ScalingTransform::PositiveExponent);
  EXPECT_EQ(parse_transform("order-param-eq"), ScalingTransform::NegativeExponent);
  EXPECT_THROW(parse_transform("bogus"), Error);
}

TEST(Collapse, ExactParametersGiveLowQuality) {
  const ScalingDataset data = synthetic(kTruth, 0.0, 1);
  const double at_truth = collapse_quality(data, kTruth, ScalingTransform::NegativeExponent);
  const double off = collapse_quality(data, {0.15, 2.4, -0.15}, ScalingTransform::NegativeExponent);
  EXPECT_LT(at_truth, 1e-2 * off);
}

TEST(Collapse, RecoversSyntheticParameters) {
  const ScalingDataset data = synthetic(kTruth, 0.01, 2);
  CollapseOptions opts;
  opts.seed = 3;
  const CollapseResult r = fss_collapse(data, {0.12, 2.0, -0.1}, ScalingTransform::NegativeExponent, opts);
  EXPECT_NEAR(r.x_c, kTruth.x_c, 0.05 * kTruth.x_c);
  EXPECT_NEAR(r.nu, kTruth.nu, 0.05 * kTruth.nu);
  EXPECT_NEAR(r.zeta, kTruth.zeta, 0.05 * std::abs(kTruth.zeta));
  EXPECT_LT(r.quality, 5.0);
  for (double u : r.uncertainties) EXPECT_TRUE(std::isfinite(u));
}

TEST(Collapse, PositiveTransformNegatesZeta) {
  const ScalingDataset data = synthetic(kTruth, 0.0, 1);
  const CollapseResult r = fss_collapse(data, {0.12, 2.0, 0.1}, ScalingTransform::PositiveExponent);
  EXPECT_NEAR(r.zeta, -kTruth.zeta, 0.02);
  EXPECT_NEAR(r.x_c, kTruth.x_c, 0.002);
}

TEST(Collapse, InvariantUnderSizeRelabellingOrder) {
  const ScalingDataset data = synthetic(kTruth, 0.01, 5);
  std::map<int, std::vector<CurvePoint>> copy = data.curves();
  ScalingDataset rebuilt;
  for (auto it = copy.rbegin(); it != copy.rend(); ++it) rebuilt.add_curve(it->first, it->second);
  const CollapseParams p{0.131, 2.3, -0.14};
  EXPECT_EQ(collapse_quality(data, p, ScalingTransform::NegativeExponent),
            collapse_quality(rebuilt, p, ScalingTransform::NegativeExponent));
}

TEST(Collapse, OptimumIsLocalMinimumUnderPerturbation) {
  const ScalingDataset data = synthetic(kTruth, 0.01, 8);
  const CollapseResult r = fss_collapse(data, {0.12, 2.0, -0.1}, ScalingTransform::NegativeExponent);
  const CollapseParams best{r.x_c, r.nu, r.zeta};
  const double q0 = collapse_quality(data, best, ScalingTransform::NegativeExponent);
  std::mt19937_64 rng(10);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    const CollapseParams p{best.x_c + 1e-3 * g(rng), best.nu + 0.03 * g(rng), best.zeta + 0.01 * g(rng)};
    EXPECT_GE(collapse_quality(data, p, ScalingTransform::NegativeExponent), q0 * (1.0 - 1e-6));
  }
}

TEST(Collapse, PinnedCriticalPoint) {
  const ScalingDataset data = synthetic(kTruth, 0.01, 11);
  CollapseOptions opts;
  opts.fixed_x_c = 0.13;
  const CollapseResult r = fss_collapse(data, {0.5, 2.0, -0.1}, ScalingTransform::NegativeExponent, opts);
  EXPECT_EQ(r.x_c, 0.13);
  EXPECT_EQ(r.uncertainties[0], 0.0);
  EXPECT_NEAR(r.nu, kTruth.nu, 0.05 * kTruth.nu);
  EXPECT_NEAR(r.zeta, kTruth.zeta, 0.05 * std::abs(kTruth.zeta));
}

TEST(Collapse, DeterministicForSeed) {
  const ScalingDataset data = synthetic(kTruth, 0.01, 12);
  CollapseOptions a, b;
  a.workers = 1;
  b.workers = 3;
  const CollapseResult ra = fss_collapse(data, {0.12, 2.0, -0.1}, ScalingTransform::NegativeExponent, a);
  const CollapseResult rb = fss_collapse(data, {0.12, 2.0, -0.1}, ScalingTransform::NegativeExponent, b);
  EXPECT_EQ(ra.x_c, rb.x_c);
  EXPECT_EQ(ra.nu, rb.nu);
  EXPECT_EQ(ra.zeta, rb.zeta);
}

TEST(PowerLaw, ExactInversion) {
  std::vector<std::pair<double, double>> pts;
  for (int n = 50; n <= 1000; n += 50) pts.emplace_back(n, 3.7 * std::pow(n, 1.41));
  const FitResult f = power_law_fit(pts);
  EXPECT_NEAR(f.param("a"), 3.7, 1e-9);
  EXPECT_NEAR(f.param("b"), 1.41, 1e-12);
  EXPECT_NEAR(f.residual, 0.0, 1e-20);
  EXPECT_THROW(power_law_fit({{1, 1}, {2, -1}, {3, 1}}), Error);
  EXPECT_THROW(static_cast<void>(f.param("zz")), Error);
}

TEST(Pareto, RecoversExactParameters) {
  std::vector<std::pair<double, double>> pts;
  for (int n = 50; n <= 1000; n += 50) pts.emplace_back(n, 0.126 + 0.62 / std::pow(n, 0.43));
  const FitResult f = pareto_fit(pts);
  EXPECT_NEAR(f.param("a"), 0.126, 1e-6);
  EXPECT_NEAR(f.param("b"), 0.62, 1e-6);
  EXPECT_NEAR(f.param("c"), 0.43, 1e-6);
  EXPECT_FALSE(f.degenerate);
}

TEST(Pareto, FlatDataIsDegenerate) {
  std::vector<std::pair<double, double>> pts;
  for (int n = 100; n <= 500; n += 100) pts.emplace_back(n, 0.2);
  const FitResult f = pareto_fit(pts);
  EXPECT_TRUE(f.degenerate);
  EXPECT_DOUBLE_EQ(f.param("a"), 0.2);
}

TEST(TimeExponent, ExactAndNoisy) {
  std::vector<std::pair<double, double>> exact, noisy;
  std::mt19937_64 rng(13);
  std::normal_distribution<double> g;
  for (int n = 10; n <= 200; n += 10) {
    exact.emplace_back(n, 2.5 * std::pow(n, 1.87));
    noisy.emplace_back(n, 2.5 * std::pow(n, 1.87) * (1.0 + 0.02 * g(rng)));
  }
  EXPECT_NEAR(time_exponent_fit(exact).param("beta"), 1.87, 1e-12);
  const FitResult f = time_exponent_fit(noisy);
  EXPECT_NEAR(f.param("beta"), 1.87, 0.05);
  EXPECT_GT(f.error("beta"), 0.0);
  EXPECT_THROW(time_exponent_fit({{0.0, 1.0}, {1, 1}, {2, 2}}), Error);
}
