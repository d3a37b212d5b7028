#include <gtest/gtest.h>

#include <cmath>

#include "lmgdtc/critical.hpp"
#include "lmgdtc/observables.hpp"

using namespace lmgdtc;

TEST(UniformGrid, InclusiveEnds) {
  const auto g = uniform_grid(0.0, 0.3, 0.01);
  ASSERT_EQ(g.size(), 31u);
  EXPECT_NEAR(g.back(), 0.3, 1e-15);
  EXPECT_THROW(uniform_grid(0.0, 1.0, 0.0), Error);
  EXPECT_THROW(uniform_grid(1.0, 0.0, 0.1), Error);
}

TEST(LocateExtremum, RefinesBetweenGridPoints) {
  auto f = [](double x) { return -std::pow(x - 0.1234567, 2); };
  const Extremum coarse = locate_maximum(f, 0.0, 0.3, 0.01, 0.0);
  EXPECT_NEAR(coarse.location, 0.12, 1e-12);
  const Extremum fine = locate_maximum(f, 0.0, 0.3, 0.01, 1e-8);
  EXPECT_NEAR(fine.location, 0.1234567, 1e-7);
  const Extremum low = locate_minimum([](double x) { return std::pow(x - 0.2, 2); }, 0.0, 0.3, 0.01);
  EXPECT_NEAR(low.location, 0.2, 1e-5);
}

TEST(LocateExtremum, BoundaryMaximum) {
  const Extremum e = locate_maximum([](double x) { return x; }, 0.0, 1.0, 0.1);
  EXPECT_NEAR(e.location, 1.0, 1e-5);
}

TEST(OrderParameterDrop, Interpolates) {
  std::vector<std::pair<double, double>> c{{0.0, -0.5}, {0.1, -0.4}, {0.2, -0.1}, {0.3, 0.0}};
  // Half of 0.5 is crossed between 0.1 (0.4) and 0.2 (0.1).
  EXPECT_NEAR(order_parameter_drop(c), 0.15, 1e-12);
  EXPECT_NEAR(order_parameter_drop({{0.0, 0.01}, {0.1, 0.0}}), 0.0, 0.0);
  EXPECT_NEAR(order_parameter_drop({{0.0, 0.5}, {0.1, 0.45}}), 0.1, 0.0);
}

TEST(MagnetizationAt, MatchesSeriesEndpoint) {
  const FloquetPropagator prop(SpinSystem(50), {}, 0.6);
  double last = 0.0;
  prop.run(0.1, 17, [&](int step, const Eigen::VectorXcd& psi) {
    if (step == 17) last = magnetization(psi, prop.system());
  });
  EXPECT_NEAR(magnetization_at(prop, 0.1, 17), last, 1e-15);
}

TEST(TaiprMinimum, InsideWindow) {
  const FloquetPropagator prop(SpinSystem(100), {}, 0.6);
  const Extremum e = taipr_minimum(prop, 100, 0.10, 0.20, 0.01);
  EXPECT_GE(e.location, 0.10);
  EXPECT_LE(e.location, 0.20);
  EXPECT_GT(e.value, 0.0);
  EXPECT_LT(e.value, taipr(prop, 0.0 + 0.01, 100));
}
