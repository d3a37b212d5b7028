#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lmgdtc/floquet.hpp"
#include "lmgdtc/observables.hpp"

using namespace lmgdtc;

TEST(FloquetConfig, PhiFollowsEpsilon) {
  FloquetConfig cfg;
  cfg.epsilon = 0.25;
  EXPECT_DOUBLE_EQ(cfg.phi(), 0.75 * std::numbers::pi);
  cfg.epsilon = -0.1;
  EXPECT_THROW(cfg.validate(), Error);
  cfg.epsilon = 0.1;
  cfg.tau = -1.0;
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(FloquetOperator, ZeroPeriodIsPureKick) {
  const SpinSystem sys(6);
  const auto u = floquet_operator(sys, {0.0, 0.0, {}}).matrix();
  EXPECT_LE((u - kick_unitary(sys, std::numbers::pi).matrix()).norm(), 1e-12);
}

TEST(FloquetOperator, FullImperfectionIsDriftOnly) {
  const SpinSystem sys(6);
  const auto u = floquet_operator(sys, {0.6, 1.0, {}}).matrix();
  EXPECT_LE((u - unitary_from_hamiltonian(build_h1(sys, {}), 0.6).matrix()).norm(), 1e-12);
}

TEST(FloquetOperator, DriftActsBeforeKick) {
  const SpinSystem sys(5);
  const FloquetConfig cfg{0.6, 0.1, {}};
  const Eigen::MatrixXcd expected = kick_unitary(sys, cfg.phi()).matrix() * unitary_from_hamiltonian(build_h1(sys, cfg.params), 0.6).matrix();
  EXPECT_LE((floquet_operator(sys, cfg).matrix() - expected).norm(), 1e-12);
}

TEST(Evolve, ZeroStepsAndIdentity) {
  const SpinSystem sys(4);
  const StateVector psi = ground_state(build_h1(sys, {})).state;
  EXPECT_EQ(evolve(floquet_operator(sys, {}), psi, 0).states.size(), 1u);
  const auto traj = evolve(UnitaryOperator(Eigen::MatrixXcd::Identity(5, 5)), psi, 7);
  ASSERT_EQ(traj.n_steps(), 7);
  for (const auto& s : traj.states) EXPECT_LE((s.amplitudes() - psi.amplitudes()).norm(), 1e-15);
  EXPECT_THROW(evolve(floquet_operator(SpinSystem(3), {}), psi, 2), Error);
}

TEST(Evolve, DiagonalDynamicsAlternates) {
  // h = 0, delta = 0, eps = 0: the pi-kick flips S_z and H1 is diagonal.
  const SpinSystem sys(8);
  const StateVector psi0 = StateVector::basis_state(sys.dim(), 2);
  const auto traj = evolve(floquet_operator(sys, {0.6, 0.0, {1.0, 0.0, 0.0}}), psi0, 12);
  const double m0 = magnetization(psi0, sys);
  for (int n = 0; n <= 12; ++n) EXPECT_NEAR(magnetization(traj.states[n], sys), (n % 2 ? -1 : 1) * m0, 1e-12);
}

TEST(Propagator, MatchesDenseOperator) {
  const SpinSystem sys(40);
  const FloquetPropagator prop(sys, {}, 0.6);
  for (double eps : {0.0, 0.07, 0.2}) {
    const UnitaryOperator u = floquet_operator(sys, prop.config(eps));
    EXPECT_LE((prop.floquet_operator(eps).matrix() - u.matrix()).norm(), 1e-10);
    TrajectoryCursor cursor(u, prop.initial_state());
    prop.run(eps, 30, [&](int step, const Eigen::VectorXcd& psi) {
      while (cursor.step() < step) cursor.advance();
      EXPECT_LE((psi - cursor.amplitudes()).norm(), 1e-10) << "eps " << eps << " step " << step;
    });
  }
}

TEST(Propagator, StrideVisitsMultiples) {
  const FloquetPropagator prop(SpinSystem(10), {}, 0.6);
  std::vector<int> seen;
  prop.run(0.1, 10, [&](int step, const Eigen::VectorXcd&) { seen.push_back(step); }, 3);
  EXPECT_EQ(seen, (std::vector<int>{0, 3, 6, 9}));
}

TEST(Propagator, KickBasisRoundTrip) {
  const FloquetPropagator prop(SpinSystem(25), {}, 0.6);
  prop.run_kick_basis(0.05, 5, [&](int step, const Eigen::VectorXcd& a) {
    if (step == 0) EXPECT_LE((prop.to_dicke(a) - prop.initial_state().amplitudes()).norm(), 1e-12);
  });
}

TEST(Propagator, NormDriftOverLongRuns) {
  const FloquetPropagator prop(SpinSystem(1000), {}, 0.6);
  double worst = 0.0;
  prop.run(0.1, 400, [&](int, const Eigen::VectorXcd& psi) { worst = std::max(worst, std::abs(psi.norm() - 1.0)); });
  EXPECT_LE(worst, 1e-9);
}

TEST(Propagator, PerfectKickEvenStepsAreStable) {
  // delta = 0 and eps = 0: m_z(2n) stays at m_z(0) for h = 0.3.
  const FloquetPropagator prop(SpinSystem(1000), {1.0, 0.3, 0.0}, 0.6);
  double m0 = 0.0, worst = 0.0;
  prop.run(0.0, 400, [&](int step, const Eigen::VectorXcd& psi) {
    const double m = magnetization(psi, prop.system());
    if (step == 0) m0 = m;
    worst = std::max(worst, std::abs(m - m0));
  }, 2);
  EXPECT_LT(worst, 0.05);
}
