#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "lmgdtc/oracle.hpp"

using namespace lmgdtc;

TEST(Oracle, SingleQubitOperators) {
  const auto z = oracle_collective(1, Axis::Z).matrix();
  const auto x = oracle_collective(1, Axis::X).matrix();
  EXPECT_NEAR(z(0, 0).real(), -0.5, 1e-15);
  EXPECT_NEAR(z(1, 1).real(), 0.5, 1e-15);
  EXPECT_NEAR(x(0, 1).real(), 0.5, 1e-15);
  EXPECT_TRUE(z.isApprox(build_sz(SpinSystem(1)).matrix()));
  EXPECT_TRUE(x.isApprox(build_sx(SpinSystem(1)).matrix()));
  EXPECT_THROW(oracle_collective(kOracleMaxQubits + 1, Axis::Z), Error);
}

TEST(Oracle, TwoQubitTripletSpectrum) {
  // Restricted to the triplet, H1 must reproduce the collective 3x3 spectrum.
  const HamiltonianParams p{1.0, 0.3, 1e-5};
  const auto full = diagonalize(oracle_hamiltonian(2, p)).values;
  const auto coll = diagonalize(build_h1(SpinSystem(2), p)).values;
  for (Index k = 0; k < coll.size(); ++k) {
    const double target = coll(k);
    const double nearest = (full.array() - target).abs().minCoeff();
    EXPECT_LT(nearest, 1e-12);
  }
}

TEST(Oracle, CasimirCommutesWithHamiltonian) {
  const int n = 4;
  const auto x = oracle_collective(n, Axis::X).matrix();
  const auto y = oracle_collective(n, Axis::Y).matrix();
  const auto z = oracle_collective(n, Axis::Z).matrix();
  const Eigen::MatrixXcd s2 = x * x + y * y + z * z;
  const auto h = oracle_hamiltonian(n, {}).matrix();
  EXPECT_LE((s2 * h - h * s2).norm(), 1e-10);
}

TEST(Oracle, EmbeddingIsIsometryIntertwiningSz) {
  for (int n : {1, 3, 6}) {
    const Eigen::MatrixXd e = dicke_embedding(n);
    EXPECT_LE((e.transpose() * e - Eigen::MatrixXd::Identity(n + 1, n + 1)).norm(), 1e-12);
    const Eigen::MatrixXcd lhs = oracle_collective(n, Axis::Z).matrix() * e.cast<Complex>();
    const Eigen::MatrixXcd rhs = e.cast<Complex>() * build_sz(SpinSystem(n)).matrix();
    EXPECT_LE((lhs - rhs).norm(), 1e-12);
    const Eigen::MatrixXcd lx = oracle_collective(n, Axis::X).matrix() * e.cast<Complex>();
    const Eigen::MatrixXcd rx = e.cast<Complex>() * build_sx(SpinSystem(n)).matrix();
    EXPECT_LE((lx - rx).norm(), 1e-12);
  }
}

TEST(Oracle, FieldFreeAlternation) {
  const OracleSeries s = oracle_evolve_and_measure(4, {0.6, 0.0, {1.0, 0.0, 1e-5}}, 6);
  for (const auto& pt : s.magnetization.points()) EXPECT_NEAR(pt.value, pt.step % 2 ? 0.5 : -0.5, 1e-12);
}

TEST(Oracle, AgreesWithCollectiveDynamics) {
  for (int n : {2, 4, 6, 8}) {
    for (double eps : {0.05, 0.1, 0.2}) {
      const FloquetPropagator prop(SpinSystem(n), {}, 0.6);
      const OracleSeries ref = oracle_evolve_and_measure(n, prop.config(eps), 50);
      const auto m = magnetization_series(prop, eps, 50);
      std::vector<double> iprs;
      prop.run(eps, 50, [&](int, const Eigen::VectorXcd& psi) { iprs.push_back(ipr(psi)); });
      for (std::size_t k = 0; k <= 50; ++k) {
        EXPECT_NEAR(m.points()[k].value, ref.magnetization.points()[k].value, 1e-10) << n << " " << eps << " " << k;
        EXPECT_NEAR(iprs[k], ref.ipr.points()[k].value, 1e-10) << n << " " << eps << " " << k;
      }
      EXPECT_LT(ref.max_leakage, 1e-10);
    }
  }
}

TEST(Oracle, QfiAgreesWithCollective) {
  for (int n : {2, 4, 6}) {
    const FloquetPropagator prop(SpinSystem(n), {}, 0.6);
    const double f = qfi(prop, 0.1, 10).value;
    const double ref = oracle_qfi(n, prop.config(0.1), 10);
    EXPECT_NEAR(f, ref, 5e-3 * ref) << n;
  }
}

TEST(Oracle, GroundStateIsSymmetric) {
  const QubitState g = oracle_ground_state(6, {});
  EXPECT_NEAR(project_symmetric(g).squaredNorm(), 1.0, 1e-12);
  EXPECT_THROW(QubitState(2, Eigen::VectorXcd::Ones(4)), Error);
}
