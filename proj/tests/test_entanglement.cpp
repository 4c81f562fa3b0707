#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "random_states.hpp"
#include "udw/entanglement.hpp"

using namespace udw;

namespace {

double death_time_scaled(Coupling coupling, double beta_omega, double v) {
  const DetectorParams d{1.0, 0.1, v, coupling};
  return sudden_death_time(lindblad_coefficients(d, BathParams{beta_omega})) * gamma0(d);
}

}  // namespace

TEST(Concurrence, KnownStates) {
  EXPECT_NEAR(concurrence_general(bell_state()), 1.0, 1e-12);
  const Matrix4c mixed = Matrix4c::Identity() / 4.0;
  EXPECT_NEAR(concurrence_general(DensityMatrix4::checked(mixed)), 0.0, 1e-15);
  Matrix4c product = Matrix4c::Zero();
  product(1, 1) = 1.0;
  EXPECT_NEAR(concurrence_general(DensityMatrix4::checked(product)), 0.0, 1e-15);
  // Werner state p |Phi+><Phi+| + (1 - p) I/4 has C = max(0, (3p - 1)/2).
  for (double p : {0.2, 1.0 / 3.0, 0.5, 0.9}) {
    const Matrix4c w = p * bell_state().matrix() + (1.0 - p) * mixed;
    const double expected = std::max(0.0, (3.0 * p - 1.0) / 2.0);
    EXPECT_NEAR(concurrence_general(DensityMatrix4::checked(w)), expected, 1e-12) << "p=" << p;
    EXPECT_NEAR(concurrence_xstate(XState::from_density(DensityMatrix4::checked(w))), expected, 1e-15);
  }
}

TEST(Concurrence, XStateShortcutAgreesWithWootters) {
  std::mt19937_64 rng(42);
  int entangled = 0;
  for (int k = 0; k < 1000; ++k) {
    const XState x = udw::testing::random_xstate(rng);
    const auto rho = DensityMatrix4::checked(x.to_matrix());
    const double cx = concurrence_xstate(x);
    EXPECT_NEAR(concurrence_general(rho), cx, 1e-10) << "sample " << k;
    if (cx > 0.0) ++entangled;
  }
  EXPECT_GT(entangled, 50);
}

TEST(Concurrence, InvariantUnderLocalUnitaries) {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 200; ++k) {
    // Mix with the Bell state so that a good share of samples is entangled.
    const double p = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const Matrix4c m = p * bell_state().matrix() + (1.0 - p) * udw::testing::random_density(rng).matrix();
    const auto rho = DensityMatrix4::checked(m);
    const Matrix4c u = kron(udw::testing::random_su2(rng), udw::testing::random_su2(rng));
    const auto rotated = DensityMatrix4::checked(u * m * u.adjoint());
    EXPECT_NEAR(concurrence_general(rotated), concurrence_general(rho), 1e-10);
  }
}

TEST(Concurrence, XStateFactoryRejectsGeneralStates) {
  std::mt19937_64 rng(6);
  EXPECT_THROW(XState::from_density(udw::testing::random_density(rng)), InvariantError);
  EXPECT_THROW((XState{0.5, 0.5, 0.5, -0.5, 0.0, 0.0}), InvariantError);
}

TEST(Concurrence, ConsistentAlongSharedTrajectory) {
  std::mt19937_64 rng(77);
  for (int k = 0; k < 20; ++k) {
    const auto c = udw::testing::random_coefficients(rng);
    for (double g_tau : {0.0, 0.05, 0.2, 0.5, 1.0, 3.0}) {
      const double tau = g_tau / c.gamma();
      const auto s = shared_state(c, tau);
      const double closed = concurrence_closed_form(c, tau);
      EXPECT_NEAR(concurrence_xstate(XState::from_density(s)), closed, 1e-12);
      EXPECT_NEAR(concurrence_general(s), closed, 1e-10);
      const auto numeric = evolve_numeric(bell_state(), c, tau);
      EXPECT_NEAR(concurrence_general(numeric.state), closed, 1e-6);
    }
  }
}

TEST(Concurrence, DecaysMonotonically) {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 20; ++k) {
    const auto c = udw::testing::random_coefficients(rng);
    double previous = 1.0;
    for (int i = 0; i <= 400; ++i) {
      const double value = concurrence_closed_form(c, i * 0.02 / c.gamma());
      EXPECT_LE(value, previous + 1e-15);
      EXPECT_GE(value, 0.0);
      previous = value;
    }
  }
  EXPECT_DOUBLE_EQ(concurrence_closed_form(LindbladCoefficients{1.0, 1.0, 1.0}, 0.0), 1.0);
}

TEST(SuddenDeath, WorkedExample) {
  // A = 2, B = -1.
  const LindbladCoefficients c{1.0, 0.5, 1.0};
  ASSERT_DOUBLE_EQ(c.a(), 2.0);
  ASSERT_DOUBLE_EQ(c.b(), -1.0);
  const double expected = -std::log((-2.0 + std::sqrt(7.0)) / std::sqrt(3.0));
  EXPECT_NEAR(sudden_death_time(c), expected, 1e-14);
  EXPECT_NEAR(sudden_death_time(c), 0.9866, 1e-4);
  EXPECT_NEAR(concurrence_closed_form(c, sudden_death_time(c)), 0.0, 1e-15);
  EXPECT_GT(concurrence_closed_form(c, sudden_death_time(c) * (1.0 - 1e-6)), 0.0);
  EXPECT_NEAR(concurrence_closed_form(c, 0.9866), 0.0, 1e-4);
  EXPECT_NEAR(sudden_death_time_numeric(c), 0.9866, 1e-4);
  EXPECT_EQ(concurrence_closed_form(c, sudden_death_time(c) * (1.0 + 1e-9)), 0.0);
}

TEST(SuddenDeath, BisectionAgreesWithClosedForm) {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 50; ++k) {
    auto c = udw::testing::random_coefficients(rng);
    if (c.n() < 1e-3) continue;
    const double closed = sudden_death_time(c);
    EXPECT_NEAR(sudden_death_time_numeric(c), closed, 1e-10 * closed);
  }
  // Tiny N pushes the death time far out but keeps it finite.
  const LindbladCoefficients cold{1.0, 1e-12, 1.0};
  EXPECT_TRUE(std::isfinite(sudden_death_time(cold)));
  EXPECT_NEAR(sudden_death_time_numeric(cold), sudden_death_time(cold), 1e-10 * sudden_death_time(cold));
}

TEST(SuddenDeath, ShrinksWithThermalNoise) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (double gamma : {0.1, 1.0, 3.0}) {
    double previous = std::numeric_limits<double>::infinity();
    for (double n : {1e-6, 1e-3, 0.1, 0.5, 1.0, 3.0, 10.0, 100.0, 1e4}) {
      const LindbladCoefficients c{gamma, n, unit(rng) + 0.1};
      const double t = sudden_death_time(c);
      EXPECT_LT(t, previous);
      EXPECT_GT(t, 0.0);
      EXPECT_NEAR(concurrence_closed_form(c, t), 0.0, 1e-10);
      EXPECT_GT(concurrence_closed_form(c, t * (1.0 - 1e-6)), 0.0);
      previous = t;
    }
    EXPECT_LT(previous * gamma, 1e-3);
  }
}

TEST(SuddenDeath, NoDeathWithoutThermalNoise) {
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_EQ(sudden_death_time(LindbladCoefficients{1.0, 0.0, 1.0}), inf);
  EXPECT_EQ(sudden_death_time(LindbladCoefficients{0.0, 2.0, 1.0}), inf);
  EXPECT_EQ(sudden_death_time_numeric(LindbladCoefficients{1.0, 0.0, 1.0}), inf);
  for (double tau : {0.0, 1.0, 50.0}) {
    EXPECT_DOUBLE_EQ(concurrence_closed_form(LindbladCoefficients{0.0, 2.0, 1.0}, tau), 1.0);
    EXPECT_NEAR(concurrence_closed_form(LindbladCoefficients{1.0, 0.0, 1.0}, tau), std::exp(-0.5 * tau), 1e-15);
  }
  const DetectorParams d{1.0, 0.1, 0.5, Coupling::udw};
  EXPECT_EQ(sudden_death_time(lindblad_coefficients(d, BathParams::zero_temperature())), inf);
}

TEST(SuddenDeath, VelocityOrderingUdw) {
  // Faster detectors keep their entanglement longer in a hot bath.
  for (double bw : {0.5, 1.0}) {
    const double t0 = death_time_scaled(Coupling::udw, bw, 0.0);
    const double t5 = death_time_scaled(Coupling::udw, bw, 0.5);
    const double t9 = death_time_scaled(Coupling::udw, bw, 0.9);
    EXPECT_LT(t0, t5) << "bw=" << bw;
    EXPECT_LT(t5, t9) << "bw=" << bw;
  }
  EXPECT_NEAR(death_time_scaled(Coupling::udw, 0.5, 0.0), 0.4425, 5e-4);
}

TEST(SuddenDeath, VelocityOrderingDerivative) {
  for (double bw : {0.5, 1.0, 5.0}) {
    const double t0 = death_time_scaled(Coupling::derivative, bw, 0.0);
    const double t5 = death_time_scaled(Coupling::derivative, bw, 0.5);
    const double t9 = death_time_scaled(Coupling::derivative, bw, 0.9);
    EXPECT_GT(t0, t5) << "bw=" << bw;
    EXPECT_GT(t5, t9) << "bw=" << bw;
  }
}
