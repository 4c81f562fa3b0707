#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "random_states.hpp"
#include "udw/dynamics.hpp"

using namespace udw;
using udw::testing::max_abs_diff;

TEST(DensityMatrix4, CheckedFactoryRejectsNonStates) {
  Matrix4c m = bell_state().matrix();
  EXPECT_NO_THROW(DensityMatrix4::checked(m));
  Matrix4c nonherm = m;
  nonherm(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix4::checked(nonherm), InvariantError);
  EXPECT_THROW(DensityMatrix4::checked(2.0 * m), InvariantError);
  Matrix4c negative = Matrix4c::Zero();
  negative(0, 0) = 1.2;
  negative(1, 1) = -0.2;
  EXPECT_THROW(DensityMatrix4::checked(negative), InvariantError);
  EXPECT_NEAR(bell_state().purity(), 1.0, 1e-15);
}

TEST(BlochTensor, RoundTripAndNormalisation) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 50; ++k) {
    const auto rho = udw::testing::random_density(rng);
    const auto u = bloch_from_density(rho);
    EXPECT_NEAR(u(0, 0), 0.25, 1e-15);
    EXPECT_LT(max_abs_diff(density_from_bloch(u).matrix(), rho.matrix()), 1e-15);
  }
  Eigen::Matrix4d bad = Eigen::Matrix4d::Zero();
  EXPECT_THROW(BlochTensor{bad}, InvariantError);
  EXPECT_LT((bloch_from_density(bell_state()).matrix() - bell_bloch().matrix()).cwiseAbs().maxCoeff(), 1e-16);
}

TEST(Pauli, Algebra) {
  const std::complex<double> i{0.0, 1.0};
  EXPECT_LT((pauli(1) * pauli(2) - i * pauli(3)).cwiseAbs().maxCoeff(), 1e-16);
  EXPECT_THROW(pauli(4), std::out_of_range);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          const double tr = (pauli_product(a, b) * pauli_product(c, d)).trace().real();
          EXPECT_DOUBLE_EQ(tr, (a == c && b == d) ? 4.0 : 0.0);
        }
}

TEST(Evolution, BlochEquationsFromGenerator) {
  // du_3j/dtau = -A u_3j + B u_0j and the transverse rotation, read off
  // the generator applied to a random state.
  std::mt19937_64 rng(11);
  for (int k = 0; k < 20; ++k) {
    const auto c = udw::testing::random_coefficients(rng);
    const auto rho = udw::testing::random_density(rng);
    const auto u = bloch_from_density(rho).matrix();
    const Matrix4c drho = gksl_generator(rho.matrix(), c);
    for (int j = 0; j < 4; ++j) {
      auto du = [&](int i) { return (drho * pauli_product(i, j)).trace().real() / 4.0; };
      EXPECT_NEAR(du(0), 0.0, 1e-14);
      EXPECT_NEAR(du(3), -c.a() * u(3, j) + c.b() * u(0, j), 1e-13);
      EXPECT_NEAR(du(1), -0.5 * c.a() * u(1, j) - c.omega_eff() * u(2, j), 1e-13);
      EXPECT_NEAR(du(2), -0.5 * c.a() * u(2, j) + c.omega_eff() * u(1, j), 1e-13);
    }
  }
}

TEST(Evolution, SemigroupProperty) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    const auto c = udw::testing::random_coefficients(rng);
    const auto rho = udw::testing::random_density(rng);
    const double t1 = 0.7 / c.gamma();
    const double t2 = 1.9 / c.gamma();
    const auto direct = evolve_closed_form(rho, c, t1 + t2);
    const auto composed = evolve_closed_form(evolve_closed_form(rho, c, t1), c, t2);
    EXPECT_LT(max_abs_diff(direct.matrix(), composed.matrix()), 1e-13);
  }
}

TEST(Evolution, NumericMatchesClosedForm) {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 20; ++k) {
    const auto c = udw::testing::random_coefficients(rng);
    const auto rho = udw::testing::random_density(rng);
    for (double g_tau : {0.0, 0.5, 2.0, 10.0}) {
      const double tau = g_tau / c.gamma();
      const auto numeric = evolve_numeric(rho, c, tau);
      const auto exact = evolve_closed_form(rho, c, tau);
      EXPECT_LT(max_abs_diff(numeric.state.matrix(), exact.matrix()), 1e-6) << "set " << k << " tau " << tau;
      EXPECT_FALSE(numeric.positivity_warning);
    }
  }
}

TEST(Evolution, RejectsOversizedStep) {
  const LindbladCoefficients c{1.0, 1.0, 1.0};
  EXPECT_THROW(evolve_numeric(bell_state(), c, 1.0, 0.1), std::invalid_argument);
  EXPECT_NO_THROW(evolve_numeric(bell_state(), c, 1.0, 0.01 / c.a()));
  EXPECT_THROW(evolve_closed_form(bell_state(), c, -1.0), std::invalid_argument);
  EXPECT_EQ(evolve_numeric(bell_state(), c, 0.0).steps, 0);
}

TEST(Evolution, CompletelyPositiveAndTracePreserving) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 20; ++k) {
    const auto c = udw::testing::random_coefficients(rng);
    const auto rho = udw::testing::random_density(rng);
    for (double g_tau : {0.01, 0.3, 1.0, 4.0, 30.0}) {
      const double tau = g_tau / c.gamma();
      // Bell-state input: positivity of the output is positivity of the Choi matrix.
      for (const auto& in : {rho, bell_state()}) {
        const auto out = evolve_closed_form(in, c, tau);
        EXPECT_NEAR(out.trace(), 1.0, 1e-12);
        EXPECT_LT((out.matrix() - out.matrix().adjoint()).cwiseAbs().maxCoeff(), 1e-14);
        EXPECT_GT(out.min_eigenvalue(), -1e-12);
      }
    }
  }
}

TEST(Evolution, RelaxesToThermalDetectorState) {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 10; ++k) {
    const auto c = udw::testing::random_coefficients(rng);
    const auto rho = udw::testing::random_density(rng);
    const auto late = evolve_closed_form(rho, c, 80.0 / c.a());
    const Matrix2c d = detector_marginal(late);
    EXPECT_LT((d - detector_steady_state(c)).cwiseAbs().maxCoeff(), 1e-12);
    // Steady state is a fixed point of the generator.
    const Matrix4c fixed = kron(detector_steady_state(c), auxiliary_marginal(rho));
    EXPECT_LT(gksl_generator(fixed, c).cwiseAbs().maxCoeff(), 1e-14);
    // Q is untouched.
    EXPECT_LT((auxiliary_marginal(late) - auxiliary_marginal(rho)).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Evolution, UnitaryWhenUncoupled) {
  const LindbladCoefficients c{0.0, 0.7, 1.3, 0.1};
  std::mt19937_64 rng(1);
  const auto rho = udw::testing::random_density(rng);
  const std::complex<double> i{0.0, 1.0};
  for (double tau : {0.3, 2.0, 17.0}) {
    const Matrix2c u2 = (-i * 0.5 * c.omega_eff() * tau * pauli(3)).exp();
    const Matrix4c u = kron(u2, Matrix2c::Identity());
    const Matrix4c expected = u * rho.matrix() * u.adjoint();
    EXPECT_LT(max_abs_diff(evolve_closed_form(rho, c, tau).matrix(), expected), 1e-14);
    EXPECT_NEAR(evolve_closed_form(rho, c, tau).purity(), rho.purity(), 1e-14);
  }
}

TEST(SharedState, MatchesEvolvedBell) {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 20; ++k) {
    const auto c = udw::testing::random_coefficients(rng);
    for (double g_tau : {0.0, 0.2, 1.0, 5.0}) {
      const double tau = g_tau / c.gamma();
      const auto s = shared_state(c, tau);
      EXPECT_LT(max_abs_diff(s.matrix(), evolve_closed_form(bell_state(), c, tau).matrix()), 1e-14);
      const std::complex<double> rho14 =
          0.5 * std::exp(-0.5 * c.a() * tau) * std::exp(std::complex<double>{0.0, -c.omega_eff() * tau});
      EXPECT_LT(std::abs(s(0, 3) - rho14), 1e-15);
      EXPECT_LT((auxiliary_marginal(s) - 0.5 * Matrix2c::Identity()).cwiseAbs().maxCoeff(), 1e-15);
    }
  }
  EXPECT_LT(max_abs_diff(shared_state(LindbladCoefficients{1.0, 1.0, 1.0}, 0.0).matrix(), bell_state().matrix()),
            1e-16);
}
