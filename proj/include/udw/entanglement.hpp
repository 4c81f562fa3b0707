#pragma once

// Concurrence of two-qubit states: Wootters' general formula, the X-state
// shortcut, and the closed form along the shared-state trajectory together
// with its sudden-death time.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "udw/coefficients.hpp"
#include "udw/dynamics.hpp"
#include "udw/errors.hpp"

namespace udw {

/// Density matrix with non-zero entries only on the diagonal and the
/// anti-diagonal (rho_14, rho_23 and conjugates), indices 1..4.
class XState {
 public:
  XState(double rho11, double rho22, double rho33, double rho44, std::complex<double> rho14,
         std::complex<double> rho23)
      : diag_{rho11, rho22, rho33, rho44}, rho14_(rho14), rho23_(rho23) {
    for (double p : diag_) {
      if (!(p >= -positivity_tol)) throw InvariantError("XState: negative population");
    }
    if (std::abs(rho11 + rho22 + rho33 + rho44 - 1.0) > trace_tol) throw InvariantError("XState: trace differs from 1");
  }

  /// Throws if any entry outside the X pattern exceeds 1e-12 in magnitude.
  static XState from_density(const DensityMatrix4& rho) {
    const Matrix4c& m = rho.matrix();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        if (i == j || i + j == 3) continue;
        if (std::abs(m(i, j)) > 1e-12) throw InvariantError("XState: state has entries outside the X pattern");
      }
    return XState{m(0, 0).real(), m(1, 1).real(), m(2, 2).real(), m(3, 3).real(), m(0, 3), m(1, 2)};
  }

  double population(int i) const { return diag_.at(i - 1); }
  std::complex<double> rho14() const noexcept { return rho14_; }
  std::complex<double> rho23() const noexcept { return rho23_; }

  Matrix4c to_matrix() const {
    Matrix4c m = Matrix4c::Zero();
    for (int i = 0; i < 4; ++i) m(i, i) = diag_[i];
    m(0, 3) = rho14_;
    m(3, 0) = std::conj(rho14_);
    m(1, 2) = rho23_;
    m(2, 1) = std::conj(rho23_);
    return m;
  }

 private:
  std::array<double, 4> diag_;
  std::complex<double> rho14_;
  std::complex<double> rho23_;
};

/// Wootters concurrence max(0, l1 - l2 - l3 - l4), l_i the square roots of
/// the eigenvalues of rho (s2 s2) rho* (s2 s2). With rho = W W^dagger the
/// l_i are the singular values of W^T (s2 s2) W, which avoids square roots
/// of rounding-level eigenvalues.
inline double concurrence_general(const DensityMatrix4& rho) {
  const Matrix4c herm = 0.5 * (rho.matrix() + rho.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(herm);
  Matrix4c w = es.eigenvectors();
  for (int k = 0; k < 4; ++k) w.col(k) *= std::sqrt(std::max(es.eigenvalues()(k), 0.0));
  const Matrix4c yy = pauli_product(2, 2);
  const Matrix4c tau = w.transpose() * yy * w;
  Eigen::JacobiSVD<Matrix4c> svd(tau);
  const Eigen::Vector4d l = svd.singularValues();  // descending
  return std::max(0.0, l(0) - l(1) - l(2) - l(3));
}

/// 2 max(0, |rho_23| - sqrt(rho_11 rho_44), |rho_14| - sqrt(rho_22 rho_33)).
inline double concurrence_xstate(const XState& x) {
  const double c1 = std::abs(x.rho23()) - std::sqrt(std::max(0.0, x.population(1) * x.population(4)));
  const double c2 = std::abs(x.rho14()) - std::sqrt(std::max(0.0, x.population(2) * x.population(3)));
  return 2.0 * std::max({0.0, c1, c2});
}

/// Concurrence of shared_state(c, tau):
///   max(0, e^{-A tau/2} - (1 - e^{-A tau}) sqrt(A^2 - B^2) / (2A)).
inline double concurrence_closed_form(const LindbladCoefficients& c, double tau) {
  if (!(tau >= 0.0)) throw std::invalid_argument("concurrence_closed_form: tau must be >= 0");
  const double a = c.a();
  if (a == 0.0) return 1.0;
  const double coherence = std::exp(-0.5 * a * tau);
  const double mixing = -std::expm1(-a * tau) * c.sqrt_a2_minus_b2() / (2.0 * a);
  return std::max(0.0, coherence - mixing);
}

/// First tau at which the shared-state concurrence reaches zero,
///   -(2/A) ln[(-A + sqrt(2A^2 - B^2)) / sqrt(A^2 - B^2)];
/// +inf when N = 0 or Gamma = 0.
inline double sudden_death_time(const LindbladCoefficients& c) {
  if (c.gamma() == 0.0 || c.n() == 0.0) return std::numeric_limits<double>::infinity();
  // y = e^{-A tau/2} solves k y^2 + y - k = 0 with k = sqrt(A^2 - B^2) / (2A).
  const double k = c.sqrt_a2_minus_b2() / (2.0 * c.a());
  const double y = 2.0 * k / (1.0 + std::sqrt(1.0 + 4.0 * k * k));
  return -2.0 / c.a() * std::log(y);
}

/// Bisection for the zero of concurrence_closed_form on [0, 100/A]; +inf
/// when it is still positive at 100/A.
inline double sudden_death_time_numeric(const LindbladCoefficients& c, double rel_tol = 1e-12) {
  if (c.a() == 0.0) return std::numeric_limits<double>::infinity();
  auto alive = [&c](double tau) { return concurrence_closed_form(c, tau) > 0.0; };
  double lo = 0.0;
  double hi = 100.0 / c.a();
  if (alive(hi)) return std::numeric_limits<double>::infinity();
  while (hi - lo > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (alive(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace udw
