#pragma once

// Thermal Wightman functions of a massless scalar field in 3+1 Minkowski
// space: static two-point function, coincidence limit, the pull-back to a
// constant-velocity worldline, and its derivative-coupling counterpart.
//
// Every function is split as W = W_vac,eps + W_th. The vacuum part keeps
// the i*eps prescription explicitly. The thermal part is the mode integral
//   (1/(4 pi^2 r)) int_0^inf n_k [sin k(s+r) - sin k(s-r)] dk,
// evaluated in closed form with
//   int_0^inf sin(pk) / (e^{beta k} - 1) dk = pi/(2 beta) coth(pi p/beta) - 1/(2p),
// which follows from Im psi(1 + ix) = -1/(2x) + (pi/2) coth(pi x). Writing
// c(y) = coth(y) - 1/y the 1/p pieces cancel against each other, leaving
//   W_th(s, r) = [c(pi(s+r)/beta) - c(pi(s-r)/beta)] / (8 pi r beta),
// which is regular on the light cone. As eps -> 0 the sum reproduces
//   (1/(8 pi r beta)) [coth(pi(s+r)/beta) - coth(pi(s-r)/beta)]
// off the light cone, and -1/(4 beta^2 sinh^2(pi s/beta)) at r = 0.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "udw/coefficients.hpp"
#include "udw/errors.hpp"
#include "udw/specfun.hpp"

namespace udw {

using Complex = std::complex<double>;

/// Separation (s, r) and field state for a static two-point query.
class CorrelationQuery {
 public:
  CorrelationQuery(double s, double r, double beta, double epsilon, double velocity = 0.0)
      : s_(s), r_(r), beta_(beta), epsilon_(epsilon), velocity_(velocity) {
    if (!std::isfinite(s)) throw InvariantError("CorrelationQuery: s must be finite");
    if (!(r >= 0.0) || !std::isfinite(r)) throw InvariantError("CorrelationQuery: r must be >= 0");
    if (!(beta > 0.0)) throw InvariantError("CorrelationQuery: beta must be > 0");
    if (!(epsilon > 0.0)) throw InvariantError("CorrelationQuery: epsilon must be > 0");
    if (!(velocity >= 0.0 && velocity < 1.0)) throw InvariantError("CorrelationQuery: velocity must lie in [0, 1)");
  }

  double s() const noexcept { return s_; }
  double r() const noexcept { return r_; }
  double beta() const noexcept { return beta_; }
  double epsilon() const noexcept { return epsilon_; }
  double velocity() const noexcept { return velocity_; }

 private:
  double s_, r_, beta_, epsilon_, velocity_;
};

struct WightmanValue {
  Complex value;
  bool near_pole = false;  ///< |s +- r| < eps/10; value is the regularised one
};

struct MarkovDiagnostic {
  double tau_c;            ///< bath correlation time, beta
  double redshifted_temp;  ///< T sqrt((1-v)/(1+v)), the coldest perceived bath
  bool valid;
};

inline constexpr double default_markov_threshold = 0.1;

/// Regulator used when none is given: 1e-3 beta.
inline double default_epsilon(double beta) { return 1e-3 * beta; }

namespace detail {

// Coefficients of c(y) = coth y - 1/y = sum_{n>=1} coth_coeff(n) y^{2n-1}:
// (-1)^{n+1} 2 zeta(2n) / pi^{2n}.
inline double coth_coeff(int n) {
  const double sign = (n % 2 == 1) ? 1.0 : -1.0;
  return sign * 2.0 * zeta_even_table()[n] / std::pow(std::numbers::pi, 2 * n);
}

inline double csch2(double y) {
  const double ay = std::abs(y);
  const double e = std::exp(-2.0 * ay);
  const double denom = -std::expm1(-2.0 * ay);
  return 4.0 * e / (denom * denom);
}

/// m-th derivative (m = 0..3) of c(y) = coth y - 1/y.
inline double coth_reg(double y, int m) {
  if (std::abs(y) < 1.0) {
    double sum = 0.0;
    for (int n = 1; n < zeta_even_terms; ++n) {
      const int p = 2 * n - 1;
      if (p < m) continue;
      double falling = 1.0;
      for (int i = 0; i < m; ++i) falling *= p - i;
      const double term = coth_coeff(n) * falling * std::pow(y, p - m);
      sum += term;
      if (n > 2 && std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  const double coth = 1.0 / std::tanh(y);
  const double cs2 = csch2(y);
  switch (m) {
    case 0: return coth - 1.0 / y;
    case 1: return 1.0 / (y * y) - cs2;
    case 2: return 2.0 * cs2 * coth - 2.0 / (y * y * y);
    case 3: return -4.0 * cs2 * coth * coth - 2.0 * cs2 * cs2 + 6.0 / (y * y * y * y);
    default: throw std::invalid_argument("coth_reg: derivative order must be 0..3");
  }
}

inline constexpr std::array<double, 4> gl8_nodes = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                                    0.9602898564975363};
inline constexpr std::array<double, 4> gl8_weights = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                                      0.1012285362903763};

// Below this rapidity the Doppler difference c(e^eta x) - c(e^-eta x) is
// written as the integral over zeta in [-eta, eta] of d/dzeta c(e^zeta x)
// and evaluated with 8-point Gauss-Legendre.
inline constexpr double small_rapidity = 1e-2;

// Sum_i w_i e^{p zeta_i} c^{(m)}(e^{zeta_i} x) over the GL nodes on [-eta, eta],
// scaled by 1/eta (so it tends to 2 c^{(m)}(x) as eta -> 0).
inline double doppler_gl(double x, double eta, int power, int m) {
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (double sign : {-1.0, 1.0}) {
      const double z = sign * eta * gl8_nodes[i];
      sum += gl8_weights[i] * std::exp(power * z) * coth_reg(std::exp(z) * x, m);
    }
  }
  return sum;
}

inline double eta_over_sinh(double eta) { return eta == 0.0 ? 1.0 : eta / std::sinh(eta); }

}  // namespace detail

/// Vacuum two-point function -1/(4 pi^2 ((s - i eps)^2 - r^2)).
inline Complex vacuum_wightman(double s, double r, double eps) {
  const Complex se{s, -eps};
  return -1.0 / (4.0 * std::numbers::pi * std::numbers::pi * (se * se - r * r));
}

/// Thermal (n_k-weighted) part of the static two-point function.
inline double thermal_static(double s, double r, double beta) {
  if (std::isinf(beta)) return 0.0;
  const double x = std::numbers::pi * s / beta;
  const double delta = std::numbers::pi * r / beta;
  if (delta <= 1e-5) {
    // Central difference expanded to O(delta^2).
    return (detail::coth_reg(x, 1) + delta * delta * detail::coth_reg(x, 3) / 6.0) / (4.0 * beta * beta);
  }
  return (detail::coth_reg(x + delta, 0) - detail::coth_reg(x - delta, 0)) / (8.0 * std::numbers::pi * r * beta);
}

/// Thermal part seen along x(tau) = (gamma tau, gamma v tau, 0, 0):
///   [c(D+ x) - c(D- x)] / (8 beta^2 x sinh eta),  x = pi s / beta,
/// with D+- = e^{+-eta} the Doppler factors. Depends on s only.
inline double thermal_moving(double s, double velocity, double beta) {
  if (std::isinf(beta)) return 0.0;
  const double x = std::numbers::pi * s / beta;
  const double eta = std::atanh(velocity);
  const double b2 = beta * beta;
  if (eta < detail::small_rapidity) {
    return detail::eta_over_sinh(eta) * detail::doppler_gl(x, eta, 1, 1) / (8.0 * b2);
  }
  if (x == 0.0) return 1.0 / (12.0 * b2);
  const double diff = detail::coth_reg(std::exp(eta) * x, 0) - detail::coth_reg(std::exp(-eta) * x, 0);
  return diff / (8.0 * b2 * x * std::sinh(eta));
}

/// Second s-derivative of thermal_moving.
inline double thermal_moving_dd(double s, double velocity, double beta) {
  if (std::isinf(beta)) return 0.0;
  const double x = std::numbers::pi * s / beta;
  const double eta = std::atanh(velocity);
  const double b2 = beta * beta;
  const double chain = (std::numbers::pi / beta) * (std::numbers::pi / beta);
  if (eta < detail::small_rapidity) {
    return chain * detail::eta_over_sinh(eta) * detail::doppler_gl(x, eta, 3, 3) / (8.0 * b2);
  }
  const double blue = std::exp(eta);
  const double red = std::exp(-eta);
  const double sh = std::sinh(eta);
  double k2;  // d^2/dx^2 of [c(blue x) - c(red x)] / x
  if (std::abs(blue * x) < 0.5) {
    k2 = 0.0;
    for (int n = 2; n < detail::zeta_even_terms; ++n) {
      const int p = 2 * n - 4;
      const double term = detail::coth_coeff(n) * 2.0 * std::sinh((2 * n - 1) * eta) * (2 * n - 2) * (2 * n - 3) *
                          std::pow(x, p);
      k2 += term;
      if (n > 3 && std::abs(term) < 1e-18 * std::abs(k2)) break;
    }
  } else {
    const double p0 = detail::coth_reg(blue * x, 0) - detail::coth_reg(red * x, 0);
    const double p1 = blue * detail::coth_reg(blue * x, 1) - red * detail::coth_reg(red * x, 1);
    const double p2 = blue * blue * detail::coth_reg(blue * x, 2) - red * red * detail::coth_reg(red * x, 2);
    k2 = p2 / x - 2.0 * p1 / (x * x) + 2.0 * p0 / (x * x * x);
  }
  return chain * k2 / (8.0 * b2 * sh);
}

/// Static thermal two-point function at separation (s, r).
inline WightmanValue wightman_static(const CorrelationQuery& q) {
  const double eps = q.epsilon();
  return {vacuum_wightman(q.s(), q.r(), eps) + thermal_static(q.s(), q.r(), q.beta()),
          std::abs(q.s() + q.r()) < eps / 10.0 || std::abs(q.s() - q.r()) < eps / 10.0};
}

/// -1/(4 beta^2 sinh^2(pi s / beta)): the full static function at r = 0
/// with the regulator removed. Undefined at s = 0.
inline double wightman_coincidence(double s, double beta) {
  if (s == 0.0) throw std::domain_error("wightman_coincidence: s = 0 is a pole");
  if (!(beta > 0.0)) throw std::domain_error("wightman_coincidence: beta must be > 0");
  if (std::isinf(beta)) return -1.0 / (4.0 * std::numbers::pi * std::numbers::pi * s * s);
  return -detail::csch2(std::numbers::pi * s / beta) / (4.0 * beta * beta);
}

/// UDW Wightman function pulled back to the constant-velocity worldline.
inline WightmanValue wightman_moving(double s, const DetectorParams& d, const BathParams& b, double eps) {
  if (!(eps > 0.0)) throw std::domain_error("wightman_moving: eps must be > 0");
  return {vacuum_wightman(s, 0.0, eps) + thermal_moving(s, d.velocity(), b.beta()), std::abs(s) < eps / 10.0};
}

/// Derivative-coupling function W_TD(s) = -d^2/ds^2 W_UDW(s), differentiated
/// analytically: the vacuum part gives 3 / (2 pi^2 (s - i eps)^4).
inline WightmanValue wightman_derivative(double s, const DetectorParams& d, const BathParams& b, double eps) {
  if (!(eps > 0.0)) throw std::domain_error("wightman_derivative: eps must be > 0");
  const Complex se{s, -eps};
  const Complex se2 = se * se;
  const Complex vac = 3.0 / (2.0 * std::numbers::pi * std::numbers::pi * se2 * se2);
  return {vac - thermal_moving_dd(s, d.velocity(), b.beta()), std::abs(s) < eps / 10.0};
}

/// Correlation time and the coldest Doppler-shifted bath temperature. The
/// Markov approximation is flagged invalid when that temperature drops below
/// threshold * omega (a heuristic; memory effects take over as v -> 1).
inline MarkovDiagnostic markov_diagnostic(const DetectorParams& d, const BathParams& b,
                                          double threshold = default_markov_threshold) {
  const double red = doppler_factors(d.velocity()).red;
  const double t_red = b.temperature() * red;
  return {b.beta(), t_red, t_red >= threshold * d.omega()};
}

}  // namespace udw
