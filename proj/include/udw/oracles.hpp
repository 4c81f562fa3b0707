#pragma once

// Brute-force quadrature routes to the quantities that the library
// otherwise evaluates in closed form. Nothing here calls the closed forms;
// the test suites, the acceptance suite and the CLI's --oracle columns use
// these to cross-check them.

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "udw/coefficients.hpp"
#include "udw/quadrature.hpp"
#include "udw/specfun.hpp"

namespace udw::oracle {

namespace detail {

inline double planck_or_limit(double x) { return 1.0 / std::expm1(x); }

inline double sinc(double t) { return std::abs(t) < 1e-8 ? 1.0 - t * t / 6.0 : std::sin(t) / t; }

// int_0^60 f(u) du for a mode integrand oscillating with angular frequency
// at most `freq`; n(u) < 1e-26 beyond u = 60.
template <class F>
double mode_integral(F&& f, double freq) {
  quadrature::Options opt;
  opt.rel_tol = 1e-11;
  opt.abs_tol = 1e-13;
  opt.max_panels = 40000;
  const double period = freq > 0.0 ? 2.0 * std::numbers::pi / freq : 0.0;
  return quadrature::integrate_oscillatory(f, 0.0, 60.0, period, opt).value;
}

// J(a) = int_{lo}^{hi} w^2 cos(a w) dw.
inline double moment2_cos(double a, double lo, double hi) {
  if (std::abs(a) * hi < 2.0) {
    double sum = 0.0;
    double coeff = 1.0;  // (-1)^j a^{2j} / (2j)!
    for (int j = 0; j < 40; ++j) {
      const int p = 2 * j + 3;
      sum += coeff * (std::pow(hi, p) - std::pow(lo, p)) / p;
      coeff *= -a * a / ((2.0 * j + 1.0) * (2.0 * j + 2.0));
    }
    return sum;
  }
  auto prim = [a](double w) {
    return w * w * std::sin(a * w) / a + 2.0 * w * std::cos(a * w) / (a * a) - 2.0 * std::sin(a * w) / (a * a * a);
  };
  return prim(hi) - prim(lo);
}

}  // namespace detail

/// Thermal part of the static two-point function as the mode integral
///   (1/(4 pi^2 r)) int_0^inf n_k [sin k(s+r) - sin k(s-r)] dk
///   = (1/(4 pi^2)) int_0^inf n_k 2k cos(ks) sinc(kr) dk.
inline double thermal_static_mode_sum(double s, double r, double beta) {
  if (!(beta > 0.0)) throw std::domain_error("thermal_static_mode_sum: beta must be > 0");
  if (std::isinf(beta)) return 0.0;
  const double sigma = s / beta;
  const double rho = r / beta;
  auto f = [sigma, rho](double u) {
    return detail::planck_or_limit(u) * 2.0 * u * std::cos(u * sigma) * detail::sinc(u * rho);
  };
  const double integral = detail::mode_integral(f, std::abs(sigma) + rho);
  return integral / (4.0 * std::numbers::pi * std::numbers::pi * beta * beta);
}

/// Thermal part along the moving worldline from the rest-frame mode sum,
/// the angular integral written over the Doppler factor w in [D-, D+]:
///   (1/(4 pi^2 sinh eta)) int_0^inf k n_k int_{D-}^{D+} cos(k w s) dw dk.
inline double thermal_moving_mode_sum(double s, double v, double beta) {
  if (!(v >= 0.0 && v < 1.0)) throw std::domain_error("thermal_moving_mode_sum: v must lie in [0, 1)");
  if (!(beta > 0.0)) throw std::domain_error("thermal_moving_mode_sum: beta must be > 0");
  if (std::isinf(beta)) return 0.0;
  const double sigma = s / beta;
  const double eta = std::atanh(v);
  const double ch = std::cosh(eta);
  const double sh = std::sinh(eta);
  auto f = [sigma, ch, sh](double u) {
    const double a = u * sigma;
    return detail::planck_or_limit(u) * 2.0 * u * std::cos(a * ch) * detail::sinc(a * sh);
  };
  const double integral = detail::mode_integral(f, std::abs(sigma) * std::exp(eta));
  return integral / (4.0 * std::numbers::pi * std::numbers::pi * beta * beta);
}

/// Thermal part of W(x(tau), x(tau - s)) evaluated from the two spacetime
/// points on the worldline, without using stationarity.
inline double thermal_two_time_mode_sum(double tau, double s, double v, double beta) {
  const double gamma = 1.0 / std::sqrt((1.0 - v) * (1.0 + v));
  const double t1 = gamma * tau;
  const double x1 = gamma * v * tau;
  const double t2 = gamma * (tau - s);
  const double x2 = gamma * v * (tau - s);
  return thermal_static_mode_sum(t1 - t2, std::abs(x1 - x2), beta);
}

/// Second s-derivative of the moving thermal part, differentiated under the
/// mode integral:
///   -(1/(4 pi^2 sinh eta)) int_0^inf k^3 n_k int_{D-}^{D+} w^2 cos(k w s) dw dk.
inline double thermal_moving_dd_mode_sum(double s, double v, double beta) {
  if (!(v >= 0.0 && v < 1.0)) throw std::domain_error("thermal_moving_dd_mode_sum: v must lie in [0, 1)");
  if (!(beta > 0.0)) throw std::domain_error("thermal_moving_dd_mode_sum: beta must be > 0");
  if (std::isinf(beta)) return 0.0;
  const double sigma = s / beta;
  const double b4 = beta * beta * beta * beta;
  if (v == 0.0) {
    auto f = [sigma](double u) { return -detail::planck_or_limit(u) * 2.0 * u * u * u * std::cos(u * sigma); };
    return detail::mode_integral(f, std::abs(sigma)) / (4.0 * std::numbers::pi * std::numbers::pi * b4);
  }
  const double eta = std::atanh(v);
  const double lo = std::exp(-eta);
  const double hi = std::exp(eta);
  auto f = [sigma, lo, hi](double u) {
    return -detail::planck_or_limit(u) * u * u * u * detail::moment2_cos(u * sigma, lo, hi);
  };
  const double integral = detail::mode_integral(f, std::abs(sigma) * hi);
  return integral / (4.0 * std::numbers::pi * std::numbers::pi * b4 * std::sinh(eta));
}

/// N_UDW as the Doppler average of the Planck spectrum,
///   N = 1/(2 bw sinh eta) * integral_{bw D-}^{bw D+} dx / (e^x - 1).
inline double n_udw_doppler_average(double beta_omega, double v) {
  if (!(v > 0.0 && v < 1.0)) throw std::domain_error("n_udw_doppler_average: v must lie in (0, 1)");
  const double eta = std::atanh(v);
  const double lo = beta_omega * std::exp(-eta);
  const double hi = beta_omega * std::exp(eta);
  quadrature::Options opt;
  opt.rel_tol = 1e-13;
  const auto r = quadrature::integrate([](double x) { return detail::planck_or_limit(x); }, lo, hi, opt);
  return r.value / (2.0 * beta_omega * std::sinh(eta));
}

/// N_TD as the Doppler average of x^2 n(x),
///   N = 3 / (2 bw^3 sinh eta (1 + 2 cosh 2 eta)) * integral x^2 / (e^x - 1) dx.
inline double n_td_doppler_average(double beta_omega, double v) {
  if (!(v > 0.0 && v < 1.0)) throw std::domain_error("n_td_doppler_average: v must lie in (0, 1)");
  const double eta = std::atanh(v);
  const double lo = beta_omega * std::exp(-eta);
  const double hi = beta_omega * std::exp(eta);
  quadrature::Options opt;
  opt.rel_tol = 1e-13;
  const auto r = quadrature::integrate([](double x) { return x * x * detail::planck_or_limit(x); }, lo, hi, opt);
  const double a3 = beta_omega * beta_omega * beta_omega;
  return 3.0 * r.value / (2.0 * a3 * std::sinh(eta) * (1.0 + 2.0 * std::cosh(2.0 * eta)));
}

/// F(x) assembled from Bose-Einstein quadratures:
///   2 Li_3(e^{-x}) + 2x Li_2(e^{-x}) + x^2 Li_1(e^{-x}).
inline double big_f_quadrature(double x) {
  if (!(x > 0.0)) throw std::domain_error("big_f_quadrature: x must be > 0");
  return 2.0 * bose_einstein_oracle(2, -x) + 2.0 * x * bose_einstein_oracle(1, -x) -
         x * x * std::log(-std::expm1(-x));
}

}  // namespace udw::oracle
