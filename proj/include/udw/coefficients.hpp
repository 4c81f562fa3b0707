#pragma once

// GKSL coefficients for a two-level detector moving at constant velocity
// through a thermal massless scalar field, for the monopole (UDW) and the
// proper-time-derivative couplings. Natural units hbar = c = k_B = 1.

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "udw/errors.hpp"
#include "udw/specfun.hpp"

namespace udw {

enum class Coupling { udw, derivative };

inline const char* to_string(Coupling c) { return c == Coupling::udw ? "udw" : "td"; }

/// Gap omega, coupling strength lambda, speed v and coupling kind of the
/// detector on the worldline x(tau) = (gamma tau, gamma v tau, 0, 0).
class DetectorParams {
 public:
  static constexpr double default_v_max = 0.99;

  DetectorParams(double omega, double lambda, double velocity, Coupling coupling,
                 double v_max = default_v_max)
      : omega_(omega), lambda_(lambda), velocity_(velocity), coupling_(coupling) {
    if (!(omega > 0.0) || !std::isfinite(omega)) throw InvariantError("DetectorParams: omega must be > 0");
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvariantError("DetectorParams: lambda must be >= 0");
    if (!(v_max >= 0.0 && v_max < 1.0)) throw InvariantError("DetectorParams: v_max must lie in [0, 1)");
    if (!(velocity >= 0.0 && velocity <= v_max)) {
      throw InvariantError("DetectorParams: velocity " + std::to_string(velocity) + " outside [0, " +
                           std::to_string(v_max) + "]");
    }
  }

  double omega() const noexcept { return omega_; }
  double lambda() const noexcept { return lambda_; }
  double velocity() const noexcept { return velocity_; }
  Coupling coupling() const noexcept { return coupling_; }
  /// Number of proper-time derivatives on the field: 0 for UDW, 1 for derivative.
  int coupling_order() const noexcept { return coupling_ == Coupling::udw ? 0 : 1; }
  double lorentz_factor() const { return 1.0 / std::sqrt((1.0 - velocity_) * (1.0 + velocity_)); }
  double rapidity() const { return std::atanh(velocity_); }

  DetectorParams with_coupling(Coupling c) const {
    DetectorParams copy = *this;
    copy.coupling_ = c;
    return copy;
  }

 private:
  double omega_;
  double lambda_;
  double velocity_;
  Coupling coupling_;
};

/// Thermal state of the field. beta = +inf is the vacuum.
class BathParams {
 public:
  explicit BathParams(double beta) : beta_(beta) {
    if (!(beta > 0.0)) throw InvariantError("BathParams: beta must be > 0");
  }
  static BathParams zero_temperature() { return BathParams{std::numeric_limits<double>::infinity()}; }

  double beta() const noexcept { return beta_; }
  double temperature() const noexcept { return 1.0 / beta_; }

 private:
  double beta_;
};

/// Gamma, N and the combinations A = Gamma (2N + 1), B = -Gamma entering
/// the Bloch equations; omega_eff = omega + delta_omega.
class LindbladCoefficients {
 public:
  LindbladCoefficients(double gamma, double n, double omega, double delta_omega = 0.0)
      : gamma_(gamma), n_(n), delta_omega_(delta_omega), omega_eff_(omega + delta_omega) {
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw InvariantError("LindbladCoefficients: gamma must be >= 0");
    if (!(n >= 0.0) || !std::isfinite(n)) throw InvariantError("LindbladCoefficients: N must be >= 0");
    if (!std::isfinite(omega_eff_)) throw InvariantError("LindbladCoefficients: frequency must be finite");
  }

  double gamma() const noexcept { return gamma_; }
  double n() const noexcept { return n_; }
  double a() const noexcept { return gamma_ * (2.0 * n_ + 1.0); }
  double b() const noexcept { return -gamma_; }
  double omega_eff() const noexcept { return omega_eff_; }
  double delta_omega() const noexcept { return delta_omega_; }
  /// sqrt(A^2 - B^2) = 2 Gamma sqrt(N (N + 1)), without the cancellation.
  double sqrt_a2_minus_b2() const { return 2.0 * gamma_ * std::sqrt(n_ * (n_ + 1.0)); }

 private:
  double gamma_;
  double n_;
  double delta_omega_;
  double omega_eff_;
};

/// Threshold below which N is taken from its Taylor expansion in v.
inline constexpr double small_velocity_threshold = 1e-4;

/// Planck occupation 1/(e^x - 1); 0 for x = inf.
inline double planck(double x) {
  if (std::isinf(x)) return 0.0;
  return 1.0 / std::expm1(x);
}

struct DopplerFactors {
  double blue;  ///< sqrt((1+v)/(1-v))
  double red;   ///< sqrt((1-v)/(1+v))
};

inline DopplerFactors doppler_factors(double v) {
  const double blue = std::sqrt((1.0 + v) / (1.0 - v));
  return {blue, 1.0 / blue};
}

inline double gamma_udw(const DetectorParams& d) {
  if (d.coupling() != Coupling::udw) throw std::invalid_argument("gamma_udw: detector is not UDW-coupled");
  return d.lambda() * d.lambda() * d.omega() / (2.0 * std::numbers::pi);
}

/// Uses cosh(2 artanh v) = (1 + v^2)/(1 - v^2).
inline double gamma_td(const DetectorParams& d) {
  if (d.coupling() != Coupling::derivative) {
    throw std::invalid_argument("gamma_td: detector is not derivative-coupled");
  }
  const double v = d.velocity();
  const double w = d.omega();
  const double cosh2 = (1.0 + v * v) / ((1.0 - v) * (1.0 + v));
  return d.lambda() * d.lambda() * w * w * w / (6.0 * std::numbers::pi) * (1.0 + 2.0 * cosh2);
}

/// Normalisation used for time axes: lambda^2 omega / 2pi (UDW) or
/// lambda^2 omega^3 / 6pi (derivative).
inline double gamma0(const DetectorParams& d) {
  const double l2 = d.lambda() * d.lambda();
  const double w = d.omega();
  return d.coupling() == Coupling::udw ? l2 * w / (2.0 * std::numbers::pi)
                                       : l2 * w * w * w / (6.0 * std::numbers::pi);
}

namespace detail {

inline double beta_omega(const DetectorParams& d, const BathParams& b) { return b.beta() * d.omega(); }

// Planck occupation n(a) and its first two derivatives.
struct PlanckJet {
  double n, d1, d2;
};

inline PlanckJet planck_jet(double a) {
  const double n = planck(a);
  return {n, -n * (n + 1.0), n * (n + 1.0) * (2.0 * n + 1.0)};
}

}  // namespace detail

/// Mode number seen by the UDW detector:
///   N = sqrt(1-v^2)/(2 v bw) ln[(1 - e^{-bw D+}) / (1 - e^{-bw D-})],
/// D+- the blue/red Doppler factors. The v -> 0 limit is the Planck value.
inline double n_udw(const DetectorParams& d, const BathParams& b) {
  const double a = detail::beta_omega(d, b);
  if (std::isinf(a)) return 0.0;
  const double v = d.velocity();
  if (v < small_velocity_threshold) {
    // N = n + v^2/6 (3 a n' + a^2 n'') + O(v^4).
    const auto j = detail::planck_jet(a);
    return j.n + v * v / 6.0 * (3.0 * a * j.d1 + a * a * j.d2);
  }
  const auto f = doppler_factors(v);
  const double gamma_inv = std::sqrt((1.0 - v) * (1.0 + v));
  const double log_ratio = detail::log_one_minus_exp(-a * f.blue) - detail::log_one_minus_exp(-a * f.red);
  return gamma_inv / (2.0 * v * a) * log_ratio;
}

/// Mode number seen by the derivative-coupled detector:
///   N = 3 (1-v^2)^{3/2} / (2 v bw^3 (3 + v^2)) [F(bw D-) - F(bw D+)].
inline double n_td(const DetectorParams& d, const BathParams& b) {
  const double a = detail::beta_omega(d, b);
  if (std::isinf(a)) return 0.0;
  const double v = d.velocity();
  if (v < small_velocity_threshold) {
    // With G(eta) = F(a e^eta) and phi = F' = -x^2 n(x):
    //   N = n - v^2/a^3 (G'''(0)/6 - 3/2 G'(0)) + O(v^4).
    const auto j = detail::planck_jet(a);
    const double phi = -a * a * j.n;
    const double phi1 = -2.0 * a * j.n - a * a * j.d1;
    const double phi2 = -2.0 * j.n - 4.0 * a * j.d1 - a * a * j.d2;
    const double g1 = a * phi;
    const double g3 = a * phi + 3.0 * a * a * phi1 + a * a * a * phi2;
    return j.n - v * v / (a * a * a) * (g3 / 6.0 - 1.5 * g1);
  }
  const auto f = doppler_factors(v);
  const double one_minus_v2 = (1.0 - v) * (1.0 + v);
  const double prefactor = 3.0 * one_minus_v2 * std::sqrt(one_minus_v2) / (2.0 * v * a * a * a * (3.0 + v * v));
  return prefactor * (big_f(a * f.red) - big_f(a * f.blue));
}

/// High-temperature (bw << 1) form sqrt(1-v^2)/(v bw) ln sqrt((1+v)/(1-v)),
/// i.e. artanh(v) / (bw sinh(artanh v)). Tends to 1/bw as v -> 0.
inline double n_udw_high_temp(const DetectorParams& d, const BathParams& b) {
  const double a = detail::beta_omega(d, b);
  const double v = d.velocity();
  if (v == 0.0) return 1.0 / a;
  const double eta = std::atanh(v);
  return eta / (a * std::sinh(eta));
}

/// Low-temperature (bw >> 1) leading term of n_udw,
///   sqrt(1-v^2)/(2 v bw) exp(-bw sqrt((1-v)/(1+v))).
/// The red-shifted exponential dominates the logarithm in n_udw. (The
/// commonly quoted form with a growing exponential and no factor 1/2 does
/// not vanish as bw -> inf and is not used.)
inline double n_udw_low_temp(const DetectorParams& d, const BathParams& b) {
  const double a = detail::beta_omega(d, b);
  const double v = d.velocity();
  if (!(v > 0.0)) throw std::domain_error("n_udw_low_temp: requires v > 0");
  if (std::isinf(a)) return 0.0;
  const double gamma_inv = std::sqrt((1.0 - v) * (1.0 + v));
  return gamma_inv / (2.0 * v * a) * std::exp(-a * doppler_factors(v).red);
}

struct TemperatureWindow {
  double t_min;
  double t_max;
};

/// Range T(1-v)/(1+v) <= T' <= T(1+v)/(1-v) of Doppler-shifted temperatures.
inline TemperatureWindow doppler_window(const BathParams& b, double v) {
  if (!(v >= 0.0 && v < 1.0)) throw std::domain_error("doppler_window: v must lie in [0, 1)");
  const double t = b.temperature();
  const double ratio = (1.0 + v) / (1.0 - v);
  return {t / ratio, t * ratio};
}

inline LindbladCoefficients lindblad_coefficients(const DetectorParams& d, const BathParams& b,
                                                  double delta_omega = 0.0) {
  if (!std::isfinite(delta_omega)) throw InvariantError("lindblad_coefficients: delta_omega must be finite");
  if (d.coupling() == Coupling::udw) {
    return LindbladCoefficients{gamma_udw(d), n_udw(d, b), d.omega(), delta_omega};
  }
  return LindbladCoefficients{gamma_td(d), n_td(d, b), d.omega(), delta_omega};
}

}  // namespace udw
