#pragma once

// Polylogarithms of order 1..3 on [0, 1], the composite F(x) that enters
// the derivative-coupling mode number, and a quadrature route to the
// Bose-Einstein integral for cross-checking.

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "udw/quadrature.hpp"

namespace udw {

inline constexpr double zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
inline constexpr double zeta3 = 1.2020569031595942853997381615114;

/// Order s of Li_s; only 1, 2 and 3 are supported.
class PolylogOrder {
 public:
  explicit PolylogOrder(int s) : s_(s) {
    if (s < 1 || s > 3) {
      throw std::domain_error("polylog order must be 1, 2 or 3, got " + std::to_string(s));
    }
  }
  int value() const noexcept { return s_; }

 private:
  int s_;
};

namespace detail {

inline constexpr int zeta_even_terms = 24;

// zeta(2j) for j = 0..zeta_even_terms-1 (index 0 unused). Computed once.
inline const std::array<double, zeta_even_terms>& zeta_even_table() {
  static const std::array<double, zeta_even_terms> table = [] {
    std::array<double, zeta_even_terms> t{};
    t[1] = zeta2;
    constexpr int cutoff = 2000;
    for (int j = 2; j < zeta_even_terms; ++j) {
      const double p = 2.0 * j;
      double sum = 0.0;
      for (int m = cutoff - 1; m >= 1; --m) {
        sum += std::pow(static_cast<double>(m), -p);
      }
      // Euler-Maclaurin tail from m = cutoff.
      const double mc = cutoff;
      sum += std::pow(mc, 1.0 - p) / (p - 1.0) + 0.5 * std::pow(mc, -p) +
             p * std::pow(mc, -p - 1.0) / 12.0;
      t[j] = sum;
    }
    return t;
  }();
  return table;
}

inline double zeta_positive(int n) {
  switch (n) {
    case 2: return zeta2;
    case 3: return zeta3;
    default: return zeta_even_table()[n / 2];
  }
}

// Direct series sum_{k>=1} z^k / k^s with Kahan compensation.
inline double polylog_series(int s, double z) {
  double sum = 0.0;
  double comp = 0.0;
  double power = 1.0;
  for (long k = 1; k < 10'000'000; ++k) {
    power *= z;
    const double kd = static_cast<double>(k);
    double term = power;
    for (int i = 0; i < s; ++i) term /= kd;
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (term < 1e-16 * sum || power == 0.0) break;
  }
  return sum;
}

// Li_n(e^mu) for n in {2, 3}, -ln 2 <= mu <= 0, via the expansion about
// mu = 0:  sum_k zeta(n-k) mu^k / k!  with the k = n-1 term replaced by
// mu^{n-1}/(n-1)! (H_{n-1} - ln(-mu)).
inline double polylog_log_expansion(int n, double mu) {
  if (mu == 0.0) return zeta_positive(n);
  const double log_term = std::log(-mu);
  double sum = 0.0;
  double mu_pow = 1.0;  // mu^k / k!
  double harmonic = 0.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) mu_pow *= mu / k;
    if (k < n - 1) {
      sum += zeta_positive(n - k) * mu_pow;
    } else if (k == n - 1) {
      for (int m = 1; m <= n - 1; ++m) harmonic += 1.0 / m;
      sum += mu_pow * (harmonic - log_term);
    } else {
      sum += -0.5 * mu_pow;  // zeta(0)
    }
  }
  // zeta(1-2j) = (-1)^j 2 (2j-1)! zeta(2j) / (2 pi)^{2j}, paired with
  // mu^{n-1+2j} / (n-1+2j)!.
  const auto& zeta_even = zeta_even_table();
  const double two_pi = 2.0 * std::numbers::pi;
  const double ratio = (mu / two_pi) * (mu / two_pi);
  double scaled = std::pow(mu, n - 1);  // mu^{n-1} (mu/2pi)^{2j} on iteration j
  for (int j = 1; j < zeta_even_terms; ++j) {
    scaled *= ratio;
    double denom = 1.0;
    for (int m = 2 * j; m <= n - 1 + 2 * j; ++m) denom *= m;
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    const double term = sign * 2.0 * zeta_even[j] * scaled / denom;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

inline double log_one_minus_exp(double neg_x) {
  // ln(1 - e^{neg_x}) for neg_x < 0.
  return neg_x > -std::numbers::ln2 ? std::log(-std::expm1(neg_x)) : std::log1p(-std::exp(neg_x));
}

}  // namespace detail

/// Li_s(e^mu) for mu <= 0 (mu < 0 when s = 1). Taking the logarithm of the
/// argument avoids the cancellation in 1 - e^{-x} for small x.
inline double polylog_exp(PolylogOrder order, double mu) {
  const int s = order.value();
  if (!(mu <= 0.0) || (s == 1 && mu == 0.0)) {
    throw std::domain_error("polylog_exp: argument e^mu outside the supported domain");
  }
  if (s == 1) return -detail::log_one_minus_exp(mu);
  if (mu >= -std::numbers::ln2) return detail::polylog_log_expansion(s, mu);
  return detail::polylog_series(s, std::exp(mu));
}

/// Li_s(z) = sum_{k>=1} z^k / k^s for z in [0, 1]; z = 1 is excluded for s = 1.
inline double polylog(PolylogOrder order, double z) {
  const int s = order.value();
  if (!(z >= 0.0 && z <= 1.0) || (s == 1 && z == 1.0)) {
    throw std::domain_error("polylog: z must lie in [0, 1] (and z < 1 for order 1)");
  }
  if (z == 0.0) return 0.0;
  if (s == 1) return -std::log1p(-z);
  if (z > 0.5) return detail::polylog_log_expansion(s, std::log(z));
  return detail::polylog_series(s, z);
}

/// F(x) = 2 Li_3(e^{-x}) + 2x Li_2(e^{-x}) + x^2 Li_1(e^{-x}), x >= 0.
/// F(0) is the removable-singularity limit 2 zeta(3). F'(x) = -x^2/(e^x - 1).
inline double big_f(double x) {
  if (!(x >= 0.0)) throw std::domain_error("big_f: x must be non-negative");
  if (x == 0.0) return 2.0 * zeta3;
  if (std::isinf(x)) return 0.0;
  const double li3 = polylog_exp(PolylogOrder{3}, -x);
  const double li2 = polylog_exp(PolylogOrder{2}, -x);
  const double li1 = polylog_exp(PolylogOrder{1}, -x);
  return 2.0 * li3 + 2.0 * x * li2 + x * x * li1;
}

/// Li_{s+1}(e^x) = (1/s!) * integral_0^inf k^s / (e^{k-x} - 1) dk by adaptive
/// quadrature, s in {1, 2}, x <= 0. Independent of the series above.
inline double bose_einstein_oracle(int s, double x) {
  if (s != 1 && s != 2) throw std::domain_error("bose_einstein_oracle: s must be 1 or 2");
  if (!(x <= 0.0)) throw std::domain_error("bose_einstein_oracle: x must be <= 0");
  auto integrand = [s, x](double k) {
    if (k == 0.0) return (s == 1 && x == 0.0) ? 1.0 : 0.0;
    const double denom = std::expm1(k - x);
    return (s == 1 ? k : k * k) / denom;
  };
  quadrature::Options opt;
  opt.rel_tol = 1e-12;
  // The integrand is smooth but decays on a unit scale; split at k = 1.
  const auto head = quadrature::integrate(integrand, 0.0, 1.0, opt);
  const auto tail = quadrature::integrate(integrand, 1.0, std::numeric_limits<double>::infinity(), opt);
  const double total = head.value + tail.value;
  const double error = head.error + tail.error;
  if (error > 1e-10 * std::abs(total)) {
    throw QuadratureError("bose_einstein_oracle: accuracy 1e-10 not reached", total, error);
  }
  return s == 1 ? total : total / 2.0;
}

}  // namespace udw
