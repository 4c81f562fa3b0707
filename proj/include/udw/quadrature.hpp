#pragma once

// Globally adaptive 7/15-point Gauss-Kronrod quadrature (QUADPACK QAG
// strategy: repeatedly bisect the panel with the largest error estimate).
// Used by the brute-force oracles.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "udw/errors.hpp"

namespace udw::quadrature {

struct Options {
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  int max_panels = 5000;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  int panels = 0;
};

namespace detail {

inline constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk15(F& f, double a, double b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double kronrod = fc * kronrod_weights[7];
  double gauss = fc * gauss_weights[3];
  double abs_sum = std::abs(kronrod);
  std::array<double, 7> f1{}, f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kronrod_nodes[j];
    f1[j] = f(centre - dx);
    f2[j] = f(centre + dx);
    kronrod += kronrod_weights[j] * (f1[j] + f2[j]);
    abs_sum += kronrod_weights[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) gauss += gauss_weights[j / 2] * (f1[j] + f2[j]);
  }
  const double mean = 0.5 * kronrod;
  double asc = kronrod_weights[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) asc += kronrod_weights[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

  const double value = kronrod * half;
  const double resabs = abs_sum * std::abs(half);
  const double resasc = asc * std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(err, 50.0 * eps * resabs);
  return {a, b, value, err};
}

template <class F>
Result adapt(F& f, const std::vector<double>& breaks, const Options& opt) {
  std::priority_queue<Panel> heap;
  Result r;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const Panel p = gk15(f, breaks[i], breaks[i + 1]);
    r.value += p.value;
    r.error += p.error;
    heap.push(p);
  }
  r.panels = static_cast<int>(heap.size());
  auto done = [&] {
    return r.error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(r.value));
  };
  while (!done() && r.panels < opt.max_panels) {
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      heap.push(worst);
      break;  // panel cannot be split further in double precision
    }
    const Panel left = gk15(f, worst.a, mid);
    const Panel right = gk15(f, mid, worst.b);
    r.value += left.value + right.value - worst.value;
    r.error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++r.panels;
  }
  // Re-sum to shed the drift of the running updates.
  r.value = 0.0;
  r.error = 0.0;
  while (!heap.empty()) {
    r.value += heap.top().value;
    r.error += heap.top().error;
    heap.pop();
  }
  if (!std::isfinite(r.value) || !done()) {
    throw QuadratureError("adaptive Gauss-Kronrod did not converge", r.value, r.error);
  }
  return r;
}

}  // namespace detail

/// Integral of f over [a, b], a finite, b finite or +infinity. Throws
/// QuadratureError with the achieved estimate when the tolerance is not met.
template <class F>
Result integrate(F&& f, double a, double b, const Options& opt = {}) {
  if (std::isinf(b)) {
    // k = a + t / (1 - t), t in [0, 1).
    auto mapped = [&f, a](double t) {
      const double s = 1.0 - t;
      return f(a + t / s) / (s * s);
    };
    return detail::adapt(mapped, {0.0, 1.0}, opt);
  }
  return detail::adapt(f, {a, b}, opt);
}

/// Integral over finite [a, b] of an oscillatory integrand: starts from
/// panels of width `period` before adapting.
template <class F>
Result integrate_oscillatory(F&& f, double a, double b, double period, const Options& opt = {}) {
  std::vector<double> breaks{a};
  if (period > 0.0) {
    const int n = std::max(1, static_cast<int>(std::ceil((b - a) / period)));
    for (int i = 1; i < n; ++i) breaks.push_back(a + (b - a) * i / n);
  }
  breaks.push_back(b);
  return detail::adapt(f, breaks, opt);
}

}  // namespace udw::quadrature
