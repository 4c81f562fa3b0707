#pragma once

// Open dynamics of the detector qubit D, entangled with an isolated
// auxiliary qubit Q, under the GKSL equation
//   drho/dtau = -i [Omega/2 sigma3, rho]
//               + Gamma (N+1) D[sigma_-] rho + Gamma N D[sigma_+] rho,
// acting on the first tensor factor. Basis |0> = excited (sigma3 = +1),
// sigma_- = |1><0|. Two-qubit states are written in the Bloch (Fano) form
//   rho = sum_ij u_ij sigma_i (x) sigma_j,   u_ij = tr(rho sigma_i (x) sigma_j) / 4.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "udw/coefficients.hpp"
#include "udw/errors.hpp"

namespace udw {

using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;

inline constexpr double hermiticity_tol = 1e-12;
inline constexpr double trace_tol = 1e-12;
inline constexpr double positivity_tol = 1e-10;

/// 4x4 two-qubit density matrix, D (x) Q.
class DensityMatrix4 {
 public:
  /// Validates Hermiticity, unit trace and positivity.
  static DensityMatrix4 checked(const Matrix4c& m) {
    DensityMatrix4 rho{m};
    const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm > hermiticity_tol) throw InvariantError("DensityMatrix4: not Hermitian (" + std::to_string(herm) + ")");
    const std::complex<double> tr = m.trace();
    if (std::abs(tr - 1.0) > trace_tol) throw InvariantError("DensityMatrix4: trace differs from 1");
    const double min_eig = rho.min_eigenvalue();
    if (min_eig < -positivity_tol) {
      throw InvariantError("DensityMatrix4: negative eigenvalue " + std::to_string(min_eig));
    }
    return rho;
  }
  /// No validation; for intermediate numerical states.
  static DensityMatrix4 unchecked(const Matrix4c& m) { return DensityMatrix4{m}; }

  const Matrix4c& matrix() const noexcept { return m_; }
  std::complex<double> operator()(int i, int j) const { return m_(i, j); }
  double trace() const { return m_.trace().real(); }

  double min_eigenvalue() const {
    const Matrix4c herm = 0.5 * (m_ + m_.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(herm, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }

  double purity() const { return (m_ * m_).trace().real(); }

 private:
  explicit DensityMatrix4(const Matrix4c& m) : m_(m) {}
  Matrix4c m_;
};

/// Real 4x4 Bloch tensor u_ij; u_00 = 1/4 for a normalised state.
class BlochTensor {
 public:
  explicit BlochTensor(const Eigen::Matrix4d& u) : u_(u) {
    if (std::abs(u(0, 0) - 0.25) > trace_tol) throw InvariantError("BlochTensor: u_00 must equal 1/4");
  }
  const Eigen::Matrix4d& matrix() const noexcept { return u_; }
  double operator()(int i, int j) const { return u_(i, j); }

 private:
  Eigen::Matrix4d u_;
};

/// sigma_0 = I, sigma_1..3 the Pauli matrices.
inline Matrix2c pauli(int i) {
  using C = std::complex<double>;
  Matrix2c m;
  switch (i) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, C{0, -1}, C{0, 1}, 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw std::out_of_range("pauli: index must be 0..3");
  }
  return m;
}

inline Matrix4c kron(const Matrix2c& a, const Matrix2c& b) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

inline Matrix4c pauli_product(int i, int j) { return kron(pauli(i), pauli(j)); }

inline BlochTensor bloch_from_density(const DensityMatrix4& rho) {
  Eigen::Matrix4d u;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) u(i, j) = (rho.matrix() * pauli_product(i, j)).trace().real() / 4.0;
  return BlochTensor{u};
}

inline DensityMatrix4 density_from_bloch(const BlochTensor& u) {
  Matrix4c m = Matrix4c::Zero();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m += u(i, j) * pauli_product(i, j);
  return DensityMatrix4::unchecked(m);
}

/// |Phi+> = (|00> + |11>)/sqrt 2, i.e. (1/4)(s0s0 + s1s1 - s2s2 + s3s3).
inline DensityMatrix4 bell_state() {
  Matrix4c m = Matrix4c::Zero();
  m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
  return DensityMatrix4::unchecked(m);
}

inline BlochTensor bell_bloch() {
  Eigen::Matrix4d u = Eigen::Matrix4d::Zero();
  u(0, 0) = 0.25;
  u(1, 1) = 0.25;
  u(2, 2) = -0.25;
  u(3, 3) = 0.25;
  return BlochTensor{u};
}

namespace detail {

inline Matrix2c sigma_minus() {
  Matrix2c m = Matrix2c::Zero();
  m(1, 0) = 1.0;
  return m;
}

inline Matrix4c dissipator(const Matrix4c& l, const Matrix4c& rho) {
  const Matrix4c ldl = l.adjoint() * l;
  return l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
}

}  // namespace detail

/// Right-hand side of the GKSL equation for the two-qubit state.
inline Matrix4c gksl_generator(const Matrix4c& rho, const LindbladCoefficients& c) {
  const Matrix2c id = Matrix2c::Identity();
  const Matrix4c h = kron(0.5 * c.omega_eff() * pauli(3), id);
  const Matrix4c lower = kron(detail::sigma_minus(), id);
  const Matrix4c raise = lower.adjoint();
  const std::complex<double> i{0.0, 1.0};
  Matrix4c out = -i * (h * rho - rho * h);
  if (c.gamma() > 0.0) {
    out += c.gamma() * (c.n() + 1.0) * detail::dissipator(lower, rho);
    out += c.gamma() * c.n() * detail::dissipator(raise, rho);
  }
  return out;
}

/// Exact solution in Bloch form:
///   u_0j   fixed,
///   u_3j   -> u_3j e^{-A tau} + u_0j (B/A)(1 - e^{-A tau}),
///   u_1j + i u_2j -> e^{-A tau/2} e^{i Omega tau} (u_1j + i u_2j).
inline BlochTensor evolve_closed_form(const BlochTensor& u0, const LindbladCoefficients& c, double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw std::invalid_argument("evolve_closed_form: tau must be >= 0");
  const double a = c.a();
  const double decay = std::exp(-a * tau);
  const double transverse = std::exp(-0.5 * a * tau);
  // (B/A)(1 - e^{-A tau}); B = 0 whenever A = 0.
  const double drift = a > 0.0 ? (c.b() / a) * -std::expm1(-a * tau) : 0.0;
  const double phase = c.omega_eff() * tau;
  const double cs = std::cos(phase);
  const double sn = std::sin(phase);
  const Eigen::Matrix4d& in = u0.matrix();
  Eigen::Matrix4d out = in;
  for (int j = 0; j < 4; ++j) {
    out(1, j) = transverse * (in(1, j) * cs - in(2, j) * sn);
    out(2, j) = transverse * (in(2, j) * cs + in(1, j) * sn);
    out(3, j) = in(3, j) * decay + in(0, j) * drift;
  }
  return BlochTensor{out};
}

inline DensityMatrix4 evolve_closed_form(const DensityMatrix4& rho0, const LindbladCoefficients& c, double tau) {
  return density_from_bloch(evolve_closed_form(bloch_from_density(rho0), c, tau));
}

struct NumericEvolution {
  DensityMatrix4 state;
  int steps;
  bool positivity_warning;  ///< min eigenvalue fell below -1e-10 at some step
};

/// Step size used by evolve_numeric when none is given.
inline double default_time_step(const LindbladCoefficients& c) {
  double dt = 0.01 / std::max(std::abs(c.omega_eff()), 1e-9);
  if (c.a() > 0.0) dt = std::min(dt, 0.01 / c.a());
  return dt;
}

/// Fixed-step RK4 integration of the GKSL equation. The step is shrunk so
/// that a whole number of steps lands on tau; it must not exceed 0.01/A.
inline NumericEvolution evolve_numeric(const DensityMatrix4& rho0, const LindbladCoefficients& c, double tau,
                                       double dt = 0.0) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw std::invalid_argument("evolve_numeric: tau must be >= 0");
  if (dt == 0.0) dt = default_time_step(c);
  if (!(dt > 0.0)) throw std::invalid_argument("evolve_numeric: dt must be > 0");
  if (c.a() > 0.0 && dt > 0.01 / c.a() * (1.0 + 1e-12)) {
    throw std::invalid_argument("evolve_numeric: dt exceeds 0.01/A");
  }
  const int steps = tau == 0.0 ? 0 : static_cast<int>(std::ceil(tau / dt));
  const double h = steps == 0 ? 0.0 : tau / steps;
  Matrix4c rho = rho0.matrix();
  bool warning = false;
  for (int k = 0; k < steps; ++k) {
    const Matrix4c k1 = gksl_generator(rho, c);
    const Matrix4c k2 = gksl_generator(rho + 0.5 * h * k1, c);
    const Matrix4c k3 = gksl_generator(rho + 0.5 * h * k2, c);
    const Matrix4c k4 = gksl_generator(rho + h * k3, c);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!warning && DensityMatrix4::unchecked(rho).min_eigenvalue() < -positivity_tol) warning = true;
  }
  return {DensityMatrix4::unchecked(rho), steps, warning};
}

/// State of D (x) Q at proper time tau starting from |Phi+>:
///   (1/4)[s0s0 + (B/A)(1 - e^{-A tau}) s3s0 + e^{-A tau} s3s3
///        + e^{-A tau/2}(cos(Omega tau)(s1s1 - s2s2) + sin(Omega tau)(s1s2 + s2s1))].
inline DensityMatrix4 shared_state(const LindbladCoefficients& c, double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw std::invalid_argument("shared_state: tau must be >= 0");
  const double a = c.a();
  const double drift = a > 0.0 ? (c.b() / a) * -std::expm1(-a * tau) : 0.0;
  const double transverse = std::exp(-0.5 * a * tau);
  const double phase = c.omega_eff() * tau;
  Matrix4c m = pauli_product(0, 0) + drift * pauli_product(3, 0) + std::exp(-a * tau) * pauli_product(3, 3) +
               transverse * std::cos(phase) * (pauli_product(1, 1) - pauli_product(2, 2)) +
               transverse * std::sin(phase) * (pauli_product(1, 2) + pauli_product(2, 1));
  return DensityMatrix4::unchecked(0.25 * m);
}

/// Partial trace over D.
inline Matrix2c auxiliary_marginal(const DensityMatrix4& rho) {
  const Matrix4c& m = rho.matrix();
  return m.block<2, 2>(0, 0) + m.block<2, 2>(2, 2);
}

/// Partial trace over Q.
inline Matrix2c detector_marginal(const DensityMatrix4& rho) {
  const Matrix4c& m = rho.matrix();
  Matrix2c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out(i, j) = m(2 * i, 2 * j) + m(2 * i + 1, 2 * j + 1);
  return out;
}

/// Stationary detector state: excited population N / (2N + 1).
inline Matrix2c detector_steady_state(const LindbladCoefficients& c) {
  Matrix2c out = Matrix2c::Zero();
  const double pe = c.n() / (2.0 * c.n() + 1.0);
  out(0, 0) = pe;
  out(1, 1) = 1.0 - pe;
  return out;
}

}  // namespace udw
