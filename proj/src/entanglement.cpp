#include "mfbath/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mfbath/error.hpp"
#include "mfbath/linalg.hpp"

namespace mfbath {

namespace {

constexpr double kNegativeEigenTol = 1e-10;

Mat4 sigma_yy() {
  Mat4 y = Mat4::Zero();
  y(0, 3) = -1.0;
  y(1, 2) = 1.0;
  y(2, 1) = 1.0;
  y(3, 0) = -1.0;
  return y;
}

// V sqrt(P) with roundoff-level negative eigenvalues clamped.
Mat4 weighted_eigenvectors(const Mat4& rho) {
  const auto eig = linalg::hermitian_eigen<4>(0.5 * (rho + rho.adjoint()));
  Mat4 w;
  for (int k = 0; k < 4; ++k) {
    const double p = eig.values(k);
    if (p < -kNegativeEigenTol)
      throw NotADensityMatrix("negative eigenvalue " + std::to_string(p));
    w.col(k) = std::sqrt(std::max(p, 0.0)) * eig.vectors.col(k);
  }
  return w;
}

void check_pair(cdouble x, cdouble y) {
  const double n = std::norm(x) + std::norm(y);
  if (std::abs(n - 1.0) > kNormTol)
    throw InvalidState("amplitudes must satisfy |x|^2 + |y|^2 = 1");
}

}  // namespace

Mat4 psd_sqrt(const Mat4& rho) {
  const auto eig = linalg::hermitian_eigen<4>(0.5 * (rho + rho.adjoint()));
  Mat4 s = Mat4::Zero();
  for (int k = 0; k < 4; ++k) {
    const double p = eig.values(k);
    if (p < -kNegativeEigenTol)
      throw NotADensityMatrix("negative eigenvalue " + std::to_string(p));
    s += std::sqrt(std::max(p, 0.0)) * eig.vectors.col(k) * eig.vectors.col(k).adjoint();
  }
  return s;
}

ConcurrenceValue concurrence(const TwoQubitDensity& d) {
  validate_density(d);
  const Mat4 w = weighted_eigenvectors(d.rho);
  const Mat4 tau = w.transpose() * sigma_yy() * w;
  const auto sv = linalg::singular_values<4>(tau);
  ConcurrenceValue out;
  for (int k = 0; k < 4; ++k) out.lambdas[k] = sv(k);
  const double c = out.lambdas[0] - out.lambdas[1] - out.lambdas[2] - out.lambdas[3];
  out.c = std::clamp(c, 0.0, 1.0);
  return out;
}

Mat4 wootters_hermitian_matrix(const TwoQubitDensity& d) {
  validate_density(d);
  const Mat4 s = psd_sqrt(d.rho);
  return s * spin_flip(d).rho * s;
}

double case1_concurrence(cdouble beta, cdouble gamma) {
  check_pair(beta, gamma);
  return 2.0 * std::abs(beta) * std::abs(gamma);
}

double case2_concurrence(cdouble alpha, cdouble delta, const DephasingCoeffs& coeffs) {
  check_pair(alpha, delta);
  return 2.0 * std::abs(alpha) * std::abs(delta) * std::abs(coeffs.B);
}

double case4_concurrence(double t, double xi0, const DephasingCoeffs& coeffs) {
  return concurrence(evolve_reduced(case_state(4), t, xi0, coeffs)).c;
}

}  // namespace mfbath
