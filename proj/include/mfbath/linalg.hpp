#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numeric>

#include <Eigen/Core>

#include "mfbath/error.hpp"

// Small dense Hermitian eigensolver and singular values by cyclic Jacobi.
// Sized for the 4x4 two-qubit matrices; exact to a few ulps of the norm.
namespace mfbath::linalg {

template <int n>
using CMat = Eigen::Matrix<std::complex<double>, n, n>;
template <int n>
using RVec = Eigen::Matrix<double, n, 1>;

template <int n>
struct HermitianEigen {
  RVec<n> values;   ///< descending
  CMat<n> vectors;  ///< columns are eigenvectors
};

inline constexpr int kMaxJacobiSweeps = 60;

/// Cyclic Jacobi with complex rotations. Stops when the off-diagonal
/// Frobenius norm drops below 1e-14 of the full norm. Only the lower
/// triangle mirror of `h` is assumed, i.e. h is taken as Hermitian.
template <int n>
HermitianEigen<n> hermitian_eigen(const CMat<n>& h) {
  CMat<n> a = h;
  CMat<n> v = CMat<n>::Identity();
  const double scale = a.norm();
  auto off_norm = [&a]() {
    double s = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        if (p != q) s += std::norm(a(p, q));
    return std::sqrt(s);
  };

  int sweep = 0;
  while (scale > 0.0 && off_norm() > 1e-14 * scale) {
    if (++sweep > kMaxJacobiSweeps) throw NoConvergence("hermitian_eigen: Jacobi did not converge");
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const std::complex<double> apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const std::complex<double> phase = apq / r;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(1.0, theta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = t * c;
        // U = diag(1, conj(phase)) * [[c, s], [-s, c]] acting on (p, q).
        const std::complex<double> upp = c, upq = s;
        const std::complex<double> uqp = -s * std::conj(phase), uqq = c * std::conj(phase);
        for (int k = 0; k < n; ++k) {  // A <- A U
          const auto akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
        }
        for (int k = 0; k < n; ++k) {  // A <- U^H A
          const auto apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (int k = 0; k < n; ++k) {  // V <- V U
          const auto vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * upp + vkq * uqp;
          v(k, q) = vkp * upq + vkq * uqq;
        }
      }
    }
  }

  std::array<int, n> order;
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&a](int i, int j) { return a(i, i).real() > a(j, j).real(); });
  HermitianEigen<n> out;
  for (int k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]).real();
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

/// Singular values (descending) by one-sided Hestenes-Jacobi. Absolute
/// accuracy is a few ulps of the largest singular value, so rank-deficient
/// inputs give singular values at roundoff level rather than its square root.
template <int n>
RVec<n> singular_values(const CMat<n>& m) {
  CMat<n> g = m;
  constexpr double eps = 1e-15;
  for (int sweep = 0;; ++sweep) {
    if (sweep > kMaxJacobiSweeps) throw NoConvergence("singular_values: Jacobi did not converge");
    bool rotated = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double alpha = g.col(p).squaredNorm();
        const double beta = g.col(q).squaredNorm();
        const std::complex<double> gamma = g.col(p).dot(g.col(q));  // conj(g_p) . g_q
        const double r = std::abs(gamma);
        if (r == 0.0 || r <= eps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const std::complex<double> phase = gamma / r;
        const double zeta = (beta - alpha) / (2.0 * r);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const auto gp = g(k, p);
          const auto gq = g(k, q) * std::conj(phase);
          g(k, p) = c * gp - s * gq;
          g(k, q) = s * gp + c * gq;
        }
      }
    }
    if (!rotated) break;
  }
  RVec<n> sv;
  for (int k = 0; k < n; ++k) sv(k) = g.col(k).norm();
  std::sort(sv.data(), sv.data() + n, std::greater<>());
  return sv;
}

}  // namespace mfbath::linalg
