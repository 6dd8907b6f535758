#pragma once

#include <array>

#include "mfbath/dephasing.hpp"
#include "mfbath/two_qubit.hpp"

namespace mfbath {

struct ConcurrenceValue {
  double c = 0.0;
  /// Square roots of the eigenvalues of rho * spin_flip(rho), descending.
  std::array<double, 4> lambdas{};
};

/// Wootters concurrence max(l1 - l2 - l3 - l4, 0).
///
/// rho is eigendecomposed by Jacobi, rho = V P V^H, and with W = V sqrt(P)
/// the lambdas are the singular values of W^T (sigma_y x sigma_y) W. Those
/// coincide with the square-rooted eigenvalues of sqrt(rho) rho~ sqrt(rho)
/// but keep full absolute precision when rho is rank deficient.
/// Throws NotADensityMatrix on invalid input.
ConcurrenceValue concurrence(const TwoQubitDensity& d);

/// sqrt(rho) rho~ sqrt(rho): Hermitian, positive and similar to R.
Mat4 wootters_hermitian_matrix(const TwoQubitDensity& d);

/// Positive square root through the Jacobi eigendecomposition. Eigenvalues
/// down to -1e-10 are clamped to zero; below that NotADensityMatrix.
Mat4 psd_sqrt(const Mat4& rho);

/// Decoherence-free state beta|01> + gamma|10>: 2|beta||gamma| at all times.
double case1_concurrence(cdouble beta, cdouble gamma);

/// alpha|00> + delta|11>: 2|alpha||delta||B(t)|.
double case2_concurrence(cdouble alpha, cdouble delta, const DephasingCoeffs& coeffs);

/// |+>|+>: evaluated numerically through evolve_reduced and concurrence.
double case4_concurrence(double t, double xi0, const DephasingCoeffs& coeffs);

}  // namespace mfbath
