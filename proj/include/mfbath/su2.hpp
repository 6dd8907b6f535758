#pragma once

#include <complex>

#include <Eigen/Core>

namespace mfbath {

using cdouble = std::complex<double>;

/// 2x2 complex matrix in the basis {|0>, |1>}, with |0> the S^z = +1/2 state.
using Mat2 = Eigen::Matrix2cd;

/// Real traceless matrix a*sigma_x + b*sigma_z = [[b, a], [a, -b]].
struct TracelessXZ {
  double a = 0.0;
  double b = 0.0;

  double norm() const;  ///< q = sqrt(a^2 + b^2)
  Mat2 matrix() const;
  TracelessXZ operator-() const { return {-a, -b}; }
};

/// tr(X Y) = 2 (a_x a_y + b_x b_y) within the family.
double trace_product(const TracelessXZ& x, const TracelessXZ& y);

// sin(q)/q, sinh(q)/q and tanh(q)/q with their q -> 0 limits.
double sinc(double q);
double sinhc(double q);
double tanhc(double q);

/// e^M = cosh(q) I + sinh(q)/q M. Throws RangeError when cosh(q) overflows.
Mat2 exp_real(const TracelessXZ& m);

/// e^{iM} = cos(q) I + i sin(q)/q M; always unitary.
Mat2 exp_imag(const TracelessXZ& m);

/// Closed form of tr[e^{i I1} e^{R} e^{i I2}] for three members of the family.
cdouble trace_triple(const TracelessXZ& i1, const TracelessXZ& r, const TracelessXZ& i2);

/// trace_triple(i1, r, i2) / tr(e^R). The cosh(q_R) prefactor cancels, so
/// this form never overflows.
cdouble trace_triple_normalized(const TracelessXZ& i1, const TracelessXZ& r,
                                const TracelessXZ& i2);

/// exp((w S^x + h S^z)/T) / tr(...) with S = sigma/2. Unit trace, Hermitian,
/// positive; reduces to the projector onto |0> as T -> 0+ for h > 0.
Mat2 single_spin_gibbs(double w, double h, double T);

/// Spin-1/2 operators S = sigma/2.
Mat2 spin_x();
Mat2 spin_y();
Mat2 spin_z();

}  // namespace mfbath
