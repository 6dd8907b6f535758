#include "mfbath/su2.hpp"

#include <cmath>

#include "mfbath/error.hpp"

namespace mfbath {

namespace {

constexpr double kSeriesCutoff = 1e-4;
constexpr cdouble kI{0.0, 1.0};

void require_finite(const TracelessXZ& m, const char* where) {
  if (!std::isfinite(m.a) || !std::isfinite(m.b))
    throw InvalidParams(std::string(where) + ": non-finite matrix coefficients");
}

double checked_cosh(double q, const char* where) {
  const double c = std::cosh(q);
  if (!std::isfinite(c)) throw RangeError(std::string(where) + ": cosh overflow");
  return c;
}

}  // namespace

double TracelessXZ::norm() const { return std::hypot(a, b); }

Mat2 TracelessXZ::matrix() const {
  Mat2 m;
  m << b, a, a, -b;
  return m;
}

double trace_product(const TracelessXZ& x, const TracelessXZ& y) {
  return 2.0 * (x.a * y.a + x.b * y.b);
}

double sinc(double q) {
  if (std::abs(q) < kSeriesCutoff) return 1.0 - q * q / 6.0;
  return std::sin(q) / q;
}

double sinhc(double q) {
  if (std::abs(q) < kSeriesCutoff) return 1.0 + q * q / 6.0;
  return std::sinh(q) / q;
}

double tanhc(double q) {
  if (std::abs(q) < kSeriesCutoff) return 1.0 - q * q / 3.0;
  return std::tanh(q) / q;
}

Mat2 exp_real(const TracelessXZ& m) {
  require_finite(m, "exp_real");
  const double q = m.norm();
  const double c = checked_cosh(q, "exp_real");
  const double s = sinhc(q);
  if (!std::isfinite(s)) throw RangeError("exp_real: sinh overflow");
  return c * Mat2::Identity() + s * m.matrix();
}

Mat2 exp_imag(const TracelessXZ& m) {
  require_finite(m, "exp_imag");
  const double q = m.norm();
  return std::cos(q) * Mat2::Identity() + (kI * sinc(q)) * m.matrix();
}

cdouble trace_triple_normalized(const TracelessXZ& i1, const TracelessXZ& r,
                                const TracelessXZ& i2) {
  require_finite(i1, "trace_triple");
  require_finite(r, "trace_triple");
  require_finite(i2, "trace_triple");
  const double x = i1.norm();
  const double y = r.norm();
  const double z = i2.norm();
  const double cx = std::cos(x), cz = std::cos(z);
  const double sx = sinc(x), sz = sinc(z);
  const double ty = tanhc(y);
  // The three-matrix trace vanishes: products of sigma_x/sigma_z triples
  // need a sigma_y component to have a trace.
  const cdouble bracket = 2.0 * cx * cz + kI * (cz * sx * ty * trace_product(i1, r)) +
                          kI * (cx * ty * sz * trace_product(r, i2)) -
                          sx * sz * trace_product(i1, i2);
  return 0.5 * bracket;
}

cdouble trace_triple(const TracelessXZ& i1, const TracelessXZ& r, const TracelessXZ& i2) {
  const double ch = checked_cosh(r.norm(), "trace_triple");
  return 2.0 * ch * trace_triple_normalized(i1, r, i2);
}

Mat2 single_spin_gibbs(double w, double h, double T) {
  if (!(T > 0.0) || !std::isfinite(T)) throw InvalidParams("single_spin_gibbs: T must be > 0");
  if (!std::isfinite(w) || !std::isfinite(h))
    throw InvalidParams("single_spin_gibbs: non-finite field");
  // (w S^x + h S^z)/T = (w sigma_x + h sigma_z)/(2T)
  const TracelessXZ m{w / (2.0 * T), h / (2.0 * T)};
  // e^M / (2 cosh q) = (I + tanh(q)/q M) / 2
  return 0.5 * (Mat2::Identity() + tanhc(m.norm()) * m.matrix());
}

Mat2 spin_x() {
  Mat2 s;
  s << 0.0, 0.5, 0.5, 0.0;
  return s;
}

Mat2 spin_y() {
  Mat2 s;
  s << 0.0, -0.5 * kI, 0.5 * kI, 0.0;
  return s;
}

Mat2 spin_z() {
  Mat2 s;
  s << 0.5, 0.0, 0.0, -0.5;
  return s;
}

}  // namespace mfbath
