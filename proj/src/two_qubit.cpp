#include "mfbath/two_qubit.hpp"

#include <cmath>
#include <string>

#include "mfbath/error.hpp"
#include "mfbath/linalg.hpp"

namespace mfbath {

namespace {


Mat4 sigma_yy() {
  // sigma_y x sigma_y is real: |00> <-> -|11>, |01> <-> |10>.
  Mat4 y = Mat4::Zero();
  y(0, 3) = -1.0;
  y(1, 2) = 1.0;
  y(2, 1) = 1.0;
  y(3, 0) = -1.0;
  return y;
}

void check_coeff(cdouble c, const char* name) {
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag()) || std::abs(c) > 1.0 + 1e-12)
    throw InvalidParams(std::string("dephasing coefficient ") + name + " must satisfy |.| <= 1");
}

}  // namespace

double PureState2Q::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amp) s += std::norm(a);
  return s;
}

void PureState2Q::validate() const {
  const double n = norm_squared();
  if (!std::isfinite(n) || std::abs(n - 1.0) > kNormTol)
    throw InvalidState("two-qubit state not normalized: |psi|^2 = " + std::to_string(n));
}

PureState2Q PureState2Q::normalized(std::array<cdouble, 4> amp) {
  PureState2Q s{amp};
  const double n = s.norm_squared();
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidState("cannot normalize a zero state");
  const double inv = 1.0 / std::sqrt(n);
  for (auto& a : s.amp) a *= inv;
  return s;
}

PureState2Q case_state(int which) {
  const double h = 1.0 / std::sqrt(2.0);
  switch (which) {
    case 1: return {{0.0, h, h, 0.0}};
    case 2: return {{h, 0.0, 0.0, h}};
    case 3: return {{0.0, 0.0, h, h}};
    case 4: return {{0.5, 0.5, 0.5, 0.5}};
    default: throw InvalidParams("case selector must be 1, 2, 3 or 4");
  }
}

void validate_density(const TwoQubitDensity& d, double tol) {
  const Mat4& r = d.rho;
  if (!r.allFinite()) throw NotADensityMatrix("density matrix has non-finite entries");
  const double herm = (r - r.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol) throw NotADensityMatrix("density matrix not Hermitian (" + std::to_string(herm) + ")");
  const double tr_err = std::abs(r.trace() - 1.0);
  if (tr_err > tol) throw NotADensityMatrix("density matrix trace deviates by " + std::to_string(tr_err));
  const Mat4 h = 0.5 * (r + r.adjoint());
  const auto eig = linalg::hermitian_eigen<4>(h);
  if (eig.values(3) < -tol)
    throw NotADensityMatrix("density matrix has eigenvalue " + std::to_string(eig.values(3)));
}

TwoQubitDensity pure_density(const PureState2Q& s) {
  s.validate();
  TwoQubitDensity d;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) d.rho(i, j) = s.amp[i] * std::conj(s.amp[j]);
  return d;
}

TwoQubitDensity evolve_reduced(const PureState2Q& state, double t, double xi0,
                               const DephasingCoeffs& coeffs) {
  state.validate();
  check_coeff(coeffs.A, "A");
  check_coeff(coeffs.B, "B");
  if (!std::isfinite(t) || !std::isfinite(xi0)) throw InvalidParams("evolve_reduced: non-finite t or xi0");

  const auto [al, be, ga, de] = state.amp;
  const cdouble A = coeffs.A;
  const cdouble B = coeffs.B;
  // |00>,|11> sit at Ising energy -xi0/4, |01>,|10> at +xi0/4.
  const cdouble up = std::polar(1.0, 0.5 * t * xi0);
  const cdouble down = std::conj(up);

  Mat4 r;
  r(0, 0) = std::norm(al);
  r(1, 1) = std::norm(be);
  r(2, 2) = std::norm(ga);
  r(3, 3) = std::norm(de);
  r(0, 1) = al * std::conj(be) * A * up;
  r(0, 2) = al * std::conj(ga) * A * up;
  r(0, 3) = al * std::conj(de) * B;
  r(1, 2) = be * std::conj(ga);
  r(1, 3) = be * std::conj(de) * A * down;
  r(2, 3) = ga * std::conj(de) * A * down;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < i; ++j) r(i, j) = std::conj(r(j, i));
  return {r};
}

PureState2Q evolve_pure(const PureState2Q& state, double t, double xi0) {
  state.validate();
  const cdouble up = std::polar(1.0, 0.25 * t * xi0);
  const cdouble down = std::conj(up);
  // e^{-iEt} with E = -xi0 s1 s2.
  return {{state.amp[0] * up, state.amp[1] * down, state.amp[2] * down, state.amp[3] * up}};
}

TwoQubitDensity spin_flip(const TwoQubitDensity& d) {
  const Mat4 y = sigma_yy();
  return {y * d.rho.conjugate() * y};
}

Mat4 r_matrix(const TwoQubitDensity& d) { return d.rho * spin_flip(d).rho; }

Mat4 block_r_matrix(const PureState2Q& state, double t, double xi0,
                       const DephasingCoeffs& coeffs) {
  state.validate();
  const auto [a, b, g, d] = state.amp;
  const cdouble A = coeffs.A, B = coeffs.B;
  auto cj = [](cdouble z) { return std::conj(z); };
  auto sq = [](cdouble z) { return std::norm(z); };
  const cdouble Ac = cj(A), Bc = cj(B);
  const double A2 = sq(A), B2 = sq(B);
  const cdouble h = std::polar(1.0, 0.5 * t * xi0), hm = cj(h);
  const cdouble e = std::polar(1.0, t * xi0), em = cj(e);
  const cdouble uA = Ac + A * Bc;  // A^* + A B^*
  const cdouble vA = A + Ac * B;   // A + A^* B

  Mat4 R;
  // R1
  R(0, 0) = sq(a) * sq(d) * (1.0 + B2) - 2.0 * cj(a) * b * g * cj(d) * A2 * em;
  R(0, 1) = 2.0 * cj(a) * b * sq(g) * Ac * hm - sq(a) * cj(g) * d * uA * h;
  R(1, 0) = a * cj(b) * sq(d) * vA * h - 2.0 * sq(b) * g * cj(d) * A * hm;
  R(1, 1) = -2.0 * a * cj(b) * cj(g) * d * A2 * e + 2.0 * sq(b) * sq(g);
  // R2
  R(0, 2) = 2.0 * cj(a) * sq(b) * g * Ac * hm - sq(a) * cj(b) * d * uA * h;
  R(0, 3) = 2.0 * cj(a) * sq(a) * d * Bc - 2.0 * cj(a) * cj(a) * b * g * Ac * Ac * em;
  R(1, 2) = -2.0 * a * cj(b) * cj(b) * d * A2 * e + 2.0 * cj(b) * sq(b) * g;
  R(1, 3) = sq(a) * cj(b) * d * uA * h - 2.0 * cj(a) * sq(b) * g * Ac * hm;
  // R3; the (1,1) entry carries A + A^* B, consistent with R1.
  R(2, 0) = a * cj(g) * sq(d) * vA * h - 2.0 * b * sq(g) * cj(d) * A * hm;
  R(2, 1) = -2.0 * a * cj(g) * cj(g) * d * A2 * e + 2.0 * b * cj(g) * sq(g);
  R(3, 0) = 2.0 * a * cj(d) * sq(d) * B - 2.0 * b * g * cj(d) * cj(d) * A * A * em;
  R(3, 1) = 2.0 * b * sq(g) * cj(d) * A * hm - a * cj(g) * sq(d) * vA * h;
  // R4; the (2,1) entry carries gamma delta^*.
  R(2, 2) = -2.0 * a * cj(b) * cj(g) * d * A2 * e + 2.0 * sq(b) * sq(g);
  R(2, 3) = sq(a) * cj(g) * d * uA * h - 2.0 * cj(a) * b * sq(g) * Ac * hm;
  R(3, 2) = 2.0 * sq(b) * g * cj(d) * A * hm - a * cj(b) * sq(d) * vA * h;
  R(3, 3) = sq(a) * sq(d) * (1.0 + B2) - 2.0 * cj(a) * b * g * cj(d) * A2 * em;
  return R;
}

double pure_concurrence(const PureState2Q& s) {
  s.validate();
  return 2.0 * std::abs(s.alpha() * s.delta() - s.beta() * s.gamma());
}

}  // namespace mfbath
