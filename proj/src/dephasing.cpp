#include "mfbath/dephasing.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "mfbath/error.hpp"

namespace mfbath {

namespace {

void check_time(double t) {
  if (!std::isfinite(t)) throw InvalidParams("time must be finite");
}

// N-th power of cos(phi) + i kappa sin(phi), kappa in (0, 1].
// |g|^2 = 1 - (1 - kappa^2) sin^2(phi), taken through log1p so the tiny
// per-spin decay survives multiplication by large N.
cdouble per_spin_power(double phi, double kappa, std::uint64_t N) {
  const double s = std::sin(phi);
  const double c = std::cos(phi);
  const double deficit = (1.0 - kappa) * (1.0 + kappa);
  const double log_mod = 0.5 * std::log1p(-deficit * s * s);
  const double arg = std::atan2(kappa * s, c);
  const double n = static_cast<double>(N);
  return std::exp(n * log_mod) * std::polar(1.0, n * arg);
}

// Rate c in |r| = exp(-c t^2): J0^2 m^2 (J^2 - theta^2) / (2 theta^2).
// (J - theta)(J + theta) avoids cancellation near theta = J and is shared
// with coherence_time so their product is exact to rounding.
double gaussian_rate(const OrderSolution& sol, const BathParams& bath, const SystemParams& sys) {
  if (sol.m == 0.0) return 0.0;
  if (!(sol.theta > 0.0)) throw InvalidParams("order solution with m > 0 needs theta > 0");
  const double gap = (bath.J - sol.theta) * (bath.J + sol.theta);
  const double jm = sys.J0 * sol.m / sol.theta;
  return 0.5 * jm * jm * gap;
}

cdouble finite_factor(double t, std::uint64_t N, const OrderSolution& sol, const BathParams& bath,
                      const SystemParams& sys) {
  if (N == 0) throw InvalidParams("finite mode needs N >= 1");
  check_time(t);
  if (sol.m == 0.0) return {1.0, 0.0};
  if (!(sol.theta > 0.0)) throw InvalidParams("order solution with m > 0 needs theta > 0");
  const double phi =
      t * sol.m * bath.J * sys.J0 / (sol.theta * std::sqrt(static_cast<double>(N)));
  return per_spin_power(phi, sol.theta / bath.J, N);
}

}  // namespace

void SystemParams::validate() const {
  if (!(std::isfinite(J0) && J0 >= 0.0)) throw InvalidParams("system: J0 must be >= 0");
  if (!(std::isfinite(mu0) && mu0 >= 0.0)) throw InvalidParams("system: mu0 must be >= 0");
  if (!(std::isfinite(xi0) && xi0 >= 0.0)) throw InvalidParams("system: xi0 must be >= 0");
}

cdouble coherence_factor_finite(double t, std::uint64_t N, const OrderSolution& sol,
                                const BathParams& bath, const SystemParams& sys,
                                const CoherenceOptions& opts) {
  bath.validate();
  sys.validate();
  cdouble r = finite_factor(t, N, sol, bath, sys);
  if (opts.include_free_phase) r *= std::polar(1.0, sys.mu0 * t);
  return r;
}

double coherence_magnitude_asymptotic(double t, const OrderSolution& sol, const BathParams& bath,
                                      const SystemParams& sys) {
  bath.validate();
  sys.validate();
  check_time(t);
  return std::exp(-gaussian_rate(sol, bath, sys) * t * t);
}

double coherence_time(const OrderSolution& sol, const BathParams& bath, const SystemParams& sys) {
  bath.validate();
  sys.validate();
  if (sys.J0 == 0.0) throw InvalidParams("coherence_time: J0 must be > 0");
  const double rate = gaussian_rate(sol, bath, sys);
  if (rate <= 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / std::sqrt(rate);
}

DephasingCoeffs dephasing_coeffs(double t, const Mode& mode, const OrderSolution& sol,
                                 const BathParams& bath, const SystemParams& sys) {
  bath.validate();
  sys.validate();
  check_time(t);
  // B(t) is A at 2t in both modes; doubling t is exact, so this holds
  // bit-for-bit.
  if (const auto* fin = std::get_if<FiniteMode>(&mode)) {
    return {finite_factor(t, fin->N, sol, bath, sys),
            finite_factor(2.0 * t, fin->N, sol, bath, sys), mode};
  }
  const double rate = gaussian_rate(sol, bath, sys);
  const double two_t = 2.0 * t;
  return {std::exp(-rate * t * t), std::exp(-rate * two_t * two_t), mode};
}

std::vector<DephasingCoeffs> dephasing_series(std::span<const double> times, const Mode& mode,
                                              const OrderSolution& sol, const BathParams& bath,
                                              const SystemParams& sys) {
  std::vector<DephasingCoeffs> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(dephasing_coeffs(t, mode, sol, bath, sys));
  return out;
}

double im_limit_magnitude(double t, double m, double J0) {
  if (!(m >= 0.0 && m <= 0.5)) throw InvalidParams("im_limit_magnitude: m must lie in [0, 1/2]");
  if (!(J0 >= 0.0)) throw InvalidParams("im_limit_magnitude: J0 must be >= 0");
  check_time(t);
  return std::exp(-0.5 * J0 * J0 * t * t * (0.5 - m) * (0.5 + m));
}

double im_coherence_time(double m, double J0) {
  if (!(m >= 0.0 && m <= 0.5)) throw InvalidParams("im_coherence_time: m must lie in [0, 1/2]");
  if (!(J0 > 0.0)) throw InvalidParams("im_coherence_time: J0 must be > 0");
  if (m == 0.5) return std::numeric_limits<double>::infinity();
  return (2.0 / J0) * std::sqrt(2.0 / ((1.0 - 2.0 * m) * (1.0 + 2.0 * m)));
}

}  // namespace mfbath
