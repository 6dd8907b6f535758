#include "mfbath/mean_field.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mfbath/error.hpp"

namespace mfbath {

namespace {

// Keeps the bisection away from the trivial root theta = 0 at w = 0.
constexpr double kLowerBracketFraction = 1e-12;

}  // namespace

void BathParams::validate() const {
  if (!(std::isfinite(J) && J >= 0.0))
    throw InvalidParams("bath: J must be finite and >= 0, got " + std::to_string(J));
  if (!(std::isfinite(w) && w >= 0.0))
    throw InvalidParams("bath: w must be finite and >= 0, got " + std::to_string(w));
  if (!(std::isfinite(T) && T > 0.0))
    throw InvalidParams("bath: T must be finite and > 0, got " + std::to_string(T));
}

double critical_temperature(double J) {
  if (!(std::isfinite(J) && J >= 0.0))
    throw InvalidParams("critical_temperature: J must be >= 0");
  return 0.5 * J;
}

bool is_ordered(const BathParams& p) {
  p.validate();
  if (p.J == 0.0) return false;
  if (p.w == 0.0) return p.T < critical_temperature(p.J);
  return p.w / p.J < std::tanh(p.w / (2.0 * p.T));
}

OrderSolution solve_order(const BathParams& p, double tol, int max_iter) {
  p.validate();
  if (!(tol > 0.0)) throw InvalidParams("solve_order: tol must be > 0");
  if (!is_ordered(p)) return {p.w, 0.0, Phase::disordered};

  const double J = p.J;
  const double T = p.T;
  auto residual = [J, T](double theta) { return std::tanh(theta / (2.0 * T)) - theta / J; };

  // f(lo) > 0 by the ordering condition and f(J) <= 0 because tanh < 1.
  double lo = std::max(p.w, kLowerBracketFraction * J);
  double hi = J;
  double f_hi = residual(hi);

  double theta = hi;
  double f_theta = f_hi;
  if (f_hi != 0.0) {
    // Bisect to full double resolution; the residual check decides success.
    int it = 0;
    for (; it < max_iter; ++it) {
      const double mid = lo + 0.5 * (hi - lo);
      if (mid <= lo || mid >= hi) break;
      const double f_mid = residual(mid);
      if (f_mid == 0.0) {
        lo = hi = mid;
        break;
      }
      if (f_mid > 0.0)
        lo = mid;
      else
        hi = mid;
    }
    if (it == max_iter)
      throw NoConvergence("solve_order: bisection hit the iteration cap");
    const double f_lo = residual(lo);
    f_hi = residual(hi);
    if (std::abs(f_lo) <= std::abs(f_hi)) {
      theta = lo;
      f_theta = f_lo;
    } else {
      theta = hi;
      f_theta = f_hi;
    }
  }
  if (!(std::abs(f_theta) < tol))
    throw NoConvergence("solve_order: residual " + std::to_string(std::abs(f_theta)) +
                        " above tolerance; tol too tight for double precision");

  // theta > w strictly, so the radicand is positive.
  const double m = std::sqrt((theta - p.w) * (theta + p.w)) / (2.0 * J);
  return {theta, std::min(m, 0.5), Phase::ordered};
}

std::vector<SweepPoint> order_parameter_sweep(const BathParams& tmpl,
                                              std::span<const double> temperatures,
                                              double tol) {
  std::vector<SweepPoint> out;
  out.reserve(temperatures.size());
  for (double T : temperatures) {
    BathParams p = tmpl;
    p.T = T;
    out.push_back({T, solve_order(p, tol)});
  }
  return out;
}

}  // namespace mfbath
