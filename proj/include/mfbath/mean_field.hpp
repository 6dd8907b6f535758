#pragma once

#include <span>
#include <vector>

namespace mfbath {

/// Couplings and temperature of the transverse-Ising bath. Energies share a
/// single unit; T already includes the Boltzmann constant.
struct BathParams {
  double J = 2.0;  ///< ferromagnetic exchange, >= 0
  double w = 0.1;  ///< transverse field, >= 0
  double T = 0.5;  ///< temperature, > 0

  /// Throws InvalidParams when an invariant is violated.
  void validate() const;
};

enum class Phase { ordered, disordered };

/// Mean-field solution. theta and m are canonicalized non-negative.
struct OrderSolution {
  double theta = 0.0;  ///< sqrt(w^2 + 4 m^2 J^2)
  double m = 0.0;      ///< order parameter in [0, 1/2]
  Phase phase = Phase::disordered;

  bool ordered() const { return phase == Phase::ordered; }
};

struct SweepPoint {
  double T;
  OrderSolution solution;
};

inline constexpr double kDefaultOrderTol = 1e-12;
inline constexpr int kDefaultOrderMaxIter = 200;

double critical_temperature(double J);

/// True when the bath sits in the broken-symmetry phase: w/J < tanh(w/2T)
/// for w > 0, T < J/2 for w = 0. Always false for J = 0.
bool is_ordered(const BathParams& p);

/// Solves theta/J = tanh(theta/2T) by bisection on [max(w, 1e-12 J), J].
/// Outside the ordered phase returns m = 0, theta = w.
OrderSolution solve_order(const BathParams& p, double tol = kDefaultOrderTol,
                          int max_iter = kDefaultOrderMaxIter);

/// Elementwise solve_order over temperatures, keeping J and w from `tmpl`.
std::vector<SweepPoint> order_parameter_sweep(const BathParams& tmpl,
                                              std::span<const double> temperatures,
                                              double tol = kDefaultOrderTol);

}  // namespace mfbath
