#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "mfbath/mean_field.hpp"

namespace mfbath {

using cdouble = std::complex<double>;

/// Couplings of the qubits: J0 to the bath, mu0 to a longitudinal field
/// (single-qubit model), xi0 between the two qubits.
struct SystemParams {
  double J0 = 1.0;
  double mu0 = 0.0;
  double xi0 = 0.0;

  void validate() const;
};

/// Exact closed form for a bath of N spins.
struct FiniteMode {
  std::uint64_t N = 1;
};

/// Large-N Gaussian magnitudes; phases are not available in this limit.
struct AsymptoticMode {};

using Mode = std::variant<FiniteMode, AsymptoticMode>;

/// Factors multiplying the one- and two-excitation-difference coherences.
struct DephasingCoeffs {
  cdouble A{1.0, 0.0};
  cdouble B{1.0, 0.0};
  Mode mode = AsymptoticMode{};
};

struct CoherenceOptions {
  /// Multiply r(t) by the free precession phase e^{i mu0 t}. It never
  /// changes |r| or any concurrence.
  bool include_free_phase = false;
};

/// r(t) = [cos(phi) + i (theta/J) sin(phi)]^N, phi = t m J J0 / (theta sqrt N),
/// evaluated in log domain so N up to 1e8 keeps full precision.
cdouble coherence_factor_finite(double t, std::uint64_t N, const OrderSolution& sol,
                                const BathParams& bath, const SystemParams& sys,
                                const CoherenceOptions& opts = {});

/// |r(t)| ~ exp[-J0^2 m^2 t^2 (J^2/theta^2 - 1) / 2].
double coherence_magnitude_asymptotic(double t, const OrderSolution& sol, const BathParams& bath,
                                      const SystemParams& sys);

/// Time at which the Gaussian magnitude reaches 1/e. Infinite when the bath
/// is disordered or fully polarized (theta = J).
double coherence_time(const OrderSolution& sol, const BathParams& bath, const SystemParams& sys);

DephasingCoeffs dephasing_coeffs(double t, const Mode& mode, const OrderSolution& sol,
                                 const BathParams& bath, const SystemParams& sys);

std::vector<DephasingCoeffs> dephasing_series(std::span<const double> times, const Mode& mode,
                                              const OrderSolution& sol, const BathParams& bath,
                                              const SystemParams& sys);

/// Ising-bath limit (w = 0): exp[-J0^2 t^2 (1/4 - m^2) / 2].
double im_limit_magnitude(double t, double m, double J0);

/// Ising-bath coherence time (2/J0) sqrt(2/(1 - 4 m^2)); 2 sqrt(2)/J0 at m = 0.
double im_coherence_time(double m, double J0);

}  // namespace mfbath
