#pragma once

#include <array>
#include <complex>

#include <Eigen/Core>

#include "mfbath/dephasing.hpp"

namespace mfbath {

/// 4x4 complex matrix over |00>, |01>, |10>, |11> (first qubit is the
/// high bit).
using Mat4 = Eigen::Matrix4cd;

inline constexpr double kNormTol = 1e-12;

/// alpha|00> + beta|01> + gamma|10> + delta|11>.
struct PureState2Q {
  std::array<cdouble, 4> amp{1.0, 0.0, 0.0, 0.0};

  cdouble alpha() const { return amp[0]; }
  cdouble beta() const { return amp[1]; }
  cdouble gamma() const { return amp[2]; }
  cdouble delta() const { return amp[3]; }

  double norm_squared() const;
  /// Throws InvalidState when |norm^2 - 1| > kNormTol.
  void validate() const;
  /// Rescales to unit norm; throws InvalidState for the zero vector.
  static PureState2Q normalized(std::array<cdouble, 4> amp);
};

/// The four initial states discussed for collective dephasing:
/// 1: (|01> + |10>)/sqrt2, 2: (|00> + |11>)/sqrt2, 3: |1>(|0> + |1>)/sqrt2,
/// 4: |+>|+>. Throws InvalidParams for other selectors.
PureState2Q case_state(int which);

/// Hermitian, unit-trace, positive 4x4 matrix.
struct TwoQubitDensity {
  Mat4 rho = Mat4::Zero();
};

/// Throws NotADensityMatrix if Hermiticity or trace deviate by more than
/// `tol` or an eigenvalue falls below -tol.
void validate_density(const TwoQubitDensity& d, double tol = 1e-10);

TwoQubitDensity pure_density(const PureState2Q& s);

/// Reduced state at time t. Populations are untouched. Above the diagonal,
/// coherences between total-S^z sectors one apart carry A and the |00><11|
/// coherence carries B; the conjugates sit below. The qubit-qubit coupling
/// adds e^{+-i xi0 t/2} where the Ising energies differ.
TwoQubitDensity evolve_reduced(const PureState2Q& state, double t, double xi0,
                               const DephasingCoeffs& coeffs);

/// Pure evolution under -xi0 S1^z S2^z alone.
PureState2Q evolve_pure(const PureState2Q& state, double t, double xi0);

/// (sigma_y x sigma_y) rho^* (sigma_y x sigma_y).
TwoQubitDensity spin_flip(const TwoQubitDensity& d);

/// R = rho * spin_flip(rho).
Mat4 r_matrix(const TwoQubitDensity& d);

/// The block form R1..R4 of R written out in the amplitudes, for the
/// transposed (bra-ket) layout of the reduced matrix. Equals
/// r_matrix({evolve_reduced(...).rho.transpose()}).
Mat4 block_r_matrix(const PureState2Q& state, double t, double xi0,
                       const DephasingCoeffs& coeffs);

/// 2|alpha delta - beta gamma|.
double pure_concurrence(const PureState2Q& s);

}  // namespace mfbath
