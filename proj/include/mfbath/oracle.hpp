#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "mfbath/dephasing.hpp"
#include "mfbath/mean_field.hpp"
#include "mfbath/two_qubit.hpp"

// Brute-force reference for the mean-field dynamics of two qubits (or one)
// coupled to N bath spins. Nothing here uses the closed forms of the
// dephasing module; every result comes from explicit propagators.
namespace mfbath::oracle {

inline constexpr int kMaxOracleBath = 12;
/// 2^(N+2) dense matrices beyond this no longer fit comfortably in memory.
inline constexpr int kMaxDenseBath = 8;

struct OracleConfig {
  int N = 4;
  BathParams bath;
  SystemParams sys;
  PureState2Q state;
  std::vector<double> times;
  /// Mean-field solution fed to the bath; solve_order(bath) when empty.
  std::optional<OrderSolution> order;

  void validate() const;
  OrderSolution resolved_order() const;
};

/// A, B and D recovered from per-spin trace products. A == D holds exactly
/// only without transverse field; callers compare them.
struct OracleCoeffs {
  cdouble A;
  cdouble B;
  cdouble D;
};

/// Reduced two-qubit states from the factorized evolution: the interaction
/// is diagonal in the qubits' z basis, so every matrix element is a product
/// of identical single-spin conditional traces.
std::vector<TwoQubitDensity> simulate_exact(const OracleConfig& cfg);

struct DenseOptions {
  /// Keep the m^2 J N constant of the mean-field bath Hamiltonian.
  bool include_mf_constant = true;
  /// Also return the reduced bath state at each time.
  bool record_bath = false;
};

struct DenseResult {
  std::vector<TwoQubitDensity> system;
  std::vector<Eigen::MatrixXcd> bath;
};

/// Full Kronecker construction of H on 2^(N+2) states, evolution of
/// |Psi><Psi| x rho_B and partial trace. H is checked to be block diagonal
/// in the qubit basis; each 2^N block is diagonalized separately.
/// N <= kMaxDenseBath.
DenseResult simulate_dense(const OracleConfig& cfg, const DenseOptions& opts = {});

/// Per-spin trace products with the three-matrix closed form, raised to N.
std::vector<OracleCoeffs> extract_coeffs(const OracleConfig& cfg);

/// S0^-(t)/S0^-(0) for one qubit with H_s = -mu0 S0^z, by trace products.
/// Any N >= 1.
std::vector<cdouble> single_qubit_coherence_exact(std::uint64_t N, const BathParams& bath,
                                                  const SystemParams& sys,
                                                  std::span<const double> times,
                                                  std::optional<OrderSolution> order = {});

/// Same quantity from a dense 2^(N+1) evolution. N <= kMaxDenseBath.
std::vector<cdouble> single_qubit_coherence_dense(int N, const BathParams& bath,
                                                  const SystemParams& sys,
                                                  std::span<const double> times,
                                                  std::optional<OrderSolution> order = {},
                                                  bool include_mf_constant = true);

/// Thermal state exp(-H_B^mf / T)/Z of N bath spins, from a dense
/// eigendecomposition of the mean-field bath Hamiltonian.
Eigen::MatrixXcd dense_bath_state(int N, const BathParams& bath, const OrderSolution& order,
                                  bool include_mf_constant = true);

}  // namespace mfbath::oracle
