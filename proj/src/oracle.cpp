#include "mfbath/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>

#include "mfbath/error.hpp"
#include "mfbath/su2.hpp"

namespace mfbath::oracle {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;

// S^z eigenvalue of a single-qubit basis label: |0> -> +1/2, |1> -> -1/2.
double sz_of(int bit) { return bit == 0 ? 0.5 : -0.5; }

cdouble ipow(cdouble base, std::uint64_t n) {
  cdouble result{1.0, 0.0};
  while (n > 0) {
    if (n & 1u) result *= base;
    base *= base;
    n >>= 1u;
  }
  return result;
}

// i * (generator of e^{-i h_S t}) for one bath spin when the system sits in
// a sector of total S^z = s:  h_s = -(s J0/sqrt N + 2 m J) S^z - w S^x.
TracelessXZ conditional_generator(double t, double s, double n, const BathParams& bath,
                                  const SystemParams& sys, const OrderSolution& order) {
  const double field_z = s * sys.J0 / std::sqrt(n) + 2.0 * order.m * bath.J;
  return {0.5 * t * bath.w, 0.5 * t * field_z};
}

TracelessXZ thermal_generator(const BathParams& bath, const OrderSolution& order) {
  return {bath.w / (2.0 * bath.T), order.m * bath.J / bath.T};
}

Eigen::Matrix2d sx2() {
  Eigen::Matrix2d m;
  m << 0.0, 0.5, 0.5, 0.0;
  return m;
}

Eigen::Matrix2d sz2() {
  Eigen::Matrix2d m;
  m << 0.5, 0.0, 0.0, -0.5;
  return m;
}

// Product of single-site operators on an L-site chain, site 0 most significant.
MatrixXd site_product(const std::map<int, Eigen::Matrix2d>& ops, int L) {
  MatrixXd out = MatrixXd::Ones(1, 1);
  // Each new factor goes to the left, so iterate from the last site.
  for (int site = L - 1; site >= 0; --site) {
    const auto it = ops.find(site);
    const Eigen::Matrix2d op = it == ops.end() ? Eigen::Matrix2d::Identity() : it->second;
    MatrixXd next(out.rows() * 2, out.cols() * 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) next.block(r * out.rows(), c * out.cols(), out.rows(), out.cols()) = op(r, c) * out;
    out = std::move(next);
  }
  return out;
}

// Mean-field bath Hamiltonian -w sum S^x - 2mJ sum S^z (+ m^2 J N) on the
// last N sites of an L-site chain.
MatrixXd bath_hamiltonian(int N, int L, const BathParams& bath, const OrderSolution& order,
                          bool include_constant) {
  const long dim = 1L << L;
  MatrixXd h = MatrixXd::Zero(dim, dim);
  for (int k = L - N; k < L; ++k) {
    h -= bath.w * site_product({{k, sx2()}}, L);
    h -= 2.0 * order.m * bath.J * site_product({{k, sz2()}}, L);
  }
  if (include_constant) h += order.m * order.m * bath.J * N * MatrixXd::Identity(dim, dim);
  return h;
}

void check_dense_size(int N) {
  if (N < 1) throw InvalidParams("bath size N must be >= 1");
  if (N > kMaxDenseBath)
    throw ConfigTooLarge("dense path supports N <= " + std::to_string(kMaxDenseBath) +
                         ", got " + std::to_string(N));
}

void check_times(std::span<const double> times) {
  for (double t : times)
    if (!std::isfinite(t)) throw InvalidParams("oracle: non-finite time");
}

struct DenseEvolution {
  std::vector<MatrixXcd> system;
  std::vector<MatrixXcd> bath;
};

// Evolves rho_s x rho_b under H (real symmetric, system as the high index)
// and traces out either factor. H must commute with the system basis
// projectors; each diagonal block H_i = V_i E_i V_i^T is diagonalized on its
// own and
//   tr(U_i rho_b U_j^+) = sum_kl e^{-i E_ik t} P_ij(k, l) e^{+i E_jl t},
//   P_ij = (V_i^T rho_b V_j) o (V_j^T V_i)^T,
// so each time step costs one pass over P_ij.
DenseEvolution dense_evolve(const MatrixXd& h, const MatrixXcd& rho_s, const MatrixXd& rho_b,
                            std::span<const double> times, bool record_bath) {
  const long sys_dim = rho_s.rows();
  const long bath_dim = rho_b.rows();
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  for (long i = 0; i < sys_dim; ++i)
    for (long j = 0; j < sys_dim; ++j)
      if (i != j && h.block(i * bath_dim, j * bath_dim, bath_dim, bath_dim).cwiseAbs().maxCoeff() >
                        1e-14 * scale)
        throw Error("dense oracle: Hamiltonian mixes system basis states");

  std::vector<Eigen::VectorXd> energies;
  std::vector<MatrixXd> vectors;
  for (long i = 0; i < sys_dim; ++i) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(h.block(i * bath_dim, i * bath_dim, bath_dim, bath_dim));
    if (es.info() != Eigen::Success) throw NoConvergence("dense oracle: eigensolver failed");
    energies.push_back(es.eigenvalues());
    vectors.push_back(es.eigenvectors());
  }

  std::vector<std::vector<MatrixXd>> pair(sys_dim, std::vector<MatrixXd>(sys_dim));
  for (long i = 0; i < sys_dim; ++i)
    for (long j = i; j < sys_dim; ++j)
      if (rho_s(i, j) != cdouble{} || rho_s(j, i) != cdouble{})
        pair[i][j] = (vectors[i].transpose() * rho_b * vectors[j]).cwiseProduct(
            (vectors[j].transpose() * vectors[i]).transpose());

  DenseEvolution out;
  std::vector<Eigen::VectorXcd> ph(sys_dim, Eigen::VectorXcd(bath_dim));
  for (double t : times) {
    for (long i = 0; i < sys_dim; ++i)
      for (long k = 0; k < bath_dim; ++k) ph[i](k) = std::polar(1.0, -energies[i](k) * t);
    MatrixXcd rs = MatrixXcd::Zero(sys_dim, sys_dim);
    for (long i = 0; i < sys_dim; ++i)
      for (long j = i; j < sys_dim; ++j) {
        if (pair[i][j].size() == 0) continue;
        const cdouble tr = ph[i].transpose() * pair[i][j].cast<cdouble>() * ph[j].conjugate();
        rs(i, j) = rho_s(i, j) * tr;
        if (j != i) rs(j, i) = rho_s(j, i) * std::conj(tr);
      }
    out.system.push_back(rs);
    if (record_bath) {
      MatrixXcd rb = MatrixXcd::Zero(bath_dim, bath_dim);
      for (long i = 0; i < sys_dim; ++i) {
        const MatrixXcd u = vectors[i].cast<cdouble>() * ph[i].asDiagonal() * vectors[i].transpose();
        rb += rho_s(i, i) * u * rho_b * u.adjoint();
      }
      out.bath.push_back(rb);
    }
  }
  return out;
}

}  // namespace

void OracleConfig::validate() const {
  if (N < 1 || N > kMaxOracleBath)
    throw ConfigTooLarge("oracle bath size must be in [1, " + std::to_string(kMaxOracleBath) +
                         "], got " + std::to_string(N));
  bath.validate();
  sys.validate();
  state.validate();
  check_times(times);
  if (order) {
    if (!(order->m >= 0.0 && order->m <= 0.5) || !(order->theta >= 0.0))
      throw InvalidParams("oracle: order solution out of range");
  }
}

OrderSolution OracleConfig::resolved_order() const { return order ? *order : solve_order(bath); }

std::vector<TwoQubitDensity> simulate_exact(const OracleConfig& cfg) {
  cfg.validate();
  const OrderSolution ord = cfg.resolved_order();
  const double n = cfg.N;
  const Mat2 rho1 = single_spin_gibbs(cfg.bath.w, 2.0 * ord.m * cfg.bath.J, cfg.bath.T);

  std::array<double, 4> sector{};  // total S^z
  std::array<double, 4> energy{};  // -xi0 s1 s2
  for (int i = 0; i < 4; ++i) {
    const double s1 = sz_of(i >> 1), s2 = sz_of(i & 1);
    sector[i] = s1 + s2;
    energy[i] = -cfg.sys.xi0 * s1 * s2;
  }

  std::vector<TwoQubitDensity> out;
  out.reserve(cfg.times.size());
  for (double t : cfg.times) {
    std::array<Mat2, 4> u;
    for (int i = 0; i < 4; ++i)
      u[i] = exp_imag(conditional_generator(t, sector[i], n, cfg.bath, cfg.sys, ord));
    TwoQubitDensity d;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        const cdouble per_spin = (u[i] * rho1 * u[j].adjoint()).trace();
        d.rho(i, j) = cfg.state.amp[i] * std::conj(cfg.state.amp[j]) *
                      std::polar(1.0, -(energy[i] - energy[j]) * t) *
                      ipow(per_spin, static_cast<std::uint64_t>(cfg.N));
      }
    }
    out.push_back(d);
  }
  return out;
}

DenseResult simulate_dense(const OracleConfig& cfg, const DenseOptions& opts) {
  cfg.validate();
  check_dense_size(cfg.N);
  const OrderSolution ord = cfg.resolved_order();
  const int N = cfg.N;
  const int L = N + 2;
  const double g = cfg.sys.J0 / std::sqrt(static_cast<double>(N));

  MatrixXd h = bath_hamiltonian(N, L, cfg.bath, ord, opts.include_mf_constant);
  h -= cfg.sys.xi0 * site_product({{0, sz2()}, {1, sz2()}}, L);
  for (int k = 2; k < L; ++k) {
    h -= g * site_product({{0, sz2()}, {k, sz2()}}, L);
    h -= g * site_product({{1, sz2()}, {k, sz2()}}, L);
  }

  const MatrixXcd rho_b = dense_bath_state(N, cfg.bath, ord, opts.include_mf_constant);
  Eigen::Vector4cd psi;
  for (int i = 0; i < 4; ++i) psi(i) = cfg.state.amp[i];
  const MatrixXcd rho_s = psi * psi.adjoint();
  auto ev = dense_evolve(h, rho_s, rho_b.real(), cfg.times, opts.record_bath);
  DenseResult out;
  for (auto& m : ev.system) out.system.push_back({Mat4(m)});
  out.bath = std::move(ev.bath);
  return out;
}

Eigen::MatrixXcd dense_bath_state(int N, const BathParams& bath, const OrderSolution& order,
                                  bool include_mf_constant) {
  check_dense_size(N);
  bath.validate();
  const MatrixXd hb = bath_hamiltonian(N, N, bath, order, include_mf_constant);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(hb);
  if (es.info() != Eigen::Success) throw NoConvergence("dense oracle: bath eigensolver failed");
  const Eigen::VectorXd& e = es.eigenvalues();
  // Shift by the ground energy before exponentiating; Z absorbs it.
  Eigen::VectorXd weights = (-(e.array() - e.minCoeff()) / bath.T).exp();
  weights /= weights.sum();
  const MatrixXd rho = es.eigenvectors() * weights.asDiagonal() * es.eigenvectors().transpose();
  return rho.cast<cdouble>();
}

std::vector<OracleCoeffs> extract_coeffs(const OracleConfig& cfg) {
  cfg.validate();
  const OrderSolution ord = cfg.resolved_order();
  const double n = cfg.N;
  const auto N = static_cast<std::uint64_t>(cfg.N);
  const TracelessXZ r = thermal_generator(cfg.bath, ord);

  std::vector<OracleCoeffs> out;
  out.reserve(cfg.times.size());
  for (double t : cfg.times) {
    const TracelessXZ up = conditional_generator(t, 1.0, n, cfg.bath, cfg.sys, ord);
    const TracelessXZ mid = conditional_generator(t, 0.0, n, cfg.bath, cfg.sys, ord);
    const TracelessXZ down = conditional_generator(t, -1.0, n, cfg.bath, cfg.sys, ord);
    // Starred coefficients: left propagator sector, thermal factor, right
    // propagator sector (as its adjoint, i.e. negated generator).
    const cdouble a_star = ipow(trace_triple_normalized(mid, r, -up), N);
    const cdouble b_star = ipow(trace_triple_normalized(down, r, -up), N);
    const cdouble d_star = ipow(trace_triple_normalized(down, r, -mid), N);
    out.push_back({std::conj(a_star), std::conj(b_star), std::conj(d_star)});
  }
  return out;
}

std::vector<cdouble> single_qubit_coherence_exact(std::uint64_t N, const BathParams& bath,
                                                  const SystemParams& sys,
                                                  std::span<const double> times,
                                                  std::optional<OrderSolution> order) {
  if (N == 0) throw InvalidParams("bath size N must be >= 1");
  bath.validate();
  sys.validate();
  check_times(times);
  const OrderSolution ord = order ? *order : solve_order(bath);
  const double n = static_cast<double>(N);
  const TracelessXZ r = thermal_generator(bath, ord);
  std::vector<cdouble> out;
  out.reserve(times.size());
  for (double t : times) {
    // |0><1|: the |0> (S^z = +1/2) propagator acts from the left.
    const TracelessXZ left = conditional_generator(t, 0.5, n, bath, sys, ord);
    const TracelessXZ right = conditional_generator(t, -0.5, n, bath, sys, ord);
    const cdouble per_spin = trace_triple_normalized(left, r, -right);
    out.push_back(ipow(per_spin, N) * std::polar(1.0, sys.mu0 * t));
  }
  return out;
}

std::vector<cdouble> single_qubit_coherence_dense(int N, const BathParams& bath,
                                                  const SystemParams& sys,
                                                  std::span<const double> times,
                                                  std::optional<OrderSolution> order,
                                                  bool include_mf_constant) {
  check_dense_size(N);
  bath.validate();
  sys.validate();
  check_times(times);
  const OrderSolution ord = order ? *order : solve_order(bath);
  const int L = N + 1;
  const double g = sys.J0 / std::sqrt(static_cast<double>(N));

  MatrixXd h = bath_hamiltonian(N, L, bath, ord, include_mf_constant);
  h -= sys.mu0 * site_product({{0, sz2()}}, L);
  for (int k = 1; k < L; ++k) h -= g * site_product({{0, sz2()}, {k, sz2()}}, L);

  const MatrixXcd rho_b = dense_bath_state(N, bath, ord, include_mf_constant);
  MatrixXcd op_s = MatrixXcd::Zero(2, 2);
  op_s(0, 1) = 1.0;  // |0><1|

  const auto ev = dense_evolve(h, op_s, rho_b.real(), times, false);
  std::vector<cdouble> out;
  out.reserve(times.size());
  for (const auto& m : ev.system) out.push_back(m(0, 1));
  return out;
}

}  // namespace mfbath::oracle
