#include <doctest.h>

#include <cmath>

#include "mfbath/entanglement.hpp"
#include "mfbath/error.hpp"
#include "mfbath/oracle.hpp"
#include "support.hpp"

using namespace mfbath;
using namespace mfbath::oracle;

namespace {

OracleConfig make_config(int N, double w, double T = 0.5, double xi0 = 0.3) {
  OracleConfig c;
  c.N = N;
  c.bath = {2.0, w, T};
  c.sys = {1.0, 0.0, xi0};
  c.state = PureState2Q::normalized(
      {cdouble(0.3, 0.1), cdouble(0.5, -0.2), cdouble(0.4, 0.3), cdouble(-0.6, 0.2)});
  for (int k = 0; k < 20; ++k) c.times.push_back(0.4 * k);
  return c;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

// Largest elementwise gap between the factorized oracle and the closed forms.
double closed_form_gap(const OracleConfig& c) {
  const auto exact = simulate_exact(c);
  const auto sol = c.resolved_order();
  double worst = 0.0;
  for (std::size_t k = 0; k < c.times.size(); ++k) {
    const auto dc = dephasing_coeffs(c.times[k], FiniteMode{static_cast<std::uint64_t>(c.N)}, sol,
                                     c.bath, c.sys);
    worst = std::max(worst, max_abs(exact[k].rho - evolve_reduced(c.state, c.times[k], c.sys.xi0, dc).rho));
  }
  return worst;
}

}  // namespace

TEST_CASE("Ising bath: oracle reproduces the closed forms") {
  for (int N : {1, 2, 3, 4, 6, 8, 12}) {
    for (double T : {0.25, 0.5, 0.75}) {
      const auto c = make_config(N, 0.0, T);
      CHECK(closed_form_gap(c) < 1e-12);
      const auto sol = c.resolved_order();
      const auto coeffs = extract_coeffs(c);
      for (std::size_t k = 0; k < c.times.size(); ++k) {
        const auto dc = dephasing_coeffs(c.times[k], FiniteMode{static_cast<std::uint64_t>(N)}, sol,
                                         c.bath, c.sys);
        CHECK(std::abs(coeffs[k].A - dc.A) < 1e-12);
        CHECK(std::abs(coeffs[k].B - dc.B) < 1e-12);
        CHECK(std::abs(coeffs[k].A - coeffs[k].D) < 1e-12);
      }
    }
  }
}

TEST_CASE("transverse field: closed-form gap is second order in w") {
  const double g1 = closed_form_gap(make_config(4, 0.1));
  const double g2 = closed_form_gap(make_config(4, 0.05));
  const double g3 = closed_form_gap(make_config(4, 0.025));
  CHECK(g1 > 1e-5);
  CHECK(g1 / g2 == doctest::Approx(4.0).epsilon(0.1));
  CHECK(g2 / g3 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("dense and factorized paths agree") {
  for (int N : {1, 2, 3, 5}) {
    for (double w : {0.0, 0.1, 0.4}) {
      const auto c = make_config(N, w, 0.6);
      const auto exact = simulate_exact(c);
      const auto dense = simulate_dense(c);
      REQUIRE(dense.system.size() == exact.size());
      for (std::size_t k = 0; k < exact.size(); ++k)
        CHECK(max_abs(dense.system[k].rho - exact[k].rho) < 1e-12);
    }
  }
}

TEST_CASE("the mean-field constant does not affect the reduced state") {
  const auto c = make_config(3, 0.2);
  const auto with = simulate_dense(c, {.include_mf_constant = true});
  const auto without = simulate_dense(c, {.include_mf_constant = false});
  for (std::size_t k = 0; k < c.times.size(); ++k)
    CHECK(max_abs(with.system[k].rho - without.system[k].rho) < 1e-12);
}

TEST_CASE("bath state is a product of single-spin Gibbs states") {
  const BathParams bath{2.0, 0.3, 0.6};
  const auto sol = solve_order(bath);
  const Mat2 one = single_spin_gibbs(bath.w, 2.0 * sol.m * bath.J, bath.T);
  Eigen::MatrixXcd product = one;
  for (int k = 1; k < 3; ++k) {
    Eigen::MatrixXcd next(product.rows() * 2, product.cols() * 2);
    for (int i = 0; i < product.rows(); ++i)
      for (int j = 0; j < product.cols(); ++j) next.block<2, 2>(2 * i, 2 * j) = product(i, j) * one;
    product = next;
  }
  CHECK(max_abs(dense_bath_state(3, bath, sol) - product) < 1e-14);
}

TEST_CASE("recorded bath states stay normalized") {
  auto c = make_config(3, 0.1);
  const auto res = simulate_dense(c, {.record_bath = true});
  REQUIRE(res.bath.size() == c.times.size());
  CHECK(max_abs(res.bath.front() - dense_bath_state(3, c.bath, c.resolved_order())) < 1e-13);
  for (const auto& b : res.bath) {
    CHECK(std::abs(b.trace() - 1.0) < 1e-13);
    CHECK(max_abs(b - b.adjoint()) < 1e-13);
  }
}

TEST_CASE("reduced states from the oracle are physical") {
  for (int N : {1, 4, 9}) {
    const auto c = make_config(N, 0.3, 0.4);
    for (const auto& d : simulate_exact(c)) CHECK_NOTHROW(validate_density(d));
  }
}

TEST_CASE("single-qubit routes") {
  const BathParams bath{2.0, 0.1, 0.5};
  const SystemParams sys{1.0, 0.6, 0.0};
  const std::vector<double> times{0.0, 0.5, 2.0, 7.5};
  for (int N : {1, 3, 6}) {
    const auto exact = single_qubit_coherence_exact(static_cast<std::uint64_t>(N), bath, sys, times);
    const auto dense = single_qubit_coherence_dense(N, bath, sys, times);
    for (std::size_t k = 0; k < times.size(); ++k) CHECK(std::abs(exact[k] - dense[k]) < 1e-12);
    CHECK(std::abs(exact[0] - 1.0) < 1e-15);
  }
  const BathParams ising{2.0, 0.0, 0.5};
  const auto sol = solve_order(ising);
  const auto exact = single_qubit_coherence_exact(5, ising, sys, times);
  for (std::size_t k = 0; k < times.size(); ++k)
    CHECK(std::abs(exact[k] - coherence_factor_finite(times[k], 5, sol, ising, sys,
                                                      {.include_free_phase = true})) < 1e-13);
}

TEST_CASE("supplied order solution is used as given") {
  auto c = make_config(2, 0.0);
  c.order = OrderSolution{0.0, 0.0, Phase::disordered};
  // With m = 0 and w = 0 every bath spin is maximally mixed and A is
  // cos^N(t J0 / (2 sqrt N)) for the one-excitation coherences.
  const auto coeffs = extract_coeffs(c);
  for (std::size_t k = 0; k < c.times.size(); ++k)
    CHECK(std::abs(coeffs[k].A - std::pow(std::cos(c.times[k] / (2 * std::sqrt(2.0))), 2)) < 1e-13);
}

TEST_CASE("size limits and validation") {
  CHECK_THROWS_AS(simulate_exact(make_config(13, 0.1)), ConfigTooLarge);
  CHECK_THROWS_AS(simulate_exact(make_config(0, 0.1)), ConfigTooLarge);
  CHECK_THROWS_AS(simulate_dense(make_config(9, 0.1)), ConfigTooLarge);
  CHECK_THROWS_AS(dense_bath_state(9, {}, {}), ConfigTooLarge);
  auto c = make_config(2, 0.1);
  c.times.push_back(NAN);
  CHECK_THROWS_AS(simulate_exact(c), InvalidParams);
  c = make_config(2, 0.1);
  c.state.amp = {1.0, 1.0, 0.0, 0.0};
  CHECK_THROWS_AS(simulate_exact(c), InvalidState);
}

TEST_CASE("oracle starting point") {
  const auto c = make_config(4, 0.1);
  const auto coeffs = extract_coeffs(c);
  CHECK(std::abs(coeffs[0].A - 1.0) < 1e-15);
  CHECK(std::abs(coeffs[0].B - 1.0) < 1e-15);
  CHECK(std::abs(single_qubit_coherence_exact(6, c.bath, c.sys, std::vector<double>{0.0})[0] - 1.0) < 1e-15);
}

TEST_CASE("uncoupled system evolves under the Ising gate alone") {
  auto c = make_config(5, 0.2);
  c.sys.J0 = 0.0;
  const auto exact = simulate_exact(c);
  for (std::size_t k = 0; k < c.times.size(); ++k) {
    const auto p = evolve_pure(c.state, c.times[k], c.sys.xi0);
    Eigen::Vector4cd psi;
    for (int i = 0; i < 4; ++i) psi(i) = p.amp[i];
    CHECK(max_abs(exact[k].rho - psi * psi.adjoint()) < 1e-14);
  }
}

TEST_CASE("case 1 concurrence is untouched by the bath") {
  auto c = make_config(6, 0.1);
  c.state = PureState2Q::normalized({0.0, 0.6, cdouble(0.0, 0.8), 0.0});
  for (const auto& d : simulate_exact(c)) CHECK(std::abs(concurrence(d).c - 0.96) < 1e-12);
}

TEST_CASE("trace-product and dense single-qubit routes on random parameters") {
  for (int k = 0; k < 10; ++k) {
    const BathParams bath{testing::uniform(0.5, 3.0), testing::uniform(0.0, 0.6), testing::uniform(0.1, 2.0)};
    const SystemParams sys{testing::uniform(0.1, 2.0), testing::uniform(0.0, 1.0), 0.0};
    std::vector<double> times;
    for (int i = 0; i < 8; ++i) times.push_back(testing::uniform(0.0, 15.0));
    const auto exact = single_qubit_coherence_exact(6, bath, sys, times);
    const auto dense = single_qubit_coherence_dense(6, bath, sys, times);
    for (std::size_t i = 0; i < times.size(); ++i) CHECK(std::abs(exact[i] - dense[i]) < 1e-11);
  }
}

TEST_CASE("a thousand spins sit within O(1/N) of the Gaussian") {
  const SystemParams sys{1.0, 0.0, 0.0};
  for (double w : {0.0, 0.1}) {
    const BathParams bath{2.0, w, 0.5};
    const auto sol = solve_order(bath);
    const double tau = coherence_time(sol, bath, sys);
    std::vector<double> times;
    for (int k = 0; k <= 300; ++k) times.push_back(3.0 * tau * k / 300);
    double gap[2] = {0.0, 0.0};
    for (int j = 0; j < 2; ++j) {
      const std::uint64_t N = j ? 4000 : 1000;
      const auto r = single_qubit_coherence_exact(N, bath, sys, times);
      for (std::size_t k = 0; k < times.size(); ++k)
        gap[j] = std::max(gap[j], std::abs(std::abs(r[k]) - coherence_magnitude_asymptotic(times[k], sol, bath, sys)));
    }
    CHECK(gap[0] < 10.0 / 1000);
    CHECK(gap[0] / gap[1] == doctest::Approx(4.0).epsilon(0.05));
  }
}

TEST_SUITE("transverse field exactness") {
  TEST_CASE("six-spin single-qubit coherence at w = 0.1") {
    const BathParams bath{2.0, 0.1, 0.5};
    const SystemParams sys{1.0, 0.0, 0.0};
    const auto sol = solve_order(bath);
    const std::vector<double> times{0.5, 1.0, 2.0};
    const auto exact = single_qubit_coherence_exact(6, bath, sys, times);
    for (std::size_t k = 0; k < times.size(); ++k)
      CHECK(std::abs(exact[k] - coherence_factor_finite(times[k], 6, sol, bath, sys)) < 1e-10);
  }

  TEST_CASE("four-spin reduced state at w = 0.1") {
    CHECK(closed_form_gap(make_config(4, 0.1)) < 1e-10);
  }

  TEST_CASE("A equals D on random draws") {
    for (int k = 0; k < 100; ++k) {
      auto c = make_config(1 + k % 6, testing::uniform(0.0, 0.5), testing::uniform(0.1, 1.5));
      c.bath.J = testing::uniform(0.5, 3.0);
      c.sys.J0 = testing::uniform(0.1, 2.0);
      for (const auto& co : extract_coeffs(c)) CHECK(std::abs(co.A - co.D) < 1e-12);
    }
  }

  TEST_CASE("oracle coefficients match the closed form at w = 0.1") {
    for (int N : {1, 2, 4, 6, 8}) {
      const auto c = make_config(N, 0.1);
      const auto sol = c.resolved_order();
      const auto coeffs = extract_coeffs(c);
      for (std::size_t k = 0; k < c.times.size(); ++k) {
        const auto dc = dephasing_coeffs(c.times[k], FiniteMode{static_cast<std::uint64_t>(N)}, sol, c.bath, c.sys);
        CHECK(std::abs(coeffs[k].A - dc.A) < 1e-11);
        CHECK(std::abs(coeffs[k].B - dc.B) < 1e-11);
      }
    }
  }
}
