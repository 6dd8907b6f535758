#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mfbath/entanglement.hpp"
#include "mfbath/error.hpp"
#include "mfbath/linalg.hpp"
#include "support.hpp"

using namespace mfbath;
using testing::uniform;

namespace {

Mat4 werner(double p) {
  const auto bell = pure_density(case_state(1)).rho;
  return p * bell + (1.0 - p) * Mat4::Identity() / 4.0;
}

}  // namespace

TEST_CASE("Bell states and the maximally mixed state") {
  for (int k : {1, 2}) CHECK(std::abs(concurrence(pure_density(case_state(k))).c - 1.0) < 1e-14);
  CHECK(concurrence({Mat4::Identity() / 4.0}).c == 0.0);
  CHECK(concurrence(pure_density(case_state(3))).c < 1e-14);
}

TEST_CASE("Werner family") {
  for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
    const double expected = std::max(0.0, (3 * p - 1) / 2);
    CHECK(testing::concurrence_direct(werner(p)) == doctest::Approx(expected).epsilon(1e-10));
    CHECK(std::abs(concurrence({werner(p)}).c - expected) < 1e-10);
  }
}

TEST_CASE("agrees with the direct eigenvalue route on mixed states") {
  for (int k = 0; k < 300; ++k) {
    const auto d = testing::random_mixed(1 + k % 4);
    const auto c = concurrence(d);
    CHECK(c.c >= 0.0);
    CHECK(c.c <= 1.0);
    CHECK(std::abs(c.c - testing::concurrence_direct(d.rho)) < 1e-7);
    for (int i = 0; i < 3; ++i) CHECK(c.lambdas[i] >= c.lambdas[i + 1]);
  }
}

TEST_CASE("pure states reduce to 2|alpha delta - beta gamma|") {
  for (int k = 0; k < 1000; ++k) {
    const auto s = testing::random_state();
    CHECK(std::abs(concurrence(pure_density(s)).c - pure_concurrence(s)) < 1e-10);
  }
}

TEST_CASE("local unitaries leave the concurrence unchanged") {
  for (int k = 0; k < 200; ++k) {
    const auto d = testing::random_mixed(1 + k % 3);
    const Mat4 u = testing::kron(testing::random_su2(), testing::random_su2());
    const TwoQubitDensity rotated{u * d.rho * u.adjoint()};
    CHECK(std::abs(concurrence(rotated).c - concurrence(d).c) < 1e-10);
  }
}

TEST_CASE("Hermitian Wootters matrix shares the spectrum of R") {
  for (int k = 0; k < 50; ++k) {
    const auto d = testing::random_mixed();
    const Mat4 h = wootters_hermitian_matrix(d);
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
    const auto eig = linalg::hermitian_eigen<4>(h);
    const auto c = concurrence(d);
    for (int i = 0; i < 4; ++i)
      CHECK(std::sqrt(std::max(0.0, eig.values(i))) == doctest::Approx(c.lambdas[i]).epsilon(1e-7));
  }
}

TEST_CASE("positive square root") {
  const auto d = testing::random_mixed(2);
  const Mat4 s = psd_sqrt(d.rho);
  CHECK((s * s - d.rho).cwiseAbs().maxCoeff() < 1e-14);
  Mat4 bad = Mat4::Identity();
  bad(3, 3) = -0.1;
  CHECK_THROWS_AS(psd_sqrt(bad), NotADensityMatrix);
}

TEST_CASE("invalid inputs are rejected") {
  TwoQubitDensity d{Mat4::Identity() / 2.0};
  CHECK_THROWS_AS(concurrence(d), NotADensityMatrix);
  d.rho = Mat4::Identity() / 4.0;
  d.rho(0, 1) = cdouble(0.0, 0.1);
  CHECK_THROWS_AS(concurrence(d), NotADensityMatrix);
  CHECK_THROWS_AS(case1_concurrence(1.0, 1.0), InvalidState);
  CHECK_THROWS_AS(case2_concurrence(1.0, 1.0, {}), InvalidState);
}

TEST_CASE("case shortcuts match the full pipeline") {
  const BathParams bath{2.0, 0.1, 0.5};
  const auto sol = solve_order(bath);
  const SystemParams sys{1.0, 0.0, 0.3};
  for (int k = 0; k < 50; ++k) {
    const double t = uniform(0.0, 30.0);
    const double a = uniform(0.05, 1.5);
    const auto c = dephasing_coeffs(t, k % 2 ? Mode{AsymptoticMode{}} : Mode{FiniteMode{10000}}, sol,
                                    bath, sys);

    const auto s1 = PureState2Q::normalized({0.0, a, cdouble(0.0, 1.0), 0.0});
    CHECK(std::abs(concurrence(evolve_reduced(s1, t, sys.xi0, c)).c -
                   case1_concurrence(s1.beta(), s1.gamma())) < 1e-10);

    const auto s2 = PureState2Q::normalized({a, 0.0, 0.0, cdouble(0.3, -0.8)});
    CHECK(std::abs(concurrence(evolve_reduced(s2, t, sys.xi0, c)).c -
                   case2_concurrence(s2.alpha(), s2.delta(), c)) < 1e-10);

    CHECK(std::abs(case4_concurrence(t, sys.xi0, c) -
                   concurrence(evolve_reduced(case_state(4), t, sys.xi0, c)).c) < 1e-15);
  }
}

TEST_CASE("case 4 without bath oscillates with full amplitude") {
  for (double t : {0.0, 1.0, 5.0, 10.471975511965978, 30.0})
    CHECK(std::abs(case4_concurrence(t, 0.3, {1.0, 1.0, AsymptoticMode{}}) -
                   std::abs(std::sin(0.15 * t))) < 1e-12);
}

TEST_CASE("Jacobi eigensolver on random Hermitian matrices") {
  for (int k = 0; k < 100; ++k) {
    Mat4 g;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g(i, j) = testing::gaussian_c();
    const Mat4 h = g + g.adjoint();
    const auto e = linalg::hermitian_eigen<4>(h);
    const Mat4 rebuilt = e.vectors * e.values.cast<cdouble>().asDiagonal() * e.vectors.adjoint();
    CHECK((rebuilt - h).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((e.vectors.adjoint() * e.vectors - Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-14);
    for (int i = 0; i < 3; ++i) CHECK(e.values(i) >= e.values(i + 1));
  }
}

TEST_CASE("one-sided Jacobi singular values") {
  for (int k = 0; k < 100; ++k) {
    Mat4 g;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g(i, j) = testing::gaussian_c();
    const auto sv = linalg::singular_values<4>(g);
    Eigen::SelfAdjointEigenSolver<Mat4> es(g.adjoint() * g);
    for (int i = 0; i < 4; ++i)
      CHECK(sv(i) == doctest::Approx(std::sqrt(es.eigenvalues()(3 - i))).epsilon(1e-10));
  }
}

TEST_CASE("case formulas at special points") {
  const double h = 1.0 / std::numbers::sqrt2;
  CHECK(std::abs(case1_concurrence(h, h) - 1.0) < 1e-15);
  CHECK(case1_concurrence(1.0, 0.0) == 0.0);
  CHECK(std::abs(case2_concurrence(h, h, {1.0, 1.0, FiniteMode{5}}) - 1.0) < 1e-15);
  CHECK(case4_concurrence(0.0, 0.3, {1.0, 1.0, AsymptoticMode{}}) < 1e-15);
}

TEST_CASE("case 2 is frozen at zero temperature") {
  const BathParams cold{2.0, 0.0, 1e-4};
  const auto sol = solve_order(cold);
  const SystemParams sys{1.0, 0.0, 0.0};
  const auto s = PureState2Q::normalized({0.6, 0.0, 0.0, cdouble(0.0, 0.8)});
  for (double t : {0.0, 2.0, 40.0, 500.0}) {
    const auto c = dephasing_coeffs(t, AsymptoticMode{}, sol, cold, sys);
    CHECK(std::abs(case2_concurrence(s.alpha(), s.delta(), c) - 0.96) < 1e-14);
  }
}

TEST_CASE("case 2 pipeline across the standard temperatures") {
  const SystemParams sys{1.0, 0.0, 0.0};
  const auto s = case_state(2);
  for (double x : {0.75, 0.5, 0.35, 0.25}) {
    const BathParams bath{2.0, 0.1, x};
    const auto sol = solve_order(bath);
    for (int k = 0; k <= 40; ++k) {
      const double t = 2.0 * k;
      for (Mode mode : {Mode{FiniteMode{1000000}}, Mode{AsymptoticMode{}}}) {
        const auto c = dephasing_coeffs(t, mode, sol, bath, sys);
        CHECK(std::abs(case2_concurrence(s.alpha(), s.delta(), c) -
                       concurrence(evolve_reduced(s, t, sys.xi0, c)).c) < 1e-10);
      }
    }
  }
}

TEST_CASE("case 4 without bath follows the Ising gate") {
  for (int k = 0; k < 50; ++k) {
    const double t = uniform(0.0, 60.0), xi0 = uniform(0.0, 1.0);
    const double gate = pure_concurrence(evolve_pure(case_state(4), t, xi0));
    CHECK(std::abs(gate - std::abs(std::sin(xi0 * t / 2))) < 1e-13);
    CHECK(std::abs(case4_concurrence(t, xi0, {1.0, 1.0, AsymptoticMode{}}) - gate) < 1e-13);
  }
}
