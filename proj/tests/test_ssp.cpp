#include <doctest.h>

#include <random>

#include "catalog_data.hpp"
#include "essp/error.hpp"
#include "essp/methods.hpp"
#include "essp/ssp.hpp"
#include "support.hpp"

using namespace essp;

TEST_CASE("absolute monotonicity") {
  SUBCASE("forward Euler: e - rKe = (1, 1 - r)") {
    CHECK(abs_monotonic(forward_euler(), 1.0).feasible);
    const FeasibilityReport over = abs_monotonic(forward_euler(), 1.0 + 1e-6);
    CHECK(!over.feasible);
    CHECK(over.row == 1);
    CHECK(over.col == -1);
    CHECK(over.min_entry == doctest::Approx(-1e-6));
  }
  SUBCASE("SSPRK(3,3) at r = 1") { CHECK(abs_monotonic(essprk_332(0.25), 1.0).feasible); }
  SUBCASE("RK4 at r = 0.05") { CHECK(!abs_monotonic(classical_rk4(), 0.05).feasible); }
  SUBCASE("negative radius") { CHECK_THROWS_AS(abs_monotonic(forward_euler(), -1.0), DomainError); }
}

TEST_CASE("monotonicity matrix against explicit inversion") {
  std::mt19937_64 rng(23);
  for (int s = 1; s <= 6; ++s) {
    const ButcherTableau t = test::random_tableau(rng, s);
    const double r = 0.7;
    const Eigen::MatrixXd direct =
        t.k_matrix() * (Eigen::MatrixXd::Identity(s, s) + r * t.a()).inverse();
    CHECK((monotonicity_matrix(t, r) - direct).cwiseAbs().maxCoeff() <= 1e-13);
  }
}

TEST_CASE("SSP coefficients") {
  CHECK(ssp_coefficient(forward_euler()).coefficient == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(ssp_coefficient(classical_rk4()).coefficient == 0.0);
  CHECK(std::abs(ssp_coefficient(detail::essprk442_main()).coefficient - 0.88) <= 0.02);
  CHECK(std::abs(ssp_coefficient(detail::essprk542_main()).coefficient - 1.95) <= 0.02);
  CHECK(std::abs(ssp_coefficient(shu_osher_to_butcher(family_n2p1(3))).coefficient - 6.0) <=
        1e-6);

  const SspResult r = ssp_coefficient(essprk_432(0.3));
  CHECK(r.lo <= r.coefficient);
  CHECK(r.coefficient <= r.hi);
  CHECK(r.hi - r.lo <= 1e-10);
  CHECK(r.effective_coefficient == r.coefficient / 4);
  CHECK(r.certificate.feasible);

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
  a(1, 0) = 1.0;
  const SspResult neg = ssp_coefficient(ButcherTableau(a, Eigen::Vector2d(1.5, -0.5)));
  CHECK(neg.coefficient == 0.0);
  CHECK(!neg.certificate.feasible);
}

TEST_CASE("feasibility is monotone in r") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    const ButcherTableau t = test::random_tableau(rng, 1 + trial % 6);
    const double c = ssp_coefficient(t).coefficient;
    for (double frac : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      CHECK(abs_monotonic(t, frac * c).feasible);
    }
  }
}

TEST_CASE("catalog methods with positive C have positive weights") {
  for (const auto& e : catalog()) {
    if (ssp_coefficient(e.main).coefficient > 0.0) {
      CHECK_MESSAGE((e.main.b().array() > 0.0).all(), e.label);
    }
  }
}
