#include <doctest.h>

#include <cmath>

#include "essp/error.hpp"
#include "essp/methods.hpp"
#include "essp/order_conditions.hpp"
#include "essp/ssp.hpp"

using namespace essp;

TEST_CASE("three-stage family") {
  const ButcherTableau g1 = essprk_332(1.0);
  CHECK(g1.b()(0) == doctest::Approx(2.0 / 3.0));
  CHECK(g1.b()(1) == doctest::Approx(1.0 / 6.0));
  CHECK(g1.b()(2) == doctest::Approx(1.0 / 6.0));
  CHECK(std::abs(ssp_coefficient(essprk_332(0.5)).coefficient - 1.0) <= 1e-9);
  CHECK(classical_order(essprk_332(0.25)).value == 3);
  CHECK_THROWS_AS(essprk_332(0.2), DomainError);
  CHECK_THROWS_AS(essprk_332(1.01), DomainError);
}

TEST_CASE("four-stage family") {
  const ButcherTableau g = essprk_432(0.5);
  CHECK(g.b()(0) == doctest::Approx(0.5));
  for (int i = 1; i < 4; ++i) CHECK(g.b()(i) == doctest::Approx(1.0 / 6.0));
  CHECK(classical_order(essprk_432(1.0 / 6.0)).value == 3);
  CHECK_THROWS_AS(essprk_432(0.1), DomainError);
  CHECK_THROWS_AS(essprk_432(0.6), DomainError);
}

TEST_CASE("family SSP coefficients are constant across gamma") {
  for (int k = 0; k < 20; ++k) {
    const double g3 = 0.25 + 0.75 * k / 19.0;
    const double g4 = 1.0 / 6.0 + (0.5 - 1.0 / 6.0) * k / 19.0;
    CHECK(std::abs(ssp_coefficient(essprk_332(g3)).coefficient - 1.0) <= 1e-8);
    CHECK(std::abs(ssp_coefficient(essprk_432(g4)).coefficient - 2.0) <= 1e-8);
    CHECK(effective_order(essprk_332(g3)) >= 3);
    CHECK(effective_order(essprk_432(g4)) >= 3);
    if (k > 0 && k < 19) {
      CHECK(classical_order(essprk_332(g3)).value == 2);
      CHECK(classical_order(essprk_432(g4)).value == 2);
    }
  }
}

TEST_CASE("n^2 + 1 stage family") {
  for (int n : {3, 4}) {
    for (FamilyBranch br : {FamilyBranch::kPlus, FamilyBranch::kMinus}) {
      const ShuOsherForm so = family_n2p1(n, br);
      CHECK(validate(so).empty());
      const ButcherTableau t = shu_osher_to_butcher(so);
      CHECK(t.stages() == n * n + 1);
      CHECK(std::abs(ssp_coefficient(t).coefficient - (n * n - n)) <= 1e-6);
      CHECK(classical_order(t).value == 2);
      CHECK(effective_order(t) == 4);
      const auto res =
          effective_order_residuals(elementary_weights(t), EffectiveOrderSpec::make(4, 2));
      for (double r : res) CHECK(std::abs(r) <= 1e-10);
    }
  }
  CHECK(family_n2p1(3).v(10) == doctest::Approx(0.04));
  CHECK_THROWS_AS(family_n2p1(2), DomainError);
}

TEST_CASE("catalog") {
  const auto& entries = catalog();
  CHECK(entries.size() == 9);
  for (const auto& e : entries) {
    CAPTURE(e.label);
    CHECK(classical_order(e.main).value == e.p);
    CHECK(effective_order(e.main) >= e.q);
    CHECK(ssp_coefficient(e.main).coefficient >= e.ssp_coefficient - 0.005 * e.main.stages());
    if (e.start) {
      CHECK(e.start->stages() <= e.main.stages() + 1);
      CHECK(e.stop->stages() <= e.main.stages());
      // Starting and stopping methods are at least as SSP as the main method.
      CHECK(ssp_coefficient(*e.start).coefficient >= ssp_coefficient(e.main).coefficient - 1e-9);
      CHECK(ssp_coefficient(*e.stop).coefficient >= ssp_coefficient(e.main).coefficient - 1e-9);
    }
  }
  CHECK(find_catalog_entry("ESSPRK(4,4,2)").main.b()(0) == 0.384422161080494);
  CHECK(find_catalog_entry("ESSPRK(4,4,3)").stop->c()(1) == doctest::Approx(0.556337718891090).epsilon(1e-15));
  CHECK_THROWS_AS(find_catalog_entry("RK(9,9)"), DomainError);
}

TEST_CASE("Shu-Osher and tabulated forms agree") {
  CHECK((shu_osher_to_butcher(ssprk33_shu_osher()).a() - find_catalog_entry("SSPRK(3,3)").main.a())
            .cwiseAbs()
            .maxCoeff() <= 1e-13);
  CHECK((shu_osher_to_butcher(family_n2p1(3)).a() - find_catalog_entry("ESSPRK(10,4,2)").main.a())
            .cwiseAbs()
            .maxCoeff() <= 1e-13);
  CHECK((shu_osher_to_butcher(family_n2p1(4)).b() - find_catalog_entry("ESSPRK(17,4,2)").main.b())
            .cwiseAbs()
            .maxCoeff() <= 1e-13);
}
