#include <doctest.h>

#include <cmath>

#include "catalog_data.hpp"
#include "essp/methods.hpp"
#include "essp/optimizer.hpp"

using namespace essp;

namespace {

SearchConfig quick(int restarts = 4) {
  SearchConfig c;
  c.restarts = restarts;
  return c;
}

}  // namespace

TEST_CASE("config validation") {
  SearchConfig c;
  CHECK_NOTHROW(c.check());
  c.restarts = 0;
  CHECK_THROWS_AS(c.check(), DomainError);
  c = {};
  c.residual_tol = 0.0;
  CHECK_THROWS_AS(c.check(), DomainError);
  c = {};
  c.threads = 0;
  CHECK_THROWS_AS(c.check(), DomainError);
  c = {};
  c.extra_start_stages = -1;
  CHECK_THROWS_AS(optimize_main(3, EffectiveOrderSpec::make(3, 2), c), DomainError);
}

TEST_CASE("three-stage effective order three") {
  const MainSearchOutcome r = optimize_main(3, EffectiveOrderSpec::make(3, 2), quick());
  CHECK(std::abs(r.ssp.coefficient - 1.0) <= 1e-3);
  CHECK(effective_order(r.tableau) >= 3);
  for (double x : r.residuals) CHECK(std::abs(x) <= 1e-10);
  // The parameterization certifies its radius; bisection confirms it.
  CHECK(r.ssp.coefficient >= r.search_radius - 1e-9);
  CHECK(r.ssp.coefficient <= r.search_radius + 1e-5);
  for (std::size_t k = 1; k < r.best_so_far.size(); ++k) {
    CHECK(r.best_so_far[k] >= r.best_so_far[k - 1]);
  }
  CHECK(r.best_so_far.size() == 4);
}

TEST_CASE("search is deterministic and independent of the thread count") {
  SearchConfig serial = quick(3);
  serial.seed = 42;
  SearchConfig parallel = serial;
  parallel.threads = 3;
  const MainSearchOutcome a = optimize_main(4, EffectiveOrderSpec::make(3, 2), serial);
  const MainSearchOutcome b = optimize_main(4, EffectiveOrderSpec::make(3, 2), serial);
  const MainSearchOutcome c = optimize_main(4, EffectiveOrderSpec::make(3, 2), parallel);
  CHECK(a.tableau.a() == b.tableau.a());
  CHECK(a.tableau.b() == b.tableau.b());
  CHECK(a.tableau.a() == c.tableau.a());
  CHECK(a.best_so_far == c.best_so_far);
  CHECK(std::abs(a.ssp.coefficient - 2.0) <= 1e-3);
}

TEST_CASE("effective order five has no SSP method") {
  try {
    const MainSearchOutcome r = optimize_main(4, EffectiveOrderSpec::make(5, 2), quick(2));
    CHECK(r.ssp.coefficient <= 1e-6);
  } catch (const SearchError& e) {
    CHECK(e.best_coefficient() == 0.0);
    CHECK(e.best_residual() > 0.0);
  }
}

TEST_CASE("starting and stopping methods") {
  SUBCASE("classical order q main method") {
    const ButcherTableau m = essprk_332(0.25);
    const StartStopOutcome r = optimize_start_stop(m, EffectiveOrderSpec::make(3, 2), quick(2));
    CHECK(r.residual <= 1e-10);
    CHECK(r.success);
    CHECK(r.beta.free_indices().empty());
    CHECK(std::abs(r.beta.at(2)) <= 1e-12);
  }
  SUBCASE("ESSPRK(4,4,3)") {
    const ButcherTableau m = detail::essprk443_main();
    const StartStopOutcome r = optimize_start_stop(m, EffectiveOrderSpec::make(4, 3), quick(2));
    CHECK(r.residual <= 1e-10);
    CHECK(r.stop.stages() == 4);
    CHECK(r.start.stages() == 5);
    CHECK(r.stop_radius >= 0.88);
    CHECK(r.min_radius >= ssp_coefficient(m).coefficient);
    CHECK(r.success);
  }
  SUBCASE("q = 5 is not tabulated") {
    CHECK_THROWS_AS(optimize_start_stop(classical_rk4(), EffectiveOrderSpec::make(5, 4), quick(1)),
                    DomainError);
  }
}
