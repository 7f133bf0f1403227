#include <doctest.h>

#include <filesystem>
#include <random>

#include "essp/error.hpp"
#include "essp/integrator.hpp"
#include "essp/methods.hpp"
#include "essp/tableau.hpp"
#include "support.hpp"

using namespace essp;

namespace {

// One step of the Shu-Osher recursion, evaluated directly.
State shu_osher_step(const ShuOsherForm& f, const Rhs& rhs, const State& u, double dt) {
  const int s = f.stages();
  std::vector<State> y;
  std::vector<State> fy;
  for (int i = 0; i <= s; ++i) {
    State yi = f.v(i) * u;
    for (int j = 0; j < i; ++j) {
      yi += f.alpha(i, j) * y[static_cast<std::size_t>(j)] +
            dt * f.beta(i, j) * fy[static_cast<std::size_t>(j)];
    }
    y.push_back(yi);
    if (i < s) fy.push_back(rhs(yi));
  }
  return y.back();
}

bool has_invariant(const std::vector<Violation>& v, const std::string& prefix, int row) {
  for (const auto& x : v) {
    if (x.invariant.rfind(prefix, 0) == 0 && x.row == row) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("tableau construction derives row-sum abscissae") {
  const ButcherTableau t = essprk_332(0.25);
  CHECK(t.stages() == 3);
  CHECK(t.c()(0) == 0.0);
  CHECK(t.c()(1) == doctest::Approx(1.0));
  CHECK(t.c()(2) == doctest::Approx(0.5));
  const Eigen::MatrixXd k = t.k_matrix();
  CHECK(k.rows() == 4);
  CHECK(k.topRows(3) == t.a());
  CHECK(k.row(3).transpose() == t.b());

  CHECK_THROWS_AS(ButcherTableau(Eigen::MatrixXd::Zero(0, 0), Eigen::VectorXd(0)), DomainError);
  CHECK_THROWS_AS(ButcherTableau(Eigen::MatrixXd::Zero(4, 4), Eigen::VectorXd::Ones(3)),
                  DomainError);
}

TEST_CASE("validate") {
  SUBCASE("SSPRK(3,3) is clean") { CHECK(validate(essprk_332(0.25)).empty()); }
  SUBCASE("forward Euler is clean") { CHECK(validate(forward_euler()).empty()); }
  SUBCASE("inconsistent abscissa is reported at its row") {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
    a(1, 0) = 0.7;
    Eigen::VectorXd c(2);
    c << 0.0, 0.5;
    const auto v =
        validate(ButcherTableau::with_abscissae(a, Eigen::Vector2d(0.5, 0.5), c));
    REQUIRE(v.size() == 1);
    CHECK(has_invariant(v, "row-sum", 1));
    CHECK(v[0].magnitude == doctest::Approx(0.2));
  }
  SUBCASE("implicit entry is an error") {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
    a(0, 1) = 0.3;
    const auto v = validate(ButcherTableau(a, Eigen::Vector2d(0.5, 0.5)));
    CHECK(has_invariant(v, "explicit", 0));
  }
  SUBCASE("unused stage is only a warning") {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3);
    a(1, 0) = 1.0;
    a(2, 0) = 1.0;
    const auto v = validate(ButcherTableau(a, Eigen::Vector3d(0.5, 0.0, 0.5)));
    REQUIRE(v.size() == 1);
    CHECK(v[0].severity == Severity::kWarning);
    CHECK(v[0].row == 1);
  }
}

TEST_CASE("Shu-Osher conversion") {
  SUBCASE("SSPRK(3,3)") {
    const ShuOsherForm so = ssprk33_shu_osher();
    CHECK(validate(so).empty());
    const ButcherTableau t = shu_osher_to_butcher(so);
    CHECK(t.b()(0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(t.b()(1) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(t.b()(2) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK((t.a() - essprk_332(0.25).a()).cwiseAbs().maxCoeff() <= 1e-13);
  }
  SUBCASE("pure chain gives a subdiagonal") {
    const int s = 4;
    const double h = 0.3;
    ShuOsherForm so;
    so.v = Eigen::VectorXd::Ones(s + 1);
    so.alpha = Eigen::MatrixXd::Zero(s + 1, s);
    so.beta = Eigen::MatrixXd::Zero(s + 1, s);
    for (int i = 1; i <= s; ++i) so.beta(i, i - 1) = h;
    const ButcherTableau t = shu_osher_to_butcher(so);
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) CHECK(t.a()(i, j) == (i == j + 1 ? h : 0.0));
    CHECK(t.b()(s - 1) == h);
  }
  SUBCASE("family n = 3 has ten stages") {
    CHECK(shu_osher_to_butcher(family_n2p1(3)).stages() == 10);
  }
  SUBCASE("non-explicit form is rejected") {
    ShuOsherForm so = ssprk33_shu_osher();
    so.alpha(1, 1) = 0.5;
    CHECK_THROWS_WITH_AS(shu_osher_to_butcher(so), doctest::Contains("non-explicit"),
                         DomainError);
  }
}

TEST_CASE("Shu-Osher and converted Butcher steps agree on random linear problems") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int s = 1 + trial % 6;
    const ShuOsherForm so = test::random_shu_osher(rng, s);
    const ButcherTableau t = shu_osher_to_butcher(so);
    Eigen::MatrixXd l(3, 3);
    for (int i = 0; i < 9; ++i) l(i / 3, i % 3) = n(rng);
    const Rhs rhs = [l](const State& u) -> State { return l * u; };
    const State u0 = Eigen::Vector3d(n(rng), n(rng), n(rng));
    const double gap = (shu_osher_step(so, rhs, u0, 0.1) - rk_step(t, rhs, u0, 0.1))
                           .cwiseAbs()
                           .maxCoeff();
    CHECK(gap <= 1e-12);
  }
}

TEST_CASE("tableau JSON") {
  SUBCASE("round trip at full precision") {
    std::mt19937_64 rng(3);
    for (int s = 1; s <= 6; ++s) {
      const ButcherTableau t = test::random_tableau(rng, s);
      const std::string text = emit_tableau(t, "random", 3, std::nullopt);
      const TableauDocument doc = parse_tableau(text);
      CHECK(doc.label == "random");
      CHECK(doc.q == 3);
      CHECK(!doc.p.has_value());
      CHECK(doc.tableau.a() == t.a());
      CHECK(doc.tableau.b() == t.b());
      CHECK(emit_tableau(doc) == text);
    }
  }
  SUBCASE("parse errors name the field") {
    auto field_of = [](const std::string& text) {
      try {
        parse_tableau(text);
      } catch (const ParseError& e) {
        return e.field();
      }
      return std::string("none");
    };
    CHECK(field_of(R"({"label": "x", "s": 4, "A": [[0,0,0,0],[1,0,0,0],[0,1,0,0],[0,0,1,0]],
                       "b": [0.3, 0.3, 0.4]})") == "b");
    CHECK(field_of(R"({"s": 2, "A": [[0, 1], [1, 0]], "b": [0.5, 0.5]})") == "A");
    CHECK(field_of(R"({"s": 2, "b": [0.5, 0.5]})") == "A");
    CHECK(field_of(R"({"s": 1.5, "A": [[0]], "b": [1]})") == "s");
    CHECK(field_of("not json") == "document");
  }
  SUBCASE("Shu-Osher documents round trip") {
    const ShuOsherForm so = family_n2p1(3);
    const ShuOsherForm back = parse_shu_osher(emit_shu_osher(so));
    CHECK(back.v == so.v);
    CHECK(back.alpha == so.alpha);
    CHECK(back.beta == so.beta);
  }
}

TEST_CASE("shipped catalog files") {
  const std::filesystem::path dir = ESSP_DATA_DIR;
  SUBCASE("ESSPRK(4,4,2) main method") {
    const TableauDocument doc = parse_tableau(read_text_file((dir / "essprk_4_4_2.json").string()));
    CHECK(doc.tableau.a()(1, 0) == 0.730429885783319);
    CHECK(doc.q == 4);
    CHECK(doc.p == 2);
  }
  SUBCASE("every file is a fixed point of emit . parse") {
    int count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      const std::string text = read_text_file(entry.path().string());
      CHECK_MESSAGE(emit_tableau(parse_tableau(text)) == text, entry.path().string());
      ++count;
    }
    CHECK(count >= 20);
  }
  SUBCASE("files match the built-in catalog") {
    for (const auto& e : catalog()) {
      std::string stem;
      for (char ch : e.label) {
        if (std::isalnum(static_cast<unsigned char>(ch))) stem += static_cast<char>(std::tolower(ch));
        if (ch == '(' || ch == ',') stem += '_';
      }
      const TableauDocument doc = parse_tableau(read_text_file((dir / (stem + ".json")).string()));
      CHECK(doc.tableau.a() == e.main.a());
      CHECK(doc.tableau.b() == e.main.b());
    }
  }
}
