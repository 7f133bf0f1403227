#include "essp/methods.hpp"

#include <cmath>

#include "catalog_data.hpp"
#include "essp/error.hpp"
#include "essp/order_conditions.hpp"
#include "essp/ssp.hpp"

namespace essp {

ButcherTableau essprk_332(double gamma) {
  if (!(gamma >= 0.25 && gamma <= 1.0)) {
    throw DomainError("essprk_332: gamma must lie in [1/4, 1]");
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3);
  a(1, 0) = 1.0;
  a(2, 0) = gamma;
  a(2, 1) = gamma;
  Eigen::VectorXd b(3);
  b << (5.0 * gamma - 1.0) / (6.0 * gamma), 1.0 / 6.0, 1.0 / (6.0 * gamma);
  return ButcherTableau(std::move(a), std::move(b));
}

ButcherTableau essprk_432(double gamma) {
  if (!(gamma >= 1.0 / 6.0 && gamma <= 0.5)) {
    throw DomainError("essprk_432: gamma must lie in [1/6, 1/2]");
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 4);
  a(1, 0) = 0.5;
  a(2, 0) = 0.5;
  a(2, 1) = 0.5;
  a(3, 0) = gamma;
  a(3, 1) = gamma;
  a(3, 2) = gamma;
  Eigen::VectorXd b(4);
  b << (8.0 * gamma - 1.0) / (12.0 * gamma), 1.0 / 6.0, 1.0 / 6.0, 1.0 / (12.0 * gamma);
  return ButcherTableau(std::move(a), std::move(b));
}

ShuOsherForm family_n2p1(int n, FamilyBranch branch) {
  if (n < 3) {
    throw DomainError("family_n2p1: coefficient formulas are given only for n >= 3");
  }
  const double nd = n;
  const int n2 = n * n;
  const int s = n2 + 1;

  ShuOsherForm form;
  form.v = Eigen::VectorXd::Zero(s + 1);
  form.alpha = Eigen::MatrixXd::Zero(s + 1, s);

  // 1-based (row, col) in the formulas; shifted by one here.
  auto alpha = [&](int row, int col) -> double& { return form.alpha(row - 1, col - 1); };

  const double sign = branch == FamilyBranch::kPlus ? 1.0 : -1.0;
  const double root = std::sqrt(nd * nd * nd - 3.0 * nd * nd + nd + 1.0);
  const int special_row = n2 - 2 * n + 4;
  const int special_col = (n - 2) * (n - 2);
  const double special = (nd * nd - 1.0 + sign * root) / (4.0 * nd * nd - 6.0 * nd + 2.0);

  form.v(0) = 1.0;
  form.v(s) = 2.0 / ((nd * nd + 1.0) * ((nd - 1.0) * (nd - 1.0) + 1.0));
  alpha(special_row, special_col) = special;
  for (int i = 1; i <= n2; ++i) {
    alpha(i + 1, i) = (i == n2 - 2 * n + 3) ? 1.0 - special : 1.0;
  }
  const double last = nd * (nd - 1.0) * (nd - 1.0) /
                      ((2.0 * nd - 1.0) * (nd * nd + 1.0) * (1.0 - special));
  alpha(n2 + 2, n2 + 1) = last;
  alpha(n2 + 2, n2 - 2 * n + 2) = 1.0 - form.v(s) - last;

  form.beta = form.alpha / (nd * nd - nd);
  return form;
}

ShuOsherForm ssprk33_shu_osher() {
  ShuOsherForm form;
  form.v = Eigen::VectorXd::Zero(4);
  form.v(0) = 1.0;
  form.alpha = Eigen::MatrixXd::Zero(4, 3);
  form.beta = Eigen::MatrixXd::Zero(4, 3);
  form.alpha(1, 0) = 1.0;
  form.alpha(2, 0) = 0.75;
  form.alpha(2, 1) = 0.25;
  form.alpha(3, 0) = 1.0 / 3.0;
  form.alpha(3, 2) = 2.0 / 3.0;
  form.beta(1, 0) = 1.0;
  form.beta(2, 1) = 0.25;
  form.beta(3, 2) = 2.0 / 3.0;
  return form;
}

ButcherTableau forward_euler() {
  return ButcherTableau(Eigen::MatrixXd::Zero(1, 1), Eigen::VectorXd::Ones(1));
}

ButcherTableau classical_rk4() {
  return detail::lower_tableau({{}, {0.5}, {0.0, 0.5}, {0.0, 0.0, 1.0}},
                               {1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0});
}

namespace {

// Published coefficients are s times an effective coefficient rounded to two
// decimals, so the comparison is made per stage.
constexpr double kPublishedSlack = 0.005;
constexpr double kConditionTol = 1e-10;

void verify(const CatalogEntry& e) {
  auto fail = [&](const std::string& what) {
    throw Error("catalog entry " + e.label + ": " + what);
  };
  const ClassicalOrder p = classical_order(e.main, kConditionTol);
  if (p.value != e.p) {
    fail("classical order " + std::to_string(p.value) + ", expected " + std::to_string(e.p));
  }
  if (effective_order(e.main, kConditionTol) < e.q) {
    fail("effective order below " + std::to_string(e.q));
  }
  const double c = ssp_coefficient(e.main).coefficient;
  const int s = e.main.stages();
  if (std::abs(c - e.ssp_coefficient) / s > kPublishedSlack) {
    fail("SSP coefficient " + std::to_string(c) + " differs from published " +
         std::to_string(e.ssp_coefficient));
  }
  if (e.start.has_value() != e.stop.has_value()) {
    fail("starting and stopping methods must be given together");
  }
  if (e.start) {
    if (e.start->stages() > e.main.stages() + 1 || e.stop->stages() > e.main.stages()) {
      fail("starting/stopping methods exceed s+1 / s stages");
    }
    const AlphaWeights alpha = elementary_weights(e.main);
    BetaWeights beta = beta_weights(alpha, EffectiveOrderSpec{e.q, e.p == e.q ? 2 : e.p},
                                    kConditionTol);
    const AlphaWeights rho = elementary_weights(*e.start);
    beta = complete_beta_from_start(alpha, beta, rho, e.q);
    const double res = rt_residual(alpha, beta, rho, elementary_weights(*e.stop), e.q);
    if (res > kConditionTol) {
      fail("starting/stopping residual " + std::to_string(res));
    }
  }
}

CatalogEntry with_self_start(std::string label, ButcherTableau m, int q, int p, double c) {
  // Classical order q: beta = 0 is admissible, so R = T = M.
  CatalogEntry e{std::move(label), m, m, m, q, p, c};
  return e;
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> out;
  out.push_back({"ESSPRK(4,4,2)", detail::essprk442_main(), detail::essprk442_start(),
                 detail::essprk442_stop(), 4, 2, 0.88});
  out.push_back({"ESSPRK(4,4,3)", detail::essprk443_main(), detail::essprk443_start(),
                 detail::essprk443_stop(), 4, 3, 0.76});
  out.push_back({"ESSPRK(5,4,2)", detail::essprk542_main(), detail::essprk542_start(),
                 detail::essprk542_stop(), 4, 2, 1.95});
  out.push_back({"ESSPRK(3,3,2)", essprk_332(kDefaultGamma332), detail::essprk332_start(),
                 detail::essprk332_stop(), 3, 2, 1.0});
  out.push_back({"ESSPRK(4,3,2)", essprk_432(kDefaultGamma432), detail::essprk432_start(),
                 detail::essprk432_stop(), 3, 2, 2.0});
  out.push_back(with_self_start("SSPRK(3,3)", essprk_332(0.25), 3, 3, 1.0));
  out.push_back(with_self_start("SSPRK(4,3)", essprk_432(1.0 / 6.0), 3, 3, 2.0));
  out.push_back({"ESSPRK(10,4,2)", shu_osher_to_butcher(family_n2p1(3)), std::nullopt,
                 std::nullopt, 4, 2, 6.0});
  out.push_back({"ESSPRK(17,4,2)", shu_osher_to_butcher(family_n2p1(4)), std::nullopt,
                 std::nullopt, 4, 2, 12.0});
  for (const auto& e : out) verify(e);
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

const CatalogEntry& find_catalog_entry(const std::string& label) {
  for (const auto& e : catalog()) {
    if (e.label == label) return e;
  }
  throw DomainError("unknown scheme label: " + label);
}

}  // namespace essp
