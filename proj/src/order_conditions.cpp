#include "essp/order_conditions.hpp"

#include <algorithm>
#include <cmath>

#include "essp/error.hpp"

namespace essp {

double exact_weight(int tree) {
  if (tree < 1 || tree >= kTreeCount) {
    throw DomainError("tree index out of range: " + std::to_string(tree));
  }
  return 1.0 / kTreeDensity[static_cast<std::size_t>(tree)];
}

std::vector<int> BetaWeights::free_indices() const {
  std::vector<int> out;
  for (int i = 1; i <= 8; ++i) {
    if (is_free(i)) out.push_back(i);
  }
  return out;
}

double BetaWeights::at(int i) const {
  const auto& x = (*this)[i];
  if (!x) {
    throw DomainError("beta_" + std::to_string(i) + " is FREE");
  }
  return *x;
}

EffectiveOrderSpec EffectiveOrderSpec::make(int q, int p) {
  const bool ok = (q == 3 && p == 2) || (q == 4 && (p == 2 || p == 3)) ||
                  (q == 5 && p >= 2 && p <= 4);
  if (!ok) {
    throw DomainError("unsupported (q, p) = (" + std::to_string(q) + ", " +
                      std::to_string(p) + ")");
  }
  return EffectiveOrderSpec{q, p};
}

std::string EffectiveOrderSpec::to_string() const {
  return "(" + std::to_string(q) + "," + std::to_string(p) + ")";
}

AlphaWeights elementary_weights(const ButcherTableau& tableau) {
  const Eigen::MatrixXd& a = tableau.a();
  const Eigen::VectorXd& b = tableau.b();
  const Eigen::VectorXd& c = tableau.c();

  const Eigen::VectorXd c2 = c.array().square();
  const Eigen::VectorXd c3 = c.array().cube();
  const Eigen::VectorXd c4 = c2.array().square();
  const Eigen::VectorXd ac = a * c;
  const Eigen::VectorXd ac2 = a * c2;
  const Eigen::VectorXd aac = a * ac;

  AlphaWeights w;
  auto& v = w.values;
  v[0] = 1.0;
  v[1] = b.sum();
  v[2] = b.dot(c);
  v[3] = b.dot(c2);
  v[4] = b.dot(ac);
  v[5] = b.dot(c3);
  v[6] = b.dot(c.cwiseProduct(ac));
  v[7] = b.dot(ac2);
  v[8] = b.dot(aac);
  v[9] = b.dot(c4);
  v[10] = b.dot(c2.cwiseProduct(ac));
  v[11] = b.dot(c.cwiseProduct(ac2));
  v[12] = b.dot(c.cwiseProduct(aac));
  v[13] = b.dot(ac.cwiseProduct(ac));
  v[14] = b.dot(a * c3);
  v[15] = b.dot(a * c.cwiseProduct(ac));
  v[16] = b.dot(a * ac2);
  v[17] = b.dot(a * aac);
  return w;
}

ClassicalOrder classical_order(const ButcherTableau& tableau, double tol) {
  const AlphaWeights alpha = elementary_weights(tableau);
  int order = 0;
  for (int r = 1; r <= 5; ++r) {
    bool ok = true;
    for (int i = 1; i < kTreeCount && ok; ++i) {
      if (kTreeOrder[static_cast<std::size_t>(i)] == r) {
        ok = std::abs(alpha[i] - exact_weight(i)) <= tol;
      }
    }
    if (!ok) break;
    order = r;
  }
  return ClassicalOrder{order, order == 5};
}

namespace {

struct Condition {
  std::string label;
  double value;
};

double beta2_of(const AlphaWeights& a) { return -1.0 / 6.0 + 0.5 * a[3]; }

// Combined fourth-order condition shared by the (4,2) and (5,2) rows.
double combined4(const AlphaWeights& a) { return 0.25 - a[3] + a[5] - 2.0 * a[6] + a[7]; }

// The four fifth-order conditions of the (5,2) row, each written as lhs - rhs.
std::array<double, 4> combined5_p2(const AlphaWeights& a) {
  const double b2 = beta2_of(a);
  const double b22 = b2 * b2;
  return {
      0.25 * a[9] - a[10] + a[13] - b22,
      0.3 - 1.5 * a[3] + a[5] + 0.5 * a[9] - 3.0 * a[10] + 3.0 * a[11] - a[14] - 6.0 * b22,
      1.0 / 15.0 - 0.5 * a[3] + a[6] + 0.5 * a[9] - 2.0 * a[10] + a[11] + a[12] - a[15] -
          2.0 * b22,
      19.0 / 60.0 - a[3] + a[5] - 2.0 * a[6] + a[11] - 2.0 * a[12] + a[16] - 4.0 * b22,
  };
}

std::vector<Condition> conditions(const AlphaWeights& a, const EffectiveOrderSpec& spec) {
  std::vector<Condition> out;
  auto exact = [&](int i) {
    out.push_back({"alpha_" + std::to_string(i) + " - 1/" +
                       std::to_string(kTreeDensity[static_cast<std::size_t>(i)]),
                   a[i] - exact_weight(i)});
  };
  const int q = spec.q;
  const int p = spec.p;

  exact(1);
  exact(2);
  if (p >= 3) exact(3);
  exact(4);
  if (p >= 4) {
    exact(5);
    exact(6);
    exact(7);
  }
  if (q >= 4) {
    if (p == 2) {
      out.push_back({"1/4 - alpha_3 + alpha_5 - 2 alpha_6 + alpha_7", combined4(a)});
    } else if (p == 3) {
      out.push_back({"1/12 - alpha_5 + 2 alpha_6 - alpha_7", 1.0 / 12.0 - a[5] + 2.0 * a[6] - a[7]});
    }
    exact(8);
  }
  if (q == 5) {
    exact(17);
    if (p == 2) {
      const auto c = combined5_p2(a);
      out.push_back({"1/4 alpha_9 - alpha_10 + alpha_13 - beta_2^2", c[0]});
      out.push_back({"3/10 - 3/2 alpha_3 + alpha_5 + 1/2 alpha_9 - 3 alpha_10 + 3 alpha_11 - alpha_14 - 6 beta_2^2", c[1]});
      out.push_back({"1/15 - 1/2 alpha_3 + alpha_6 + 1/2 alpha_9 - 2 alpha_10 + alpha_11 + alpha_12 - alpha_15 - 2 beta_2^2", c[2]});
      out.push_back({"19/60 - alpha_3 + alpha_5 - 2 alpha_6 + alpha_11 - 2 alpha_12 + alpha_16 - 4 beta_2^2", c[3]});
    } else if (p == 3) {
      out.push_back({"1/4 alpha_9 - alpha_10 + alpha_13", 0.25 * a[9] - a[10] + a[13]});
      out.push_back({"1/5 - alpha_5 - 1/2 alpha_9 + 3 alpha_10 - 3 alpha_11 + alpha_14",
                     0.2 - a[5] - 0.5 * a[9] + 3.0 * a[10] - 3.0 * a[11] + a[14]});
      out.push_back({"1/10 - alpha_6 - 1/2 alpha_9 + 2 alpha_10 - alpha_11 - alpha_12 + alpha_15",
                     0.1 - a[6] - 0.5 * a[9] + 2.0 * a[10] - a[11] - a[12] + a[15]});
      out.push_back({"1/60 - alpha_5 + 2 alpha_6 - alpha_11 + 2 alpha_12 - alpha_16",
                     1.0 / 60.0 - a[5] + 2.0 * a[6] - a[11] + 2.0 * a[12] - a[16]});
    } else {
      out.push_back({"1/4 alpha_9 - alpha_10 + alpha_13", 0.25 * a[9] - a[10] + a[13]});
      out.push_back({"1/20 + 1/2 alpha_9 - 3 alpha_10 + 3 alpha_11 - alpha_14",
                     0.05 + 0.5 * a[9] - 3.0 * a[10] + 3.0 * a[11] - a[14]});
      out.push_back({"1/40 + 1/2 alpha_9 - 2 alpha_10 + alpha_11 + alpha_12 - alpha_15",
                     0.025 + 0.5 * a[9] - 2.0 * a[10] + a[11] + a[12] - a[15]});
      out.push_back({"1/60 - alpha_11 + 2 alpha_12 - alpha_16",
                     1.0 / 60.0 - a[11] + 2.0 * a[12] - a[16]});
    }
  }
  return out;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

std::vector<double> effective_order_residuals(const AlphaWeights& alpha,
                                              const EffectiveOrderSpec& spec) {
  std::vector<double> out;
  for (const auto& c : conditions(alpha, spec)) out.push_back(c.value);
  return out;
}

std::vector<std::string> effective_order_residual_labels(const EffectiveOrderSpec& spec) {
  std::vector<std::string> out;
  for (const auto& c : conditions(AlphaWeights{}, spec)) out.push_back(c.label);
  return out;
}

BetaWeights beta_weights(const AlphaWeights& a, const EffectiveOrderSpec& spec, double tol) {
  const auto residuals = effective_order_residuals(a, spec);
  if (max_abs(residuals) > tol) {
    throw DomainError("main method does not satisfy effective order conditions " +
                      spec.to_string());
  }
  BetaWeights beta;
  beta[1] = 0.0;
  const double b2 = spec.p == 2 ? beta2_of(a) : 0.0;
  const double b22 = b2 * b2;
  beta[2] = b2;
  switch (spec.q) {
    case 3:
      // beta_3, beta_4 are FREE; order-4 weights are unconstrained at q = 3.
      for (int i = 5; i <= 8; ++i) beta[i] = 0.0;
      break;
    case 4:
      beta[3] = spec.p == 2 ? 1.0 / 12.0 - 0.5 * a[3] + a[5] / 3.0 : -1.0 / 12.0 + a[5] / 3.0;
      beta[4] = -1.0 / 24.0 - a[5] / 3.0 + a[6];
      break;
    case 5:
      if (spec.p == 2) {
        beta[3] = 1.0 / 12.0 - 0.5 * a[3] + a[5] / 3.0;
        beta[4] = -1.0 / 24.0 - a[5] / 3.0 + a[6];
        beta[5] = -1.0 / 120.0 + 0.25 * a[3] - 0.5 * a[5] + 0.25 * a[9];
        beta[6] = 7.0 / 720.0 + b22 + a[3] / 12.0 - 0.5 * a[6] - a[9] / 8.0 + 0.5 * a[10];
        beta[7] = 8.0 / 45.0 - 2.0 * b22 - 7.0 / 12.0 * a[3] + 0.5 * a[5] - a[6] + 0.25 * a[9] -
                  a[10] + a[11];
        beta[8] = -1.0 / 120.0 + b22 + a[9] / 8.0 - 0.5 * a[10] + a[12];
      } else if (spec.p == 3) {
        beta[3] = -1.0 / 12.0 + a[5] / 3.0;
        beta[4] = -1.0 / 24.0 - a[5] / 3.0 + a[6];
        beta[5] = 3.0 / 40.0 - 0.5 * a[5] + 0.25 * a[9];
        beta[6] = 3.0 / 80.0 - 0.5 * a[6] - a[9] / 8.0 + 0.5 * a[10];
        beta[7] = -1.0 / 60.0 + 0.5 * a[5] - a[6] + 0.25 * a[9] - a[10] + a[11];
        beta[8] = -1.0 / 120.0 + a[9] / 8.0 - 0.5 * a[10] + a[12];
      } else {
        beta[3] = 0.0;
        beta[4] = 0.0;
        beta[5] = -1.0 / 20.0 + 0.25 * a[9];
        beta[6] = -1.0 / 40.0 - a[9] / 8.0 + 0.5 * a[10];
        beta[7] = -1.0 / 60.0 + 0.25 * a[9] - a[10] + a[11];
        beta[8] = -1.0 / 120.0 + a[9] / 8.0 - 0.5 * a[10] + a[12];
      }
      break;
    default:
      throw DomainError("unsupported effective order " + std::to_string(spec.q));
  }
  return beta;
}

int effective_order(const ButcherTableau& tableau, double tol) {
  const AlphaWeights a = elementary_weights(tableau);
  auto near = [tol](double x, double y) { return std::abs(x - y) <= tol; };
  if (!near(a[1], 1.0)) return 0;
  if (!near(a[2], 0.5)) return 1;
  if (!near(a[4], 1.0 / 6.0)) return 2;
  if (!near(a[8], 1.0 / 24.0) || !near(combined4(a), 0.0)) return 3;
  if (!near(a[17], 1.0 / 120.0)) return 4;
  for (double r : combined5_p2(a)) {
    if (!near(r, 0.0)) return 4;
  }
  return 5;
}

RtTargets rt_targets(const AlphaWeights& a, const BetaWeights& beta) {
  const double b2 = beta.at(2);
  const double b3 = beta.at(3);
  const double b4 = beta.at(4);
  const double b5 = beta.at(5);
  const double b6 = beta.at(6);
  const double b7 = beta.at(7);
  const double b8 = beta.at(8);
  const double a1 = a[1];

  RtTargets t;
  t.rho[1] = a1;
  t.rho[2] = a[2] + b2;
  t.rho[3] = a[3] + b3;
  t.rho[4] = a[4] + a1 * b2 + b4;
  t.rho[5] = a[5] + b5;
  t.rho[6] = a[6] + a[2] * b2 + b6;
  t.rho[7] = a[7] + a1 * b3 + b7;
  t.rho[8] = a[8] + a1 * b4 + a[2] * b2 + b8;

  t.tau[1] = a1;
  t.tau[2] = a[2] - b2;
  t.tau[3] = a[3] - 2.0 * a1 * b2 - b3;
  t.tau[4] = a[4] - a1 * b2 - b4;
  t.tau[5] = a[5] - 3.0 * a1 * a1 * b2 - 3.0 * a1 * b3 - b5;
  t.tau[6] = a[6] - (a1 * a1 + a[2] - b2) * b2 - a1 * b3 - a1 * b4 - b6;
  t.tau[7] = a[7] - 2.0 * a1 * b4 - a1 * a1 * b2 - b7;
  t.tau[8] = a[8] - a1 * b4 - a[2] * b2 + b2 * b2 - b8;
  return t;
}

BetaWeights complete_beta_from_start(const AlphaWeights& a, BetaWeights beta,
                                     const AlphaWeights& rho, int q) {
  const double b2 = beta.at(2);
  if (q == 3) {
    if (beta.is_free(3)) beta[3] = rho[3] - a[3];
    if (beta.is_free(4)) beta[4] = rho[4] - a[4] - a[1] * b2;
  } else if (q == 4) {
    const double b3 = beta.at(3);
    const double b4 = beta.at(4);
    if (beta.is_free(5)) beta[5] = rho[5] - a[5];
    if (beta.is_free(6)) beta[6] = rho[6] - a[6] - a[2] * b2;
    if (beta.is_free(7)) beta[7] = rho[7] - a[7] - a[1] * b3;
    if (beta.is_free(8)) beta[8] = rho[8] - a[8] - a[1] * b4 - a[2] * b2;
  } else {
    throw DomainError("starting/stopping conditions are tabulated for q = 3, 4 only");
  }
  return beta;
}

double rt_residual(const AlphaWeights& alpha, const BetaWeights& beta,
                   const AlphaWeights& start, const AlphaWeights& stop, int q) {
  const RtTargets t = rt_targets(alpha, beta);
  double worst = 0.0;
  for (int i = 1; i <= 8; ++i) {
    if (kTreeOrder[static_cast<std::size_t>(i)] > q) continue;
    worst = std::max(worst, std::abs(start[i] - t.rho[static_cast<std::size_t>(i)]));
    worst = std::max(worst, std::abs(stop[i] - t.tau[static_cast<std::size_t>(i)]));
  }
  return worst;
}

BarrierWitness order5_barrier_witness(const ButcherTableau& tableau, double tol) {
  const Eigen::VectorXd& b = tableau.b();
  for (int i = 0; i < b.size(); ++i) {
    if (!(b(i) > 0.0)) {
      throw DomainError("barrier applies only to positive weights");
    }
  }
  const Eigen::VectorXd w = b / b.sum();
  const Eigen::VectorXd& c = tableau.c();

  BarrierWitness out;
  out.v = 0.5 * c.array().square().matrix() - tableau.a() * c;
  out.btv = w.dot(out.v);
  out.btv2 = w.dot(out.v.cwiseProduct(out.v));
  out.gap = out.btv * out.btv - out.btv2;
  out.spread = out.v.maxCoeff() - out.v.minCoeff();
  // v_1 = 0 always, so a constant v means v = 0 and Jensen gives no contradiction.
  out.verdict = (out.spread > tol || out.gap < -tol) ? BarrierWitness::Verdict::kUnattainable
                                                     : BarrierWitness::Verdict::kInconclusive;
  return out;
}

}  // namespace essp
