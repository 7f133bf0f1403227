#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "essp/tableau.hpp"

namespace essp {

/// Number of indexed trees: the empty tree t0 plus t1..t17 (all trees of order <= 5).
inline constexpr int kTreeCount = 18;

/// gamma(t_i); gamma(t0) = 0 is a sentinel. The exact flow has E(t_i) = 1/gamma(t_i).
inline constexpr std::array<int, kTreeCount> kTreeDensity = {
    0, 1, 2, 3, 6, 4, 8, 12, 24, 5, 10, 15, 30, 20, 20, 40, 60, 120};

/// r(t_i), the number of vertices.
inline constexpr std::array<int, kTreeCount> kTreeOrder = {
    0, 1, 2, 3, 3, 4, 4, 4, 4, 5, 5, 5, 5, 5, 5, 5, 5, 5};

/// Chain trees t1, t2, t4, t8, t17: the order conditions for linear problems.
inline constexpr std::array<int, 5> kTallTrees = {1, 2, 4, 8, 17};

/// 1/gamma(t_i) for i >= 1.
double exact_weight(int tree);

/// Elementary weights alpha(t_0..t_17) of a main method; alpha[0] = 1.
struct AlphaWeights {
  std::array<double, kTreeCount> values{};

  double operator[](int i) const { return values[static_cast<std::size_t>(i)]; }
};

/// Elementary weights beta_1..beta_8 of a starting method with beta_1 = 0.
/// Entries not determined by the main method are FREE (std::nullopt) until a
/// caller fixes them.
struct BetaWeights {
  std::array<std::optional<double>, 9> values{};  // index 0 unused

  const std::optional<double>& operator[](int i) const {
    return values[static_cast<std::size_t>(i)];
  }
  std::optional<double>& operator[](int i) { return values[static_cast<std::size_t>(i)]; }

  bool is_free(int i) const { return !(*this)[i].has_value(); }
  /// Indices of FREE entries among 1..8.
  std::vector<int> free_indices() const;
  /// Value of a fixed entry; throws DomainError when it is FREE.
  double at(int i) const;
};

/// (effective order q, classical order p) pair from the tabulated condition sets.
struct EffectiveOrderSpec {
  int q = 0;
  int p = 0;

  /// Throws DomainError unless (q, p) is one of (3,2), (4,2), (4,3), (5,2), (5,3), (5,4).
  static EffectiveOrderSpec make(int q, int p);
  std::string to_string() const;
};

AlphaWeights elementary_weights(const ButcherTableau& tableau);

/// Largest p <= 5 such that alpha(t) = 1/gamma(t) for every tree with r(t) <= p.
struct ClassicalOrder {
  int value = 0;
  bool at_least = false;  // true when value == 5: the order may be higher
};
ClassicalOrder classical_order(const ButcherTableau& tableau, double tol = 1e-10);

/// Left-minus-right values of the main-method conditions for (q, p).
/// For q = 5, beta_2 = -1/6 + alpha_3/2 is substituted into the beta_2^2 terms.
std::vector<double> effective_order_residuals(const AlphaWeights& alpha,
                                              const EffectiveOrderSpec& spec);
std::vector<std::string> effective_order_residual_labels(const EffectiveOrderSpec& spec);

/// Starting-method weights implied by the main method. Orders below q are
/// filled in; entries of order q are left FREE (beta_3, beta_4 for q = 3;
/// beta_5..beta_8 for q = 4). For q = 5 all of beta_1..beta_8 are fixed.
/// Throws DomainError when the main-method residuals exceed tol.
BetaWeights beta_weights(const AlphaWeights& alpha, const EffectiveOrderSpec& spec,
                         double tol = 1e-10);

/// Largest q <= 5 for which a starting method exists.
int effective_order(const ButcherTableau& tableau, double tol = 1e-10);

/// Target elementary weights rho_1..rho_8 (R = MS) and tau_1..tau_8 (T = S^{-1}M).
/// Index 0 of each array is unused. Throws DomainError if beta has FREE entries.
struct RtTargets {
  std::array<double, 9> rho{};
  std::array<double, 9> tau{};
};
RtTargets rt_targets(const AlphaWeights& alpha, const BetaWeights& beta);

/// Fills the FREE entries of beta from the elementary weights of a starting
/// method R by inverting the rho relations (rho_i is linear in the order-q beta_i).
BetaWeights complete_beta_from_start(const AlphaWeights& alpha, BetaWeights beta,
                                     const AlphaWeights& rho, int q);

/// Max |rho_i(R) - target| and |tau_i(T) - target| over trees with r(t) <= q.
double rt_residual(const AlphaWeights& alpha, const BetaWeights& beta,
                   const AlphaWeights& start, const AlphaWeights& stop, int q);

/// Jensen-inequality witness that a positive-weight method cannot reach
/// effective order 5 with classical order 2.
struct BarrierWitness {
  enum class Verdict { kUnattainable, kInconclusive };

  Eigen::VectorXd v;    // 1/2 c^2 - A c
  double btv = 0.0;     // w^T v
  double btv2 = 0.0;    // w^T v^2
  double gap = 0.0;     // (w^T v)^2 - w^T v^2 <= 0
  double spread = 0.0;  // max_i v_i - min_i v_i
  Verdict verdict = Verdict::kInconclusive;
};

/// w = b / sum(b) (identical to b for consistent methods). Throws DomainError
/// when some b_i <= 0.
BarrierWitness order5_barrier_witness(const ButcherTableau& tableau, double tol = 1e-12);

}  // namespace essp
