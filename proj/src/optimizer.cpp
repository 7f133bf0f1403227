#include "essp/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <random>

#include "essp/error.hpp"
#include "levenberg_marquardt.hpp"

namespace essp {
namespace {

constexpr double kMinRadius = 1e-3;

// Canonical Shu-Osher coordinates at radius r. Row i (1..s) of the (s+1) x s
// matrix P holds i coefficients plus one slack; after squaring and
// normalizing they lie on the simplex, so P >= 0 and every row sum is <= 1.
// The method is then
//   A = (I - P_top)^{-1} P_top / r,   b^T = P_last / r + P_last A,
// which has radius of absolute monotonicity at least r by construction.
class CanonicalCoordinates {
 public:
  explicit CanonicalCoordinates(int stages) : s_(stages) {}

  int stages() const { return s_; }
  int size() const { return s_ * (s_ + 1) / 2 + s_; }

  Eigen::MatrixXd coefficients(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(s_ + 1, s_);
    for (int i = 1; i <= s_; ++i) {
      const int off = offset(i);
      const auto row = x.segment(off, i + 1);
      const double norm = row.squaredNorm();
      if (norm < 1e-300) continue;
      for (int j = 0; j < i; ++j) p(i, j) = row(j) * row(j) / norm;
    }
    return p;
  }

  ButcherTableau tableau(const Eigen::Ref<const Eigen::VectorXd>& x, double r) const {
    ShuOsherForm form;
    form.alpha = coefficients(x);
    form.beta = form.alpha / r;
    form.v = Eigen::VectorXd::Ones(s_ + 1) - form.alpha.rowwise().sum();
    return shu_osher_to_butcher(form);
  }

  // Nearest coordinates at radius r for an existing method: negative
  // entries of rK(I + rA)^{-1} are dropped and oversized rows rescaled.
  Eigen::VectorXd project(const ButcherTableau& t, double r) const {
    const Eigen::MatrixXd p = r * monotonicity_matrix(t, r);
    Eigen::VectorXd x(size());
    for (int i = 1; i <= s_; ++i) {
      Eigen::VectorXd row = p.row(i).head(i).transpose().cwiseMax(0.0);
      const double sum = row.sum();
      if (sum > 1.0) row /= sum;
      const int off = offset(i);
      x.segment(off, i) = row.cwiseSqrt();
      x(off + i) = std::sqrt(std::max(0.0, 1.0 - row.sum()));
    }
    return x;
  }

  Eigen::VectorXd random(std::mt19937_64& rng, double scale) const {
    std::uniform_real_distribution<double> u(0.0, scale);
    Eigen::VectorXd x(size());
    for (int k = 0; k < x.size(); ++k) x(k) = u(rng);
    return x;
  }

 private:
  static int offset(int row) { return (row - 1) * row / 2 + (row - 1); }

  int s_;
};

// A family of least-squares problems indexed by the radius r.
struct RadiusProblem {
  std::function<Eigen::VectorXd(const Eigen::VectorXd&, double)> residual;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&, double, double)> move;
  std::function<Eigen::VectorXd(std::mt19937_64&)> initial;
  double first_radius = 0.5;
};

struct ClimbResult {
  bool feasible = false;
  double radius = 0.0;
  Eigen::VectorXd x;
  double best_residual = INFINITY;
};

detail::LmResult solve_at(const RadiusProblem& prob, const Eigen::VectorXd& x0, double r,
                          const SearchConfig& cfg) {
  auto f = [&](const Eigen::VectorXd& x) { return prob.residual(x, r); };
  return detail::levenberg_marquardt(f, x0, cfg.max_iterations, cfg.residual_tol);
}

// One restart: find a feasible radius (halving from first_radius), then push
// the radius up with warm starts until the step is below radius_tol.
ClimbResult climb(const RadiusProblem& prob, const SearchConfig& cfg, std::mt19937_64& rng) {
  ClimbResult out;
  Eigen::VectorXd x = prob.initial(rng);
  double r = std::min(prob.first_radius, cfg.max_radius);
  while (r >= kMinRadius) {
    const auto lm = solve_at(prob, x, r, cfg);
    out.best_residual = std::min(out.best_residual, lm.max_residual);
    if (lm.max_residual <= cfg.residual_tol) {
      out.feasible = true;
      x = lm.x;
      break;
    }
    x = prob.move(lm.x, r, 0.5 * r);
    r *= 0.5;
  }
  if (!out.feasible) return out;

  double step = std::max(0.25 * r, 0.05);
  while (step > cfg.radius_tol && r < cfg.max_radius) {
    const double trial = std::min(r + step, cfg.max_radius);
    const auto lm = solve_at(prob, prob.move(x, r, trial), trial, cfg);
    if (lm.max_residual <= cfg.residual_tol) {
      r = trial;
      x = lm.x;
      step *= 1.5;
    } else {
      step *= 0.5;
    }
  }
  // Tighten the accepted point well below the tolerance so that the
  // converted tableau still meets it.
  auto f = [&](const Eigen::VectorXd& y) { return prob.residual(y, r); };
  auto polished = detail::levenberg_marquardt(f, x, cfg.max_iterations, 1e-3 * cfg.residual_tol);
  if (polished.max_residual < detail::max_abs(f(x))) x = std::move(polished.x);
  out.radius = r;
  out.x = std::move(x);
  out.best_residual = 0.0;
  return out;
}

std::mt19937_64 restart_rng(std::uint64_t seed, int restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  return std::mt19937_64(seq);
}

// Runs every restart (concurrently when cfg.threads > 1); results are indexed
// by restart so the merge order never depends on scheduling.
std::vector<ClimbResult> run_restarts(const RadiusProblem& prob, const SearchConfig& cfg) {
  std::vector<ClimbResult> results(static_cast<std::size_t>(cfg.restarts));
  auto one = [&](int k) {
    auto rng = restart_rng(cfg.seed, k);
    return climb(prob, cfg, rng);
  };
  if (cfg.threads <= 1) {
    for (int k = 0; k < cfg.restarts; ++k) results[static_cast<std::size_t>(k)] = one(k);
    return results;
  }
  for (int base = 0; base < cfg.restarts; base += cfg.threads) {
    std::vector<std::future<ClimbResult>> batch;
    for (int k = base; k < std::min(cfg.restarts, base + cfg.threads); ++k) {
      batch.push_back(std::async(std::launch::async, one, k));
    }
    for (std::size_t i = 0; i < batch.size(); ++i) {
      results[static_cast<std::size_t>(base) + i] = batch[i].get();
    }
  }
  return results;
}

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// Order conditions alone, over the strictly lower part of A and b.
std::optional<ButcherTableau> solve_unconstrained(int s, const EffectiveOrderSpec& spec,
                                                  const SearchConfig& cfg, double& best) {
  const int n_a = s * (s - 1) / 2;
  auto build = [s, n_a](const Eigen::VectorXd& x) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(s, s);
    int k = 0;
    for (int i = 1; i < s; ++i)
      for (int j = 0; j < i; ++j) a(i, j) = x(k++);
    return ButcherTableau(std::move(a), x.segment(n_a, s));
  };
  auto f = [&](const Eigen::VectorXd& x) {
    return to_vector(effective_order_residuals(elementary_weights(build(x)), spec));
  };
  for (int k = 0; k < cfg.restarts; ++k) {
    auto rng = restart_rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL, k);
    std::uniform_real_distribution<double> u(0.0, 1.0 / s);
    Eigen::VectorXd x(n_a + s);
    for (int i = 0; i < x.size(); ++i) x(i) = u(rng);
    x.segment(n_a, s) /= x.segment(n_a, s).sum();
    const auto lm = detail::levenberg_marquardt(f, x, cfg.max_iterations, cfg.residual_tol);
    best = std::min(best, lm.max_residual);
    if (lm.max_residual <= cfg.residual_tol) return build(lm.x);
  }
  return std::nullopt;
}

}  // namespace

void SearchConfig::check() const {
  if (restarts < 1) throw DomainError("restarts must be >= 1");
  if (max_iterations < 1) throw DomainError("max_iterations must be >= 1");
  if (!(residual_tol > 0.0)) throw DomainError("residual_tol must be positive");
  if (!(step_scale > 0.0)) throw DomainError("step_scale must be positive");
  if (!(radius_tol > 0.0)) throw DomainError("radius_tol must be positive");
  if (!(max_radius > 0.0)) throw DomainError("max_radius must be positive");
  if (threads < 1) throw DomainError("threads must be >= 1");
  if (extra_start_stages < 0 || extra_stop_stages < 0) {
    throw DomainError("extra stages must be nonnegative");
  }
}

MainSearchOutcome optimize_main(int s, const EffectiveOrderSpec& spec, const SearchConfig& cfg) {
  cfg.check();
  if (s < 1) throw DomainError("stage count must be positive");
  const CanonicalCoordinates coords(s);

  RadiusProblem prob;
  prob.residual = [&](const Eigen::VectorXd& x, double r) {
    return to_vector(effective_order_residuals(elementary_weights(coords.tableau(x, r)), spec));
  };
  prob.move = [&](const Eigen::VectorXd& x, double from, double to) {
    return coords.project(coords.tableau(x, from), to);
  };
  prob.initial = [&](std::mt19937_64& rng) { return coords.random(rng, cfg.step_scale); };
  prob.first_radius = 0.5;

  const auto results = run_restarts(prob, cfg);

  MainSearchOutcome out{ButcherTableau(Eigen::MatrixXd::Zero(s, s), Eigen::VectorXd::Zero(s)),
                        {}, {}, spec, 0.0, {}};
  int best = -1;
  double best_residual = INFINITY;
  for (int k = 0; k < cfg.restarts; ++k) {
    const auto& res = results[static_cast<std::size_t>(k)];
    best_residual = std::min(best_residual, res.best_residual);
    if (res.feasible && (best < 0 || res.radius > out.search_radius)) {
      best = k;
      out.search_radius = res.radius;
    }
    out.best_so_far.push_back(out.search_radius);
  }

  if (best >= 0) {
    out.tableau = coords.tableau(results[static_cast<std::size_t>(best)].x, out.search_radius);
  } else {
    auto fallback = solve_unconstrained(s, spec, cfg, best_residual);
    if (!fallback) {
      throw SearchError("no " + std::to_string(s) + "-stage method satisfies the " +
                            spec.to_string() + " conditions (best residual " +
                            std::to_string(best_residual) + "); no positive SSP coefficient",
                        best_residual);
    }
    out.tableau = *fallback;
  }
  out.ssp = ssp_coefficient(out.tableau);
  out.residuals = effective_order_residuals(elementary_weights(out.tableau), spec);
  return out;
}

StartStopOutcome optimize_start_stop(const ButcherTableau& main, const EffectiveOrderSpec& spec,
                                     const SearchConfig& cfg) {
  cfg.check();
  if (spec.q != 3 && spec.q != 4) {
    throw DomainError("starting/stopping conditions are tabulated for q = 3, 4 only");
  }
  const AlphaWeights alpha = elementary_weights(main);
  const BetaWeights beta0 = beta_weights(alpha, spec, std::max(cfg.residual_tol, 1e-10));
  const std::vector<int> free = beta0.free_indices();
  std::vector<int> trees;
  for (int i = 1; i <= 8; ++i) {
    if (kTreeOrder[static_cast<std::size_t>(i)] <= spec.q) trees.push_back(i);
  }
  const double main_c = ssp_coefficient(main).coefficient;

  const CanonicalCoordinates start(main.stages() + cfg.extra_start_stages);
  const CanonicalCoordinates stop(main.stages() + cfg.extra_stop_stages);
  const int n_start = start.size();
  const int n_stop = stop.size();
  const int n_free = static_cast<int>(free.size());

  auto with_free = [&](const Eigen::VectorXd& x) {
    BetaWeights beta = beta0;
    for (int k = 0; k < n_free; ++k) beta[free[static_cast<std::size_t>(k)]] = x(n_start + n_stop + k);
    return beta;
  };

  RadiusProblem prob;
  prob.residual = [&](const Eigen::VectorXd& x, double r) {
    const AlphaWeights rho = elementary_weights(start.tableau(x.head(n_start), r));
    const AlphaWeights tau = elementary_weights(stop.tableau(x.segment(n_start, n_stop), r));
    const RtTargets target = rt_targets(alpha, with_free(x));
    Eigen::VectorXd res(2 * static_cast<Eigen::Index>(trees.size()));
    Eigen::Index k = 0;
    for (int i : trees) {
      res(k++) = rho[i] - target.rho[static_cast<std::size_t>(i)];
      res(k++) = tau[i] - target.tau[static_cast<std::size_t>(i)];
    }
    return res;
  };
  prob.move = [&](const Eigen::VectorXd& x, double from, double to) {
    Eigen::VectorXd y = x;
    y.head(n_start) = start.project(start.tableau(x.head(n_start), from), to);
    y.segment(n_start, n_stop) = stop.project(stop.tableau(x.segment(n_start, n_stop), from), to);
    return y;
  };
  prob.initial = [&](std::mt19937_64& rng) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n_start + n_stop + n_free);
    x.head(n_start) = start.random(rng, cfg.step_scale);
    x.segment(n_start, n_stop) = stop.random(rng, cfg.step_scale);
    return x;
  };
  prob.first_radius = std::max(0.5, 0.5 * main_c);

  const auto results = run_restarts(prob, cfg);
  int best = -1;
  double best_residual = INFINITY;
  for (int k = 0; k < cfg.restarts; ++k) {
    const auto& res = results[static_cast<std::size_t>(k)];
    best_residual = std::min(best_residual, res.best_residual);
    if (res.feasible && (best < 0 || res.radius > results[static_cast<std::size_t>(best)].radius)) {
      best = k;
    }
  }
  if (best < 0) {
    throw SearchError("no starting/stopping pair satisfies the conditions (best residual " +
                          std::to_string(best_residual) + ")",
                      best_residual);
  }
  const auto& win = results[static_cast<std::size_t>(best)];
  StartStopOutcome out{start.tableau(win.x.head(n_start), win.radius),
                       stop.tableau(win.x.segment(n_start, n_stop), win.radius),
                       with_free(win.x)};
  out.start_radius = ssp_coefficient(out.start).coefficient;
  out.stop_radius = ssp_coefficient(out.stop).coefficient;
  out.min_radius = std::min(out.start_radius, out.stop_radius);
  out.residual = rt_residual(alpha, out.beta, elementary_weights(out.start),
                             elementary_weights(out.stop), spec.q);
  out.success = out.min_radius >= main_c - 1e-9;
  return out;
}

StartStopOutcome optimize_start_stop(const MainSearchOutcome& main, const SearchConfig& config) {
  return optimize_start_stop(main.tableau, main.spec, config);
}

}  // namespace essp
