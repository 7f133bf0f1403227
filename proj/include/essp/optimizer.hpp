#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "essp/error.hpp"
#include "essp/order_conditions.hpp"
#include "essp/ssp.hpp"
#include "essp/tableau.hpp"

namespace essp {

/// Multistart search settings.
///
/// Each restart draws a random canonical Shu-Osher form, solves the order
/// conditions at a trial radius with Levenberg-Marquardt, then walks the
/// radius upward (warm-started) until the step falls below radius_tol.
struct SearchConfig {
  int restarts = 16;
  std::uint64_t seed = 1;
  int max_iterations = 300;  // Levenberg-Marquardt iterations per solve
  double residual_tol = 1e-10;
  double step_scale = 1.0;   // upper bound of the uniform initial coefficients
  double radius_tol = 1e-6;
  double max_radius = INFINITY;  // the radius walk stops here
  int threads = 1;           // restarts run concurrently; result is thread-count independent
  int extra_start_stages = 1;  // R has s + this many stages
  int extra_stop_stages = 0;   // T has s + this many stages

  /// Throws DomainError when a field is out of range.
  void check() const;
};

struct MainSearchOutcome {
  ButcherTableau tableau;
  SspResult ssp;                    // recomputed independently by bisection
  std::vector<double> residuals;    // effective order residuals of `tableau`
  EffectiveOrderSpec spec;
  double search_radius = 0.0;       // radius certified by the parameterization
  std::vector<double> best_so_far;  // best radius after each restart
};

struct StartStopOutcome {
  ButcherTableau start;  // R
  ButcherTableau stop;   // T
  BetaWeights beta;      // FREE entries resolved by the search
  double start_radius = 0.0;
  double stop_radius = 0.0;
  double min_radius = 0.0;
  double residual = 0.0;  // max rt residual
  bool success = false;   // min_radius >= SSP coefficient of the main method
};

/// No restart reached the residual tolerance.
class SearchError : public Error {
 public:
  SearchError(const std::string& what, double best_residual)
      : Error(what), best_residual_(best_residual) {}

  double best_residual() const { return best_residual_; }
  /// Always zero: no method with a positive SSP coefficient was found.
  double best_coefficient() const { return 0.0; }

 private:
  double best_residual_;
};

/// Maximizes the SSP coefficient over s-stage explicit methods satisfying the
/// (q, p) effective order conditions. When no restart is feasible at any
/// positive radius, falls back to an unconstrained solve of the order
/// conditions and reports its (zero) SSP coefficient; throws SearchError if
/// that fails as well.
MainSearchOutcome optimize_main(int s, const EffectiveOrderSpec& spec,
                                const SearchConfig& config = {});

/// Jointly searches R, T and the FREE beta weights of the main method,
/// maximizing min(r(R), r(T)).
StartStopOutcome optimize_start_stop(const ButcherTableau& main, const EffectiveOrderSpec& spec,
                                     const SearchConfig& config = {});

StartStopOutcome optimize_start_stop(const MainSearchOutcome& main,
                                     const SearchConfig& config = {});

}  // namespace essp
