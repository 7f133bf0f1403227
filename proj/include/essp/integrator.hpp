#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "essp/methods.hpp"
#include "essp/order_conditions.hpp"
#include "essp/tableau.hpp"

namespace essp {

using State = Eigen::VectorXd;
using Rhs = std::function<State(const State&)>;

/// Autonomous initial value problem u' = F(u), u(t0) = u0.
struct Ivp {
  Rhs rhs;
  State u0;
  double t0 = 0.0;
  double tf = 1.0;
};

/// One explicit Runge-Kutta step. Throws BlowUpError (step 0) when a stage
/// or the result is not finite.
State rk_step(const ButcherTableau& tableau, const Rhs& rhs, const State& u, double dt);

/// The T M^{n-2} R scheme: one step of R, n-2 steps of M, one step of T.
class CompositeScheme {
 public:
  /// Checks that (R, T) satisfy the starting/stopping conditions for M at
  /// effective order q to 1e-10. Throws DomainError otherwise.
  static CompositeScheme make(ButcherTableau start, ButcherTableau main, ButcherTableau stop,
                              int q, int p);

  /// No condition check; for deliberately inconsistent pairs.
  static CompositeScheme unchecked(ButcherTableau start, ButcherTableau main,
                                   ButcherTableau stop, int q);

  /// Throws DomainError when the entry has no starting/stopping methods.
  static CompositeScheme from_catalog(const CatalogEntry& entry);

  const ButcherTableau& start() const { return start_; }
  const ButcherTableau& main() const { return main_; }
  const ButcherTableau& stop() const { return stop_; }
  int q() const { return q_; }
  double ssp_coefficient() const { return c_; }

 private:
  CompositeScheme(ButcherTableau start, ButcherTableau main, ButcherTableau stop, int q);

  ButcherTableau start_;
  ButcherTableau main_;
  ButcherTableau stop_;
  int q_;
  double c_;
};

struct Trajectory {
  std::vector<int> steps;
  std::vector<double> times;
  std::vector<State> states;

  const State& final_state() const { return states.back(); }
};

enum class Storage { kFinal, kEveryStep };

/// n uniform steps of one tableau.
Trajectory run_single(const ButcherTableau& tableau, const Ivp& ivp, int n,
                      Storage storage = Storage::kFinal);

/// Called after every step k = 1..n with the step index, time and the state
/// the scheme actually carries (perturbed for 1 <= k < n).
using StepHook = std::function<void(int, double, const State&)>;

/// n uniform steps of the composite scheme. Interior steps listed in
/// observe_at (k >= 2) are recorded as T applied to a copy of the running state
/// after step k - 1, which equals a k-step composite run. The final state is
/// always recorded. Throws DomainError for n < 3 or when step 1 is observed.
Trajectory run_composite(const CompositeScheme& scheme, const Ivp& ivp, int n,
                         const std::vector<int>& observe_at = {},
                         const StepHook& hook = nullptr);

/// CSV with columns step,t,component_0,...
std::string trajectory_csv(const Trajectory& trajectory);

}  // namespace essp
