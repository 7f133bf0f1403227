#include "essp/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "essp/error.hpp"
#include "essp/ssp.hpp"

namespace essp {
namespace {

constexpr double kRtTol = 1e-10;

void check_finite(const State& u, int stage) {
  if (!u.allFinite()) throw BlowUpError(0, stage);
}

State step_at(const ButcherTableau& t, const Rhs& rhs, const State& u, double dt, int step) {
  try {
    return rk_step(t, rhs, u, dt);
  } catch (const BlowUpError& e) {
    throw BlowUpError(step, e.stage());
  }
}

void check_ivp(const Ivp& ivp, int n) {
  if (!ivp.rhs) throw DomainError("IVP has no right-hand side");
  if (!(ivp.tf > ivp.t0)) throw DomainError("IVP requires tf > t0");
  if (n < 1) throw DomainError("step count must be positive");
}

}  // namespace

State rk_step(const ButcherTableau& tableau, const Rhs& rhs, const State& u, double dt) {
  if (!(dt > 0.0)) throw DomainError("step size must be positive");
  const int s = tableau.stages();
  const auto& a = tableau.a();
  std::vector<State> f;
  f.reserve(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) {
    State y = u;
    for (int j = 0; j < i; ++j) {
      if (a(i, j) != 0.0) y += dt * a(i, j) * f[static_cast<std::size_t>(j)];
    }
    check_finite(y, i + 1);
    f.push_back(rhs(y));
    if (f.back().size() != u.size()) throw DomainError("right-hand side changed the dimension");
  }
  State out = u;
  for (int j = 0; j < s; ++j) {
    if (tableau.b()(j) != 0.0) out += dt * tableau.b()(j) * f[static_cast<std::size_t>(j)];
  }
  check_finite(out, s + 1);
  return out;
}

CompositeScheme::CompositeScheme(ButcherTableau start, ButcherTableau main, ButcherTableau stop,
                                 int q)
    : start_(std::move(start)),
      main_(std::move(main)),
      stop_(std::move(stop)),
      q_(q),
      c_(essp::ssp_coefficient(main_).coefficient) {}

CompositeScheme CompositeScheme::make(ButcherTableau start, ButcherTableau main,
                                      ButcherTableau stop, int q, int p) {
  const AlphaWeights alpha = elementary_weights(main);
  const AlphaWeights rho = elementary_weights(start);
  // Classical order q is only tabulated through its (q, 2) condition set.
  const auto spec = EffectiveOrderSpec::make(q, p >= q ? 2 : p);
  BetaWeights beta = complete_beta_from_start(alpha, beta_weights(alpha, spec, kRtTol), rho, q);
  const double res = rt_residual(alpha, beta, rho, elementary_weights(stop), q);
  if (!(res <= kRtTol)) {
    throw DomainError("starting/stopping conditions violated (residual " + std::to_string(res) +
                      ")");
  }
  return CompositeScheme(std::move(start), std::move(main), std::move(stop), q);
}

CompositeScheme CompositeScheme::unchecked(ButcherTableau start, ButcherTableau main,
                                           ButcherTableau stop, int q) {
  return CompositeScheme(std::move(start), std::move(main), std::move(stop), q);
}

CompositeScheme CompositeScheme::from_catalog(const CatalogEntry& entry) {
  if (!entry.start || !entry.stop) {
    throw DomainError(entry.label + " has no starting/stopping methods");
  }
  return make(*entry.start, entry.main, *entry.stop, entry.q, entry.p);
}

Trajectory run_single(const ButcherTableau& tableau, const Ivp& ivp, int n, Storage storage) {
  check_ivp(ivp, n);
  const double dt = (ivp.tf - ivp.t0) / n;
  Trajectory out;
  State u = ivp.u0;
  auto record = [&](int k) {
    out.steps.push_back(k);
    out.times.push_back(ivp.t0 + k * dt);
    out.states.push_back(u);
  };
  if (storage == Storage::kEveryStep) record(0);
  for (int k = 1; k <= n; ++k) {
    u = step_at(tableau, ivp.rhs, u, dt, k);
    if (storage == Storage::kEveryStep || k == n) record(k);
  }
  return out;
}

Trajectory run_composite(const CompositeScheme& scheme, const Ivp& ivp, int n,
                         const std::vector<int>& observe_at, const StepHook& hook) {
  check_ivp(ivp, 1);
  if (n < 3) throw DomainError("composite scheme requires at least 3 steps");
  const double dt = (ivp.tf - ivp.t0) / n;
  std::vector<int> observe = observe_at;
  std::sort(observe.begin(), observe.end());
  Trajectory out;
  auto record = [&](int k, const State& u) {
    out.steps.push_back(k);
    out.times.push_back(ivp.t0 + k * dt);
    out.states.push_back(u);
  };
  if (std::binary_search(observe.begin(), observe.end(), 0)) record(0, ivp.u0);

  if (std::binary_search(observe.begin(), observe.end(), 1)) {
    throw DomainError("step 1 cannot be observed: the composite scheme needs R and T");
  }
  State u = step_at(scheme.start(), ivp.rhs, ivp.u0, dt, 1);
  for (int k = 1; k < n; ++k) {
    // u is the perturbed state after step k; T applied to it is the solution
    // at step k + 1, identical to a composite run of k + 1 steps.
    if (k + 1 < n && std::binary_search(observe.begin(), observe.end(), k + 1)) {
      record(k + 1, step_at(scheme.stop(), ivp.rhs, u, dt, k + 1));
    }
    if (hook) hook(k, ivp.t0 + k * dt, u);
    u = step_at(k + 1 == n ? scheme.stop() : scheme.main(), ivp.rhs, u, dt, k + 1);
  }
  record(n, u);
  if (hook) hook(n, ivp.t0 + n * dt, u);
  return out;
}

std::string trajectory_csv(const Trajectory& trajectory) {
  std::ostringstream os;
  os.precision(17);
  os << "step,t";
  const Eigen::Index dim = trajectory.states.empty() ? 0 : trajectory.states.front().size();
  for (Eigen::Index i = 0; i < dim; ++i) os << ",component_" << i;
  os << '\n';
  for (std::size_t k = 0; k < trajectory.states.size(); ++k) {
    os << trajectory.steps[k] << ',' << trajectory.times[k];
    for (Eigen::Index i = 0; i < dim; ++i) os << ',' << trajectory.states[k](i);
    os << '\n';
  }
  return os.str();
}

}  // namespace essp
