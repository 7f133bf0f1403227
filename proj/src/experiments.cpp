#include "essp/experiments.hpp"

#include <cmath>
#include <future>
#include <numbers>
#include <sstream>

#include "essp/error.hpp"

namespace essp {

State BurgersGrid::initial() const {
  if (m < 2) throw DomainError("grid needs at least 2 cells");
  State u(m);
  for (int i = 0; i < m; ++i) {
    const double x = i * dx();
    if (profile == Profile::kContinuous) {
      u(i) = 0.5 - 0.25 * std::sin(std::numbers::pi * x);
    } else {
      u(i) = (x >= 0.5 && x <= 1.5) ? 1.0 : 0.0;
    }
  }
  return u;
}

Rhs burgers_rhs(const BurgersGrid& grid) {
  const double dx = grid.dx();
  return [dx](const State& u) {
    const Eigen::Index m = u.size();
    const State f = 0.5 * u.array().square();
    State du(m);
    du(0) = -(f(0) - f(m - 1)) / dx;
    du.tail(m - 1) = -(f.tail(m - 1) - f.head(m - 1)) / dx;
    return du;
  };
}

double dt_fe(const BurgersGrid& grid) {
  const double peak = grid.initial().cwiseAbs().maxCoeff();
  if (!(peak > 0.0)) throw DomainError("initial data is identically zero");
  return grid.dx() / peak;
}

double total_variation(const State& u) {
  if (u.size() < 2) throw DomainError("total variation needs at least 2 values");
  const Eigen::Index m = u.size();
  double tv = std::abs(u(0) - u(m - 1));
  tv += (u.tail(m - 1) - u.head(m - 1)).cwiseAbs().sum();
  return tv;
}

TvdReport run_tvd(const CompositeScheme& scheme, const BurgersGrid& grid, double sigma, double tf) {
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  if (!(tf > 0.0)) throw DomainError("final time must be positive");
  TvdReport rep;
  rep.sigma = sigma;
  rep.dt = sigma * dt_fe(grid);
  rep.steps = std::max(3, static_cast<int>(std::ceil(tf / rep.dt)));
  rep.final_time = rep.steps * rep.dt;

  const Ivp ivp{burgers_rhs(grid), grid.initial(), 0.0, rep.final_time};
  rep.tv_series.reserve(static_cast<std::size_t>(rep.steps) + 1);
  rep.tv_series.push_back(total_variation(ivp.u0));
  run_composite(scheme, ivp, rep.steps, {}, [&](int, double, const State& u) {
    const double tv = total_variation(u);
    rep.max_increase = std::max(rep.max_increase, tv - rep.tv_series.back());
    rep.tv_series.push_back(tv);
  });
  rep.monotone = rep.max_increase <= kTvTol;
  return rep;
}

double max_tvd_sigma(const CompositeScheme& scheme, const BurgersGrid& grid, double tf,
                     double tol) {
  const double c = scheme.ssp_coefficient();
  if (!(c > 0.0)) throw DomainError("main method has no positive SSP coefficient");
  auto monotone = [&](double sigma) {
    try {
      return run_tvd(scheme, grid, sigma, tf).monotone;
    } catch (const BlowUpError&) {
      return false;
    }
  };
  double lo = 0.5 * c;
  double hi = 2.0 * c;
  if (!monotone(lo)) throw Error("spatial discretization not TVD at half the SSP coefficient");
  if (monotone(hi)) return hi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (monotone(mid) ? lo : hi) = mid;
  }
  return lo;
}

Ivp van_der_pol(double mu, double u1, double u2, double tf) {
  Rhs f = [mu](const State& u) {
    State du(2);
    du(0) = u(1);
    du(1) = mu * (1.0 - u(0) * u(0)) * u(1) - u(0);
    return du;
  };
  State u0(2);
  u0 << u1, u2;
  return Ivp{std::move(f), std::move(u0), 0.0, tf};
}

ReferenceSolution reference_solution(const Ivp& ivp, double tol) {
  const ButcherTableau rk4 = classical_rk4();
  constexpr int kMaxSteps = 1 << 26;
  int n = 1024;
  State coarse = run_single(rk4, ivp, n).final_state();
  double last_diff = INFINITY;
  while (n < kMaxSteps) {
    n *= 2;
    const State fine = run_single(rk4, ivp, n).final_state();
    const double diff = (fine - coarse).cwiseAbs().maxCoeff();
    if (diff <= tol) {
      return {fine + (fine - coarse) / 15.0, diff, n};
    }
    // Past the asymptotic regime a doubling must shrink the difference.
    if (n > 1 << 16 && diff > 0.5 * last_diff) break;
    last_diff = diff;
    coarse = fine;
  }
  throw Error("reference solution did not converge (last difference " +
              std::to_string(last_diff) + ")");
}

double fit_slope(const std::vector<double>& dt, const std::vector<double>& errors, double floor) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int k = 0;
  for (std::size_t i = 0; i < dt.size(); ++i) {
    if (!(errors[i] > 10.0 * floor)) continue;
    const double x = std::log(dt[i]);
    const double y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++k;
  }
  if (k < 2) throw Error("fewer than two usable points for the slope fit");
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

std::vector<int> default_step_counts() { return {400, 800, 1600, 3200, 6400, 12800}; }

namespace {

ConvergenceStudy study(const std::vector<int>& steps,
                       const std::function<State(const Ivp&, int)>& solve) {
  const Ivp ivp = van_der_pol();
  static const ReferenceSolution ref = reference_solution(van_der_pol());
  std::vector<std::future<State>> runs;
  for (int n : steps) runs.push_back(std::async(std::launch::async, solve, ivp, n));
  ConvergenceStudy out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    out.steps.push_back(steps[i]);
    out.dt.push_back((ivp.tf - ivp.t0) / steps[i]);
    out.errors.push_back((runs[i].get() - ref.value).cwiseAbs().maxCoeff());
  }
  out.slope = fit_slope(out.dt, out.errors, ref.accuracy);
  return out;
}

}  // namespace

ConvergenceStudy vdp_convergence(const CompositeScheme& scheme, const std::vector<int>& steps) {
  return study(steps, [&scheme](const Ivp& ivp, int n) {
    return run_composite(scheme, ivp, n).final_state();
  });
}

ConvergenceStudy vdp_convergence(const ButcherTableau& tableau, const std::vector<int>& steps) {
  return study(steps, [&tableau](const Ivp& ivp, int n) {
    return run_single(tableau, ivp, n).final_state();
  });
}

std::string convergence_csv(const ConvergenceStudy& study) {
  std::ostringstream os;
  os.precision(17);
  os << "n,dt,error\n";
  for (std::size_t i = 0; i < study.steps.size(); ++i) {
    os << study.steps[i] << ',' << study.dt[i] << ',' << study.errors[i] << '\n';
  }
  return os.str();
}

std::string tv_csv(const TvdReport& report) {
  std::ostringstream os;
  os.precision(17);
  os << "step,t,TV\n";
  for (std::size_t k = 0; k < report.tv_series.size(); ++k) {
    os << k << ',' << static_cast<double>(k) * report.dt << ',' << report.tv_series[k] << '\n';
  }
  return os.str();
}

std::string sigma_table_csv(const std::vector<SigmaRow>& rows) {
  std::ostringstream os;
  os << "q,p,s,sigma_max,percent_over_C\n";
  for (const auto& r : rows) {
    os << r.q << ',' << r.p << ',' << r.s << ',' << r.sigma_max << ',' << r.percent_over_c()
       << '\n';
  }
  return os.str();
}

}  // namespace essp
