#pragma once

#include <string>
#include <vector>

#include "essp/integrator.hpp"

namespace essp {

enum class Profile { kContinuous, kSquareWave };

/// Uniform periodic grid on [0, 2) for Burgers' equation u_t + (u^2/2)_x = 0.
struct BurgersGrid {
  int m = 200;
  Profile profile = Profile::kSquareWave;

  double dx() const { return 2.0 / m; }
  /// Cell values of the initial profile at x_i = i dx:
  ///   continuous: 1/2 - sin(pi x)/4;  square wave: 1 on [1/2, 3/2], 0 elsewhere.
  State initial() const;
};

/// First-order upwind semi-discretization -(f(u_i) - f(u_{i-1}))/dx with periodic wrap.
Rhs burgers_rhs(const BurgersGrid& grid);

/// dx / max|u0|. Throws DomainError for zero initial data.
double dt_fe(const BurgersGrid& grid);

/// Periodic total variation sum_i |u_{i+1} - u_i|. Requires length >= 2.
double total_variation(const State& u);

inline constexpr double kTvTol = 1e-10;

struct TvdReport {
  double sigma = 0.0;
  std::vector<double> tv_series;  // index 0 is the initial data
  bool monotone = true;
  double max_increase = 0.0;
  double final_time = 0.0;
  int steps = 0;
  double dt = 0.0;
};

/// Composite run with dt = sigma * dt_fe and n = ceil(tf / dt) steps, recording
/// the total variation after every step.
TvdReport run_tvd(const CompositeScheme& scheme, const BurgersGrid& grid, double sigma, double tf);

/// Largest monotone sigma by bisection on [C/2, 2C] to tol. Throws Error
/// "spatial discretization not TVD at half the SSP coefficient" when the
/// lower end is already not monotone.
double max_tvd_sigma(const CompositeScheme& scheme, const BurgersGrid& grid, double tf,
                     double tol = 0.01);

/// Van der Pol oscillator u1' = u2, u2' = mu (1 - u1^2) u2 - u1.
Ivp van_der_pol(double mu = 2.0, double u1 = 2.0, double u2 = 1.0, double tf = 50.0);

struct ReferenceSolution {
  State value;
  double accuracy = 0.0;  // max-norm difference of the last two resolutions
  int steps = 0;
};

/// Classical RK4 with step doubling until two resolutions agree to tol, then
/// Richardson-extrapolated. Throws Error when doubling stops converging.
ReferenceSolution reference_solution(const Ivp& ivp, double tol = 1e-11);

struct ConvergenceStudy {
  std::vector<int> steps;
  std::vector<double> dt;
  std::vector<double> errors;
  double slope = 0.0;
};

/// Least-squares slope of log(error) against log(dt), skipping points whose
/// error is within 10x of floor.
double fit_slope(const std::vector<double>& dt, const std::vector<double>& errors,
                 double floor = 0.0);

/// n = 400, 800, ..., 12800 by default.
std::vector<int> default_step_counts();

ConvergenceStudy vdp_convergence(const CompositeScheme& scheme,
                                 const std::vector<int>& steps = default_step_counts());
/// Same study with a single method (no starting/stopping perturbation).
ConvergenceStudy vdp_convergence(const ButcherTableau& tableau,
                                 const std::vector<int>& steps = default_step_counts());

struct SigmaRow {
  int q = 0;
  int p = 0;
  int s = 0;
  double sigma_max = 0.0;
  double c = 0.0;

  double percent_over_c() const { return 100.0 * (sigma_max - c) / c; }
};

std::string convergence_csv(const ConvergenceStudy& study);
std::string tv_csv(const TvdReport& report);
std::string sigma_table_csv(const std::vector<SigmaRow>& rows);

}  // namespace essp
