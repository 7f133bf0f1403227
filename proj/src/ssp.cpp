#include "essp/ssp.hpp"

#include <cmath>

#include "essp/error.hpp"

namespace essp {

Eigen::MatrixXd monotonicity_matrix(const ButcherTableau& tableau, double r) {
  const int s = tableau.stages();
  const Eigen::MatrixXd k = tableau.k_matrix();

  // X (I + rA) = K. (I + rA)^T is unit upper triangular for explicit methods,
  // so X^T follows by back substitution.
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(s, s) + r * tableau.a();
  for (int i = 0; i < s; ++i) {
    if (std::abs(m(i, i)) < 1e-300) {
      throw DomainError("I + rA is singular");
    }
  }
  const Eigen::MatrixXd xt =
      m.transpose().triangularView<Eigen::Upper>().solve(k.transpose());
  return xt.transpose();
}

FeasibilityReport abs_monotonic(const ButcherTableau& tableau, double r, double tol) {
  if (!(r >= 0.0)) {
    throw DomainError("radius must be nonnegative");
  }
  const int s = tableau.stages();
  const Eigen::MatrixXd x = monotonicity_matrix(tableau, r);
  const Eigen::VectorXd slack = Eigen::VectorXd::Ones(s + 1) - r * x.rowwise().sum();

  FeasibilityReport rep;
  rep.r = r;
  rep.min_entry = INFINITY;
  for (int i = 0; i <= s; ++i) {
    for (int j = 0; j < s; ++j) {
      if (x(i, j) < rep.min_entry) {
        rep.min_entry = x(i, j);
        rep.row = i;
        rep.col = j;
      }
    }
    if (slack(i) < rep.min_entry) {
      rep.min_entry = slack(i);
      rep.row = i;
      rep.col = -1;
    }
  }
  rep.feasible = std::isfinite(rep.min_entry) && rep.min_entry >= -tol;
  return rep;
}

SspResult ssp_coefficient(const ButcherTableau& tableau, const SspOptions& options) {
  const int s = tableau.stages();
  SspResult out;
  auto finish = [&](double lo, double hi, FeasibilityReport cert) {
    out.coefficient = lo;
    out.effective_coefficient = lo / s;
    out.lo = lo;
    out.hi = hi;
    out.certificate = cert;
    return out;
  };

  const FeasibilityReport at_zero = abs_monotonic(tableau, 0.0, options.entry_tol);
  if (!at_zero.feasible) {
    return finish(0.0, 0.0, at_zero);
  }
  const double r_max = 2.0 * s;
  const FeasibilityReport at_max = abs_monotonic(tableau, r_max, options.entry_tol);
  if (at_max.feasible) {
    return finish(r_max, r_max, at_max);
  }
  double lo = 0.0;
  double hi = r_max;
  FeasibilityReport cert = at_zero;
  while (hi - lo > options.bisection_tol) {
    const double mid = 0.5 * (lo + hi);
    FeasibilityReport rep = abs_monotonic(tableau, mid, options.entry_tol);
    if (rep.feasible) {
      lo = mid;
      cert = rep;
    } else {
      hi = mid;
    }
  }
  return finish(lo, hi, cert);
}

}  // namespace essp
