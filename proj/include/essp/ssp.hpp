#pragma once

#include "essp/tableau.hpp"

namespace essp {

/// Outcome of the absolute monotonicity test at one radius r:
///   K (I + rA)^{-1} >= 0   and   e - r K (I + rA)^{-1} e >= 0.
struct FeasibilityReport {
  double r = 0.0;
  bool feasible = false;
  /// Most negative entry over both conditions, and where it sits.
  double min_entry = 0.0;
  int row = -1;
  int col = -1;  // -1 when the minimum lies in the row-sum condition
};

/// K (I + rA)^{-1}; scaled by r it is the coefficient matrix of the canonical
/// Shu-Osher form at radius r.
Eigen::MatrixXd monotonicity_matrix(const ButcherTableau& tableau, double r);

FeasibilityReport abs_monotonic(const ButcherTableau& tableau, double r, double tol = 1e-12);

struct SspOptions {
  double bisection_tol = 1e-10;
  double entry_tol = 1e-12;
};

/// SSP coefficient C with its bisection bracket and the certificate at lo.
struct SspResult {
  double coefficient = 0.0;
  double effective_coefficient = 0.0;  // C / s
  double lo = 0.0;
  double hi = 0.0;
  FeasibilityReport certificate;
};

/// Largest feasible r in [0, 2s] to within options.bisection_tol. Returns 0 when
/// the test already fails at r = 0 (some a_ij < 0 or b_i < 0).
SspResult ssp_coefficient(const ButcherTableau& tableau, const SspOptions& options = {});

}  // namespace essp
