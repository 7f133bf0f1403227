#pragma once

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Dense>

namespace essp::detail {

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct LmResult {
  Eigen::VectorXd x;
  double max_residual = INFINITY;
  int iterations = 0;
};

inline double max_abs(const Eigen::VectorXd& r) {
  return r.size() == 0 ? 0.0 : r.cwiseAbs().maxCoeff();
}

/// Central-difference Jacobian.
inline Eigen::MatrixXd jacobian(const ResidualFn& f, const Eigen::VectorXd& x, Eigen::Index m) {
  Eigen::MatrixXd jac(m, x.size());
  Eigen::VectorXd xp = x;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double h = 1e-7 * std::max(1.0, std::abs(x(j)));
    xp(j) = x(j) + h;
    const Eigen::VectorXd fp = f(xp);
    xp(j) = x(j) - h;
    const Eigen::VectorXd fm = f(xp);
    xp(j) = x(j);
    jac.col(j) = (fp - fm) / (2.0 * h);
  }
  return jac;
}

/// Minimizes |f(x)|^2 until max |f_i| <= tol, the damping saturates, or the
/// iteration budget runs out.
inline LmResult levenberg_marquardt(const ResidualFn& f, Eigen::VectorXd x, int max_iterations,
                                    double tol) {
  Eigen::VectorXd r = f(x);
  double cost = r.squaredNorm();
  LmResult out;
  if (!std::isfinite(cost)) {
    out.x = std::move(x);
    return out;
  }
  double mu = -1.0;
  int it = 0;
  for (; it < max_iterations && max_abs(r) > tol; ++it) {
    const Eigen::MatrixXd jac = jacobian(f, x, r.size());
    const Eigen::MatrixXd h = jac.transpose() * jac;
    const Eigen::VectorXd g = jac.transpose() * r;
    if (mu < 0.0) {
      mu = 1e-3 * std::max(h.diagonal().maxCoeff(), 1e-12);
    }
    bool improved = false;
    while (!improved && mu < 1e12) {
      Eigen::MatrixXd damped = h;
      damped.diagonal().array() += mu;
      const Eigen::VectorXd step = damped.ldlt().solve(-g);
      const Eigen::VectorXd x_new = x + step;
      const Eigen::VectorXd r_new = f(x_new);
      const double cost_new = r_new.squaredNorm();
      if (std::isfinite(cost_new) && cost_new < cost) {
        x = x_new;
        r = r_new;
        cost = cost_new;
        mu = std::max(mu / 3.0, 1e-15);
        improved = true;
      } else {
        mu *= 4.0;
      }
    }
    if (!improved) break;
  }
  out.x = std::move(x);
  out.max_residual = max_abs(r);
  out.iterations = it;
  return out;
}

}  // namespace essp::detail
