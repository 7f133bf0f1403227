#pragma once

#include <random>

#include <Eigen/Dense>

#include "essp/tableau.hpp"

namespace essp::test {

/// Random explicit tableau with entries in [lo, hi) and weights in (0, 1]
/// normalized to sum 1.
inline ButcherTableau random_tableau(std::mt19937_64& rng, int s, double lo = 0.0,
                                     double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::uniform_real_distribution<double> w(0.05, 1.0);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(s, s);
  for (int i = 1; i < s; ++i)
    for (int j = 0; j < i; ++j) a(i, j) = u(rng);
  Eigen::VectorXd b(s);
  for (int i = 0; i < s; ++i) b(i) = w(rng);
  b /= b.sum();
  return ButcherTableau(a, b);
}

/// Random modified Shu-Osher form with nonnegative alpha rows summing to at
/// most one.
inline ShuOsherForm random_shu_osher(std::mt19937_64& rng, int s) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ShuOsherForm f;
  f.alpha = Eigen::MatrixXd::Zero(s + 1, s);
  f.beta = Eigen::MatrixXd::Zero(s + 1, s);
  f.v = Eigen::VectorXd::Ones(s + 1);
  for (int i = 1; i <= s; ++i) {
    double total = 0.0;
    for (int j = 0; j < i; ++j) {
      f.alpha(i, j) = u(rng);
      f.beta(i, j) = u(rng);
      total += f.alpha(i, j);
    }
    const double scale = u(rng) / total;
    f.alpha.row(i) *= scale;
    f.v(i) = 1.0 - f.alpha.row(i).sum();
  }
  return f;
}

}  // namespace essp::test

#include <array>
#include <vector>

namespace essp::test {

/// Rooted trees t1..t17 as lists of child indices, so that each weight is
/// computed from the recursive definition rather than the closed forms.
inline const std::array<std::vector<int>, 18>& tree_children() {
  static const std::array<std::vector<int>, 18> kids = {{
      {},            // t0 unused
      {},            // t1  single vertex
      {1},           // t2
      {1, 1},        // t3
      {2},           // t4
      {1, 1, 1},     // t5
      {1, 2},        // t6
      {3},           // t7
      {4},           // t8
      {1, 1, 1, 1},  // t9
      {1, 1, 2},     // t10
      {1, 3},        // t11
      {1, 4},        // t12
      {2, 2},        // t13
      {5},           // t14
      {6},           // t15
      {7},           // t16
      {8},           // t17
  }};
  return kids;
}

/// Stage vector Phi(t) = prod_k A Phi(t_k), with Phi(single vertex) = e.
/// Works for any (not necessarily explicit) coefficient matrix.
inline Eigen::VectorXd stage_weights(const Eigen::MatrixXd& a, int tree) {
  Eigen::VectorXd g = Eigen::VectorXd::Ones(a.rows());
  for (int child : tree_children()[static_cast<std::size_t>(tree)]) {
    g = g.cwiseProduct(a * stage_weights(a, child));
  }
  return g;
}

/// Elementary weights b^T Phi(t_i), i = 1..17; index 0 holds 1.
inline std::array<double, 18> tree_weights(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  std::array<double, 18> w{};
  w[0] = 1.0;
  for (int i = 1; i < 18; ++i) w[static_cast<std::size_t>(i)] = b.dot(stage_weights(a, i));
  return w;
}

/// gamma(t) = |t| prod gamma(t_k).
inline int tree_size(int tree) {
  int n = 1;
  for (int child : tree_children()[static_cast<std::size_t>(tree)]) n += tree_size(child);
  return n;
}
inline int tree_density(int tree) {
  int g = tree_size(tree);
  for (int child : tree_children()[static_cast<std::size_t>(tree)]) g *= tree_density(child);
  return g;
}

/// Method X followed by method Y, as one tableau.
inline std::pair<Eigen::MatrixXd, Eigen::VectorXd> concatenate(const Eigen::MatrixXd& ax,
                                                               const Eigen::VectorXd& bx,
                                                               const Eigen::MatrixXd& ay,
                                                               const Eigen::VectorXd& by) {
  const auto sx = ax.rows();
  const auto sy = ay.rows();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(sx + sy, sx + sy);
  a.topLeftCorner(sx, sx) = ax;
  a.bottomLeftCorner(sy, sx) = Eigen::VectorXd::Ones(sy) * bx.transpose();
  a.bottomRightCorner(sy, sy) = ay;
  Eigen::VectorXd b(sx + sy);
  b << bx, by;
  return {a, b};
}

/// Inverse method: (A - e b^T, -b).
inline std::pair<Eigen::MatrixXd, Eigen::VectorXd> inverse_method(const Eigen::MatrixXd& a,
                                                                  const Eigen::VectorXd& b) {
  return {a - Eigen::VectorXd::Ones(a.rows()) * b.transpose(), -b};
}

/// Main-method weights implied by starting weights b[1..8] (b[1] = 0) through
/// the group relation (beta alpha)(t) = (E beta)(t).
inline std::array<double, 18> alpha_from_beta(const std::array<double, 9>& b) {
  const double b2 = b[2], b3 = b[3], b4 = b[4], b5 = b[5], b6 = b[6], b7 = b[7], b8 = b[8];
  std::array<double, 18> a{};
  a[0] = 1.0;
  a[1] = 1.0;
  a[2] = 0.5;
  a[3] = 1.0 / 3.0 + 2.0 * b2;
  a[4] = 1.0 / 6.0;
  a[5] = 0.25 + 3.0 * b2 + 3.0 * b3;
  a[6] = 0.125 + b2 + b3 + b4;
  a[7] = 1.0 / 12.0 + b2 - b3 + 2.0 * b4;
  a[8] = 1.0 / 24.0;
  a[9] = 0.2 + 4.0 * b2 + 6.0 * b3 + 4.0 * b5;
  a[10] = 0.1 + 5.0 / 3.0 * b2 - 2.0 * b2 * b2 + 2.5 * b3 + b4 + b5 + 2.0 * b6;
  a[11] = 1.0 / 15.0 + 4.0 / 3.0 * b2 + 0.5 * b3 + 2.0 * b4 + 2.0 * b6 + b7;
  a[12] = 1.0 / 30.0 + b2 / 3.0 - 2.0 * b2 * b2 + 0.5 * b3 + 0.5 * b4 + b6 + b8;
  a[13] = 0.05 + 2.0 / 3.0 * b2 - b2 * b2 + b3 + b4 + 2.0 * b6;
  a[14] = 0.05 + b2 + 3.0 * b4 - b5 + 3.0 * b7;
  a[15] = 1.0 / 40.0 + b2 / 3.0 + 1.5 * b4 - b6 + b7 + b8;
  a[16] = 1.0 / 60.0 + b2 / 3.0 - 0.5 * b3 + b4 - b7 + 2.0 * b8;
  a[17] = 1.0 / 120.0;
  return a;
}

}  // namespace essp::test
