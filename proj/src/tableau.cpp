#include "essp/tableau.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "essp/error.hpp"

namespace essp {

ButcherTableau::ButcherTableau(Eigen::MatrixXd a, Eigen::VectorXd b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (b_.size() < 1) {
    throw DomainError("tableau needs at least one stage");
  }
  if (a_.rows() != b_.size() || a_.cols() != b_.size()) {
    throw DomainError("A must be " + std::to_string(b_.size()) + "x" +
                      std::to_string(b_.size()));
  }
  c_ = a_.rowwise().sum();
}

ButcherTableau ButcherTableau::with_abscissae(Eigen::MatrixXd a, Eigen::VectorXd b,
                                              Eigen::VectorXd c) {
  ButcherTableau t(std::move(a), std::move(b));
  if (c.size() != t.b_.size()) {
    throw DomainError("c must have length " + std::to_string(t.b_.size()));
  }
  t.c_ = std::move(c);
  return t;
}

Eigen::MatrixXd ButcherTableau::k_matrix() const {
  const int s = stages();
  Eigen::MatrixXd k(s + 1, s);
  k.topRows(s) = a_;
  k.row(s) = b_.transpose();
  return k;
}

std::vector<Violation> validate(const ButcherTableau& tableau, double tol) {
  std::vector<Violation> out;
  const int s = tableau.stages();
  const auto& a = tableau.a();
  const auto& b = tableau.b();
  const auto& c = tableau.c();

  for (int i = 0; i < s; ++i) {
    for (int j = i; j < s; ++j) {
      if (std::abs(a(i, j)) > tol) {
        out.push_back({"explicit: A strictly lower triangular", i, j, std::abs(a(i, j))});
      }
    }
  }
  for (int i = 0; i < s; ++i) {
    const double gap = std::abs(c(i) - a.row(i).sum());
    if (!(gap <= tol)) {
      out.push_back({"row-sum abscissa c_i = sum_j a_ij", i, -1, gap});
    }
  }
  for (int i = 0; i < s; ++i) {
    if (!std::isfinite(b(i)) || !std::isfinite(c(i)) || !a.row(i).allFinite()) {
      out.push_back({"finite coefficients", i, -1, 0.0});
    }
  }

  // A stage is used if it feeds the update directly or feeds a used stage.
  std::vector<bool> used(static_cast<std::size_t>(s), false);
  for (int j = s - 1; j >= 0; --j) {
    bool u = std::abs(b(j)) > tol;
    for (int i = j + 1; i < s && !u; ++i) {
      u = used[static_cast<std::size_t>(i)] && std::abs(a(i, j)) > tol;
    }
    used[static_cast<std::size_t>(j)] = u;
    if (!u) {
      out.push_back({"reducible: stage does not influence the update", j, -1, 0.0,
                     Severity::kWarning});
    }
  }
  return out;
}

std::vector<Violation> validate(const ShuOsherForm& form, double tol) {
  std::vector<Violation> out;
  const int s = form.stages();
  if (s < 1 || form.v.size() != s + 1 || form.alpha.rows() != s + 1 ||
      form.beta.rows() != s + 1 || form.beta.cols() != s) {
    out.push_back({"shape: v (s+1), alpha and beta (s+1) x s"});
    return out;
  }
  for (int i = 0; i <= s; ++i) {
    for (int j = i; j < s; ++j) {
      if (std::abs(form.alpha(i, j)) > tol) {
        out.push_back({"explicit: alpha strictly lower triangular", i, j,
                       std::abs(form.alpha(i, j))});
      }
      if (std::abs(form.beta(i, j)) > tol) {
        out.push_back({"explicit: beta strictly lower triangular", i, j,
                       std::abs(form.beta(i, j))});
      }
    }
    const double gap = std::abs(form.v(i) + form.alpha.row(i).sum() - 1.0);
    if (!(gap <= tol)) {
      out.push_back({"consistency: v_i + sum_j alpha_ij = 1", i, -1, gap});
    }
  }
  return out;
}

ButcherTableau shu_osher_to_butcher(const ShuOsherForm& form) {
  const int s = form.stages();
  if (s < 1 || form.alpha.rows() != s + 1 || form.beta.rows() != s + 1 ||
      form.beta.cols() != s) {
    throw DomainError("Shu-Osher form: alpha and beta must be (s+1) x s");
  }
  const Eigen::MatrixXd alpha_top = form.alpha.topRows(s);
  const Eigen::MatrixXd beta_top = form.beta.topRows(s);

  // (I - alpha_top) A = beta_top, solved row by row as a lower triangular system.
  for (int i = 0; i < s; ++i) {
    for (int j = i; j < s; ++j) {
      if (alpha_top(i, j) != 0.0 || beta_top(i, j) != 0.0) {
        throw DomainError("non-explicit Shu-Osher form");
      }
    }
  }
  const Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(s, s) - alpha_top;
  Eigen::MatrixXd a = lhs.triangularView<Eigen::Lower>().solve(beta_top);
  // Exact zeros above the diagonal keep validate() clean.
  a.triangularView<Eigen::StrictlyUpper>().setZero();
  Eigen::VectorXd b = form.beta.row(s).transpose() + (form.alpha.row(s) * a).transpose();
  return ButcherTableau(std::move(a), std::move(b));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace essp
