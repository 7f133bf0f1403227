#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace essp {

/// Explicit s-stage Runge-Kutta method in Butcher form (A, b, c).
///
/// The abscissae are the row sums of A. The primary constructor derives them;
/// `with_abscissae` keeps a caller-supplied c so that `validate` can diagnose
/// inconsistent external data.
class ButcherTableau {
 public:
  /// Throws DomainError if s < 1 or the shapes disagree.
  ButcherTableau(Eigen::MatrixXd a, Eigen::VectorXd b);

  static ButcherTableau with_abscissae(Eigen::MatrixXd a, Eigen::VectorXd b,
                                       Eigen::VectorXd c);

  int stages() const { return static_cast<int>(b_.size()); }
  const Eigen::MatrixXd& a() const { return a_; }
  const Eigen::VectorXd& b() const { return b_; }
  const Eigen::VectorXd& c() const { return c_; }

  /// K = (A; b^T), the (s+1) x s matrix used by the absolute monotonicity test.
  Eigen::MatrixXd k_matrix() const;

 private:
  ButcherTableau() = default;

  Eigen::MatrixXd a_;
  Eigen::VectorXd b_;
  Eigen::VectorXd c_;
};

/// Modified Shu-Osher form:
///   Y_i = v_i u^n + sum_{j<i} (alpha_ij Y_j + dt beta_ij F(Y_j)),  i = 1..s+1,
///   u^{n+1} = Y_{s+1}.
/// Indices are 0-based in code; row s is the update row.
struct ShuOsherForm {
  Eigen::VectorXd v;      // s+1
  Eigen::MatrixXd alpha;  // (s+1) x s
  Eigen::MatrixXd beta;   // (s+1) x s

  int stages() const { return static_cast<int>(alpha.cols()); }
};

enum class Severity { kError, kWarning };

struct Violation {
  std::string invariant;
  int row = -1;
  int col = -1;
  double magnitude = 0.0;
  Severity severity = Severity::kError;
};

/// Checks the ButcherTableau invariants. Unused stages (reducibility) are
/// reported with Severity::kWarning.
std::vector<Violation> validate(const ButcherTableau& tableau, double tol = 1e-13);

/// Checks shape, strict lower triangularity and v_i + sum_j alpha_ij = 1.
std::vector<Violation> validate(const ShuOsherForm& form, double tol = 1e-13);

/// A = (I - alpha_top)^{-1} beta_top,  b^T = beta_last + alpha_last A.
ButcherTableau shu_osher_to_butcher(const ShuOsherForm& form);

/// A tableau plus the metadata carried by the JSON document.
struct TableauDocument {
  std::string label;
  ButcherTableau tableau;
  std::optional<int> q;
  std::optional<int> p;
};

TableauDocument parse_tableau(std::string_view text);
std::string emit_tableau(const TableauDocument& doc);
std::string emit_tableau(const ButcherTableau& tableau, const std::string& label = "",
                         std::optional<int> q = std::nullopt,
                         std::optional<int> p = std::nullopt);

ShuOsherForm parse_shu_osher(std::string_view text);
std::string emit_shu_osher(const ShuOsherForm& form);

/// Reads a whole file; throws essp::Error when it cannot be opened.
std::string read_text_file(const std::string& path);

}  // namespace essp
