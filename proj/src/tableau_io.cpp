#include <charconv>
#include <cmath>
#include <string>

#include <json.hpp>

#include "essp/error.hpp"
#include "essp/tableau.hpp"

namespace essp {
namespace {

using nlohmann::json;

// Shortest representation that parses back to the same binary64 value.
std::string format_number(double x) {
  if (x == 0.0) {
    return "0";
  }
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_row(const Eigen::Ref<const Eigen::RowVectorXd>& row) {
  std::string out = "[";
  for (Eigen::Index j = 0; j < row.size(); ++j) {
    if (j > 0) out += ", ";
    out += format_number(row(j));
  }
  return out + "]";
}

std::string format_matrix(const Eigen::MatrixXd& m) {
  std::string out = "[\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out += "    " + format_row(m.row(i));
    out += (i + 1 < m.rows()) ? ",\n" : "\n";
  }
  return out + "  ]";
}

std::string format_optional(const std::optional<int>& x) {
  return x ? std::to_string(*x) : "null";
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("document", e.what());
  }
}

const json& require(const json& doc, const char* field) {
  if (!doc.is_object()) {
    throw ParseError("document", "expected a JSON object");
  }
  auto it = doc.find(field);
  if (it == doc.end()) {
    throw ParseError(field, "missing");
  }
  return *it;
}

double number(const json& x, const std::string& field) {
  if (!x.is_number()) {
    throw ParseError(field, "expected a number");
  }
  const double v = x.get<double>();
  if (!std::isfinite(v)) {
    throw ParseError(field, "non-finite value");
  }
  return v;
}

int stage_count(const json& doc) {
  const json& s = require(doc, "s");
  if (!s.is_number_integer() || s.get<long long>() < 1 || s.get<long long>() > 4096) {
    throw ParseError("s", "expected a positive integer");
  }
  return s.get<int>();
}

Eigen::VectorXd vector_field(const json& doc, const char* field, int length) {
  const json& x = require(doc, field);
  if (!x.is_array()) {
    throw ParseError(field, "expected an array");
  }
  if (static_cast<int>(x.size()) != length) {
    throw ParseError(field, "dimension mismatch: expected length " + std::to_string(length) +
                                ", got " + std::to_string(x.size()));
  }
  Eigen::VectorXd v(length);
  for (int i = 0; i < length; ++i) {
    v(i) = number(x[static_cast<std::size_t>(i)], std::string(field) + "[" + std::to_string(i) + "]");
  }
  return v;
}

Eigen::MatrixXd matrix_field(const json& doc, const char* field, int rows, int cols) {
  const json& x = require(doc, field);
  if (!x.is_array() || static_cast<int>(x.size()) != rows) {
    throw ParseError(field, "dimension mismatch: expected " + std::to_string(rows) + " rows");
  }
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const json& row = x[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      throw ParseError(field, "dimension mismatch: row " + std::to_string(i) + " must have " +
                                  std::to_string(cols) + " entries");
    }
    for (int j = 0; j < cols; ++j) {
      m(i, j) = number(row[static_cast<std::size_t>(j)], std::string(field) + "[" +
                                                             std::to_string(i) + "][" +
                                                             std::to_string(j) + "]");
    }
  }
  return m;
}

std::optional<int> optional_int(const json& doc, const char* field) {
  auto it = doc.find(field);
  if (it == doc.end() || it->is_null()) {
    return std::nullopt;
  }
  if (!it->is_number_integer()) {
    throw ParseError(field, "expected an integer or null");
  }
  return it->get<int>();
}

}  // namespace

TableauDocument parse_tableau(std::string_view text) {
  const json doc = parse_document(text);
  const int s = stage_count(doc);
  Eigen::MatrixXd a = matrix_field(doc, "A", s, s);
  Eigen::VectorXd b = vector_field(doc, "b", s);
  for (int i = 0; i < s; ++i) {
    for (int j = i; j < s; ++j) {
      if (a(i, j) != 0.0) {
        throw ParseError("A", "non-explicit: entry [" + std::to_string(i) + "][" +
                                  std::to_string(j) + "] is on or above the diagonal");
      }
    }
  }
  std::string label;
  if (auto it = doc.find("label"); it != doc.end()) {
    if (!it->is_string()) {
      throw ParseError("label", "expected a string");
    }
    label = it->get<std::string>();
  }
  return TableauDocument{label, ButcherTableau(std::move(a), std::move(b)),
                         optional_int(doc, "q"), optional_int(doc, "p")};
}

std::string emit_tableau(const TableauDocument& doc) {
  const ButcherTableau& t = doc.tableau;
  std::string out = "{\n";
  out += "  \"label\": " + json(doc.label).dump() + ",\n";
  out += "  \"s\": " + std::to_string(t.stages()) + ",\n";
  out += "  \"A\": " + format_matrix(t.a()) + ",\n";
  out += "  \"b\": " + format_row(t.b().transpose()) + ",\n";
  out += "  \"q\": " + format_optional(doc.q) + ",\n";
  out += "  \"p\": " + format_optional(doc.p) + "\n";
  return out + "}\n";
}

std::string emit_tableau(const ButcherTableau& tableau, const std::string& label,
                         std::optional<int> q, std::optional<int> p) {
  return emit_tableau(TableauDocument{label, tableau, q, p});
}

ShuOsherForm parse_shu_osher(std::string_view text) {
  const json doc = parse_document(text);
  const int s = stage_count(doc);
  ShuOsherForm form;
  form.v = vector_field(doc, "v", s + 1);
  form.alpha = matrix_field(doc, "alpha", s + 1, s);
  form.beta = matrix_field(doc, "beta", s + 1, s);
  for (int i = 0; i <= s; ++i) {
    for (int j = i; j < s; ++j) {
      if (form.alpha(i, j) != 0.0 || form.beta(i, j) != 0.0) {
        throw ParseError(form.alpha(i, j) != 0.0 ? "alpha" : "beta",
                         "non-explicit: entry [" + std::to_string(i) + "][" +
                             std::to_string(j) + "] must be zero");
      }
    }
  }
  return form;
}

std::string emit_shu_osher(const ShuOsherForm& form) {
  std::string out = "{\n";
  out += "  \"s\": " + std::to_string(form.stages()) + ",\n";
  out += "  \"v\": " + format_row(form.v.transpose()) + ",\n";
  out += "  \"alpha\": " + format_matrix(form.alpha) + ",\n";
  out += "  \"beta\": " + format_matrix(form.beta) + "\n";
  return out + "}\n";
}

}  // namespace essp
