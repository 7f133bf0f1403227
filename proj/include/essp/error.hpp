#pragma once

#include <stdexcept>
#include <string>

namespace essp {

/// Base for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed tableau or Shu-Osher document.
class ParseError : public Error {
 public:
  ParseError(const std::string& field, const std::string& what)
      : Error(field + ": " + what), field_(field) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// A state component became NaN or infinite while stepping.
class BlowUpError : public Error {
 public:
  BlowUpError(int step, int stage)
      : Error("non-finite state at step " + std::to_string(step) + ", stage " +
              std::to_string(stage)),
        step_(step),
        stage_(stage) {}

  int step() const { return step_; }
  int stage() const { return stage_; }

 private:
  int step_;
  int stage_;
};

}  // namespace essp
