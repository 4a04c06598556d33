#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace griphand {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A linkage that cannot close for the requested configuration.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain where a formula is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Target value outside the achievable range of a mechanism.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// No finite actuation satisfies the requested friction condition.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Object lies outside the region a gripper can capture.
class CaptureError : public Error {
 public:
  using Error::Error;
};

/// Fingertip deflection leaves no usable release opening for a screw.
class NoValidOpeningError : public Error {
 public:
  using Error::Error;
};

/// Motor torque cannot be converted into grip force at this pose.
class SingularGripError : public Error {
 public:
  using Error::Error;
};

/// Malformed scenario file. Carries the 1-based line/column when the
/// JSON itself is broken, or the dotted field path when a value is wrong.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::string field, int line = 0, int column = 0)
      : Error(message), field_(std::move(field)), line_(line), column_(column) {}

  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  std::string field_;
  int line_;
  int column_;
};

class UnitError : public Error {
 public:
  using Error::Error;
};

/// Lists every violated invariant found while validating a scenario.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& items) {
    std::string out = "scenario validation failed:";
    for (const auto& item : items) {
      out += "\n  - ";
      out += item;
    }
    return out;
  }

  std::vector<std::string> violations_;
};

}  // namespace griphand
