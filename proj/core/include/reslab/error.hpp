#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace reslab {

// Failure categories shared by every module. The CLI maps these onto exit
// codes, so new kinds must also be added to exit_code_for().
enum class ErrorKind {
  kEmptyDomain,
  kIncompleteSource,
  kParse,
  kDomain,
  kPole,
  kConditioning,
  kAccuracy,
  kGridRefinement,
  kProfileRejected,
  kBudget,
  kInsufficientPoints,
  kConfig,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Coefficient source lacks a value the computation needs.
class IncompleteSourceError : public Error {
 public:
  IncompleteSourceError(std::uint64_t missing, const std::string& message)
      : Error(ErrorKind::kIncompleteSource, message), missing_(missing) {}

  // The prime (or index) that was needed but not supplied.
  std::uint64_t missing() const noexcept { return missing_; }

 private:
  std::uint64_t missing_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(ErrorKind::kParse, "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Numerical procedure did not reach its target; carries the best estimate.
class AccuracyError : public Error {
 public:
  AccuracyError(double estimate, double achieved_error, const std::string& message)
      : Error(ErrorKind::kAccuracy, message),
        estimate_(estimate),
        achieved_error_(achieved_error) {}

  double estimate() const noexcept { return estimate_; }
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double estimate_;
  double achieved_error_;
};

}  // namespace reslab
