#pragma once

#include <stdexcept>
#include <string>

namespace fracspace {

/// Base of every error the engine reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: a config, shape or request field failed validation.
/// `field()` is a dotted path such as "fractal.r_dot.base".
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)),
        message_(message) {}

  const std::string& field() const noexcept { return field_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string field_;
  std::string message_;
};

/// Valid input that cannot be evaluated.
class ComputationError : public Error {
 public:
  using Error::Error;
};

/// Path parameter or coordinate beyond the depth of the branch code.
class OutOfRangeError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

/// Adaptive quadrature did not reach its tolerance within the depth limit.
class ConvergenceError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

/// Generation cap or work budget exceeded.
class LimitError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

/// Caller broke an operation precondition (e.g. a branch point inside a segment).
class PreconditionError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

/// Nothing to draw.
class EmptySceneError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

}  // namespace fracspace
