#ifndef MCF_ERROR_HPP
#define MCF_ERROR_HPP

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace mcf {

enum class ErrorCode {
  InsufficientData,
  DegenerateDirection,
  DegenerateProjection,
  DegenerateSpectrum,
  NumericalError,
  NonConvergence,
  NotPositiveDefinite,
  OutsideDomain,
  ParseError,
  IoError,
  InvalidParams,
};

const char* to_string(ErrorCode code);

/// Base class for every failure the library reports. The code identifies the
/// error class; the CLI maps it to machine-readable JSON on stderr.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Iterative procedure ran out of iterations. Carries the best iterate seen
/// so callers can inspect how close the search got.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& message, Eigen::VectorXd best_iterate,
                      double best_value)
      : Error(ErrorCode::NonConvergence, message),
        best_iterate_(std::move(best_iterate)),
        best_value_(best_value) {}

  const Eigen::VectorXd& best_iterate() const noexcept { return best_iterate_; }
  double best_value() const noexcept { return best_value_; }

 private:
  Eigen::VectorXd best_iterate_;
  double best_value_;
};

/// A cumulant-function evaluation was requested outside the distribution's
/// admissible region. Identifies which positivity constraint failed.
class OutsideDomainError : public Error {
 public:
  enum class Constraint { ComponentBound, SumBound };

  OutsideDomainError(const std::string& message, Constraint constraint,
                     int component = -1)
      : Error(ErrorCode::OutsideDomain, message),
        constraint_(constraint),
        component_(component) {}

  Constraint constraint() const noexcept { return constraint_; }
  /// Index of the violating component, or -1 for the sum constraint.
  int component() const noexcept { return component_; }

 private:
  Constraint constraint_;
  int component_;
};

}  // namespace mcf

#endif  // MCF_ERROR_HPP
