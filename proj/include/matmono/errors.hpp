#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace matmono {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand dimensions do not agree, or a dimension is outside the supported range.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of the requested map.
///
/// `value` carries the offending eigenvalue (or entry) when there is one;
/// `parameter` carries the curve/segment parameter when the exit happened
/// along a path.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what, std::optional<double> value = std::nullopt,
                       std::optional<double> parameter = std::nullopt)
      : Error(what), value_(value), parameter_(parameter) {}

  std::optional<double> value() const { return value_; }
  std::optional<double> parameter() const { return parameter_; }

 private:
  std::optional<double> value_;
  std::optional<double> parameter_;
};

/// An iterative kernel did not converge, or conditioning made the result meaningless.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double residual) : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Invalid configuration: unknown names, parameter thresholds, missing antiderivatives.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace matmono
