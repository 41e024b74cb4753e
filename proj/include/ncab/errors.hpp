#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ncab {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Point outside the region where a field model is defined
/// (e.g. inside a solenoid, whose interior is not modelled).
class RegionError : public DomainError {
  public:
    using DomainError::DomainError;
};

/// Malformed parameters or scenario values.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Scenario document could not be parsed.
class ParseError : public ValidationError {
  public:
    ParseError(std::size_t line, std::string field, const std::string& what)
        : ValidationError("line " + std::to_string(line) + (field.empty() ? "" : " [" + field + "]") + ": " + what),
          line_(line),
          field_(std::move(field)) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

  private:
    std::size_t line_;
    std::string field_;
};

/// Adaptive quadrature exhausted its subdivision budget. Carries the best
/// available estimate and its error bound.
class ConvergenceError : public Error {
  public:
    ConvergenceError(const std::string& what, double estimate, double error_bound)
        : Error(what), estimate_(estimate), error_bound_(error_bound) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

  private:
    double estimate_;
    double error_bound_;
};

/// A self-check inside a computation failed.
class InvariantError : public Error {
  public:
    using Error::Error;
};

} // namespace ncab
