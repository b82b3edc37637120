#pragma once

#include <stdexcept>
#include <string>

namespace disslab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a physical law (e.g. nonpositive density).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Riemann data outside the two-shock regime.
class RegimeError : public Error {
 public:
  using Error::Error;
};

/// Root bracketing or iteration failure.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Elimination divides by rho_pm - rho_1.
class SingularEliminationError : public Error {
 public:
  using Error::Error;
};

/// Tangential unknowns cannot satisfy both interface conditions.
class ReductionError : public Error {
 public:
  using Error::Error;
};

/// Object fails a feasibility requirement (e.g. certify on a boundary point).
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Quadrature did not resolve the test function support.
class RefinementError : public Error {
 public:
  using Error::Error;
};

/// Malformed scenario or certificate text. Carries the offending line (1-based, 0 if unknown).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace disslab
