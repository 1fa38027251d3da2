#pragma once

#include <stdexcept>
#include <string>

namespace symplectica {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value failed one of its type invariants. `invariant()` names the
/// violated invariant so front ends can report it verbatim.
class InvariantViolation : public Error {
 public:
  InvariantViolation(std::string invariant, const std::string& detail)
      : Error(invariant + ": " + detail), invariant_(std::move(invariant)) {}

  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

/// An operation was called outside its domain (wrong shapes, unsupported
/// prime, parameters out of range).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would exceed its configured bound.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace symplectica
