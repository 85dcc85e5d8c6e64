#pragma once

#include <stdexcept>
#include <string>

namespace fillrec {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operands live in different variable scopes.
struct ScopeError : Error {
  using Error::Error;
};

/// A zero (or other non-unit) was substituted into a negative exponent.
struct SingularSubstitution : Error {
  using Error::Error;
};

/// An internal identity failed; always a bug, never bad input.
struct InvariantViolation : Error {
  using Error::Error;
};

struct ShapeError : Error {
  using Error::Error;
};

struct UsageError : Error {
  using Error::Error;
};

struct NotSortable : Error {
  using Error::Error;
};

/// The family only has an affine statistic, so no explicit product exists.
struct UnsupportedProduct : Error {
  using Error::Error;
};

struct WindowTooShort : Error {
  using Error::Error;
};

struct Inconsistency : Error {
  using Error::Error;
};

}  // namespace fillrec
