#pragma once

#include <stdexcept>
#include <string>

namespace freqspec {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input: words, rationals, Nielsen tokens, vector files.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An argument violates an operation's precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A window or enumeration would exceed the configured size budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed; always a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace freqspec
