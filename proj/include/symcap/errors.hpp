#pragma once

#include <stdexcept>
#include <string>

namespace symcap {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that could not be parsed (malformed literal, unknown option value).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A well-formed request that violates an operation's contract
/// (parameter out of range, dimension mismatch, degenerate input).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed; indicates a bug, not bad input.
class InvariantError : public Error {
 public:
  using Error::Error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw PreconditionError(message);
}

}  // namespace symcap
