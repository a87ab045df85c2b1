#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace flp {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad numbers, out-of-range agent indices, invalid generator ranges.
class InputError : public Error {
 public:
  using Error::Error;
};

// A malformed numeric literal. `offset` is the 0-based character position of the
// first offending character inside the literal.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t offset) : InputError(what), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// More facilities requested than there are agents to host them.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// A mechanism (or closed-form helper) was applied outside its structural preconditions.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A value type invariant was broken (e.g. lottery probabilities not summing to one).
class InvariantError : public Error {
 public:
  using Error::Error;
};

// Exhaustive enumeration would exceed the configured budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

class UnsupportedVariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace flp
