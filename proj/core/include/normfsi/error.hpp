#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace normfsi {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two words or a word and a machine tape disagree on their alphabet.
class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

/// An explicit word stream was read past its last symbol.
class StreamExhausted : public Error {
 public:
  using Error::Error;
};

/// A machine failed a structural check (determinism, completeness, type).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed the configured budget. `required` is the
/// nominal enumeration size that was refused.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::string what, std::string required, std::uint64_t budget)
      : Error(std::move(what)), required_(std::move(required)), budget_(budget) {}

  const std::string& required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::string required_;
  std::uint64_t budget_;
};

}  // namespace normfsi
