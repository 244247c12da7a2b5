#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fthresh {

// Base of every error raised by the library. The CLI maps each subclass to a
// distinct exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An input violates an operation's precondition (λ = 0 where λ > 0 is
// required, f outside m, ring mismatch, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Text could not be parsed. `offset` is the byte offset of the offending
// character in the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : Error(message + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// The request is well-posed but beyond a configured resource limit, or a
// search ran past its cap.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

class NotFoundBelowCap : public InfeasibleError {
 public:
  using InfeasibleError::InfeasibleError;
};

// A documented precondition that the library cannot check up front turned
// out to be false mid-computation.
class PreconditionViolation : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace fthresh
