#pragma once

#include <cstdint>

namespace fthresh {

/// A prime characteristic p. Construction verifies primality and that p fits
/// in 62 bits, so products of two residues fit in unsigned 128-bit arithmetic.
class Prime {
 public:
  explicit Prime(std::uint64_t value);

  std::uint64_t value() const { return value_; }
  operator std::uint64_t() const { return value_; }  // NOLINT(google-explicit-constructor)

  friend bool operator==(Prime a, Prime b) = default;

 private:
  std::uint64_t value_;
};

bool is_prime(std::uint64_t n);

}  // namespace fthresh
