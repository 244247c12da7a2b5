#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace fthresh {

using BigInt = mpz_class;

/// Exact non-negative rational number, always stored in lowest terms.
///
/// Every parameter that flows through the engine (λ, truncations, thresholds,
/// gaps) is a Rational; there is no floating-point path anywhere in the core.
/// Construction from a negative value or a zero denominator throws
/// DomainError.
class Rational {
 public:
  Rational() = default;
  Rational(long value);  // NOLINT(google-explicit-constructor)
  explicit Rational(const BigInt& value);
  Rational(const BigInt& numerator, const BigInt& denominator);

  /// Parses "a/b" or "a" (decimal integers, surrounding whitespace allowed).
  static Rational parse(std::string_view text);

  const BigInt& numerator() const { return value_.get_num(); }
  const BigInt& denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  BigInt floor() const;
  BigInt ceil() const;
  /// λ − ⌊λ⌋, in [0, 1).
  Rational frac() const;

  /// "num/den", or "num" when the denominator is 1.
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  /// Throws DomainError when the result would be negative.
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  explicit Rational(mpq_class value);

  mpq_class value_{0};
};

/// |a − b|.
Rational abs_diff(const Rational& a, const Rational& b);

/// base^exponent as a big integer.
BigInt big_pow(unsigned long base, unsigned long exponent);

}  // namespace fthresh
