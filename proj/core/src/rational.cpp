#include "fthresh/rational.hpp"

#include <cctype>
#include <utility>

#include "fthresh/errors.hpp"

namespace fthresh {

namespace {

void require_non_negative(const mpq_class& q) {
  if (sgn(q) < 0) throw DomainError("negative rational " + q.get_str());
}

BigInt parse_natural(std::string_view text, std::string_view whole) {
  if (text.empty()) throw ParseError("empty integer in rational '" + std::string(whole) + "'", 0);
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw ParseError("bad digit in rational '" + std::string(whole) + "'", i);
    }
  }
  return BigInt(std::string(text), 10);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational::Rational(long value) : value_(value) { require_non_negative(value_); }

Rational::Rational(const BigInt& value) : value_(value) { require_non_negative(value_); }

Rational::Rational(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) throw DomainError("zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
  require_non_negative(value_);
}

Rational::Rational(mpq_class value) : value_(std::move(value)) {
  value_.canonicalize();
  require_non_negative(value_);
}

Rational Rational::parse(std::string_view text) {
  const std::string_view body = trim(text);
  const auto slash = body.find('/');
  if (slash == std::string_view::npos) return Rational(parse_natural(body, text));
  const BigInt num = parse_natural(trim(body.substr(0, slash)), text);
  const BigInt den = parse_natural(trim(body.substr(slash + 1)), text);
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'", slash + 1);
  return Rational(num, den);
}

BigInt Rational::floor() const {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return q;
}

BigInt Rational::ceil() const {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return q;
}

Rational Rational::frac() const { return Rational(mpq_class(value_ - mpq_class(floor()))); }

std::string Rational::to_string() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.value_ + b.value_)); }

Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.value_ - b.value_)); }

Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.value_ * b.value_)); }

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  return Rational(mpq_class(a.value_ / b.value_));
}

Rational abs_diff(const Rational& a, const Rational& b) { return a < b ? b - a : a - b; }

BigInt big_pow(unsigned long base, unsigned long exponent) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exponent);
  return r;
}

}  // namespace fthresh
