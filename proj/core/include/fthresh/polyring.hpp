#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fthresh/prime.hpp"
#include "fthresh/rational.hpp"

namespace fthresh {

/// F_p[x_1, ..., x_n]: the prime and the ordered variable names.
class Ring {
 public:
  Ring(Prime p, std::vector<std::string> variables);

  static std::shared_ptr<const Ring> make(Prime p, std::vector<std::string> variables);

  Prime prime() const { return prime_; }
  std::size_t dimension() const { return variables_.size(); }
  const std::vector<std::string>& variables() const { return variables_; }
  /// Index of `name`, or dimension() when absent.
  std::size_t index_of(std::string_view name) const;

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.prime_ == b.prime_ && a.variables_ == b.variables_;
  }

 private:
  Prime prime_;
  std::vector<std::string> variables_;
};

using RingPtr = std::shared_ptr<const Ring>;

/// Throws DomainError unless the two rings coincide.
void require_same_ring(const RingPtr& a, const RingPtr& b);

/// Exponent vector with its cached total degree.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t n) : exps_(n, 0) {}
  explicit Monomial(std::vector<std::uint64_t> exps);

  std::size_t size() const { return exps_.size(); }
  std::uint64_t operator[](std::size_t i) const { return exps_[i]; }
  std::span<const std::uint64_t> exponents() const { return exps_; }
  std::uint64_t degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  bool divides(const Monomial& other) const;
  /// Product; throws InfeasibleError on exponent overflow.
  Monomial operator*(const Monomial& other) const;
  /// Quotient; requires divides().
  Monomial operator/(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;
  bool coprime(const Monomial& other) const;
  /// Every exponent multiplied by `factor`.
  Monomial scaled(std::uint64_t factor) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }

 private:
  std::vector<std::uint64_t> exps_;
  std::uint64_t degree_ = 0;
};

/// Graded reverse lexicographic comparison: negative, zero or positive.
int grevlex_compare(const Monomial& a, const Monomial& b);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

struct Term {
  Monomial monomial;
  std::uint64_t coeff;  // in [1, p-1]
};

/// Sparse polynomial over F_p. Terms are kept strictly decreasing in grevlex
/// order with nonzero coefficients, so equal polynomials have identical term
/// vectors.
class Polynomial {
 public:
  explicit Polynomial(RingPtr ring);
  Polynomial(RingPtr ring, std::vector<Term> terms);  // any order, duplicates summed

  /// Adopts `terms` without normalizing; they must already be strictly
  /// decreasing in grevlex order with coefficients in [1, p-1].
  static Polynomial from_sorted(RingPtr ring, std::vector<Term> terms);

  static Polynomial constant(RingPtr ring, std::uint64_t c);
  static Polynomial variable(RingPtr ring, std::size_t index);
  static Polynomial monomial(RingPtr ring, Monomial m, std::uint64_t coeff = 1);

  const RingPtr& ring() const { return ring_; }
  Prime prime() const { return ring_->prime(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }
  /// Constant coefficient (0 when absent).
  std::uint64_t constant_term() const;
  /// True when f(0) = 0.
  bool in_maximal_ideal() const { return constant_term() == 0; }
  std::uint64_t total_degree() const;
  /// Least total degree of a term; 0 for the zero polynomial.
  std::uint64_t order() const;

  const Term& leading_term() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().monomial; }
  std::uint64_t leading_coeff() const { return terms_.front().coeff; }

  Polynomial operator-() const;
  Polynomial scaled(std::uint64_t c) const;
  Polynomial monic() const;
  Polynomial times_term(const Monomial& m, std::uint64_t c) const;
  /// Exponents multiplied by `factor`: the image of f under x ↦ x^factor,
  /// which equals f^factor when factor is a power of p.
  Polynomial exponent_scaled(std::uint64_t factor) const;

  /// this − c·m·g in one merge pass.
  Polynomial minus_term_times(std::uint64_t c, const Monomial& m, const Polynomial& g) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  /// Text form, e.g. "4x^3 + 2x*y^2".
  std::string to_string() const;

 private:
  RingPtr ring_;
  std::vector<Term> terms_;
};

Polynomial multiply(const Polynomial& a, const Polynomial& b);

/// f^n by base-p digits: f^(p q + r) = (f^q with exponents scaled by p) · f^r.
Polynomial power(const Polynomial& f, const BigInt& n);
Polynomial power(const Polynomial& f, std::uint64_t n);

/// f^n by n − 1 successive multiplications. Reference path for tests.
Polynomial power_naive(const Polynomial& f, std::uint64_t n);

Polynomial partial_derivative(const Polynomial& f, std::size_t index);

/// Modular helpers on 62-bit residues.
std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p);
/// Reduces a signed integer given as decimal digits into [0, p).
std::uint64_t reduce_mod(const BigInt& value, std::uint64_t p);

}  // namespace fthresh
