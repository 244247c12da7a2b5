#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fthresh/polyring.hpp"

namespace fthresh {

/// An ideal of F_p[x_1..x_n] given by generators, with its reduced Gröbner
/// basis (grevlex) computed lazily and cached.
///
/// Ideals are values. Copies share the cache, which is filled at most once
/// under std::call_once, so concurrent readers are safe.
class Ideal {
 public:
  explicit Ideal(RingPtr ring, std::vector<Polynomial> generators = {});

  static Ideal unit(RingPtr ring);
  /// m = (x_1, ..., x_n).
  static Ideal maximal(RingPtr ring);
  /// m^k, generated by all monomials of degree k.
  static Ideal maximal_power(RingPtr ring, std::uint64_t k);

  const RingPtr& ring() const { return ring_; }
  Prime prime() const { return ring_->prime(); }
  const std::vector<Polynomial>& generators() const { return generators_; }

  /// Reduced Gröbner basis: monic, minimal, tail-reduced, sorted by
  /// decreasing leading monomial. Empty for the zero ideal.
  const std::vector<Polynomial>& groebner_basis() const;
  /// The same ideal presented by its reduced basis (cache pre-populated).
  Ideal reduced() const;

  bool is_zero() const { return groebner_basis().empty(); }
  bool is_unit() const;

  Polynomial normal_form(const Polynomial& f) const;
  bool contains(const Polynomial& f) const { return normal_form(f).is_zero(); }
  bool contains(const Ideal& other) const;

  /// Canonical text of the reduced basis; equal ideals have equal keys.
  std::string key() const;
  /// "(g1, g2, ...)" over the reduced basis; "(1)" for the unit ideal.
  std::string to_string() const;
  /// JSON array of the reduced basis elements as polynomial strings.
  std::string to_json() const;

 private:
  struct Cache;

  RingPtr ring_;
  std::vector<Polynomial> generators_;
  std::shared_ptr<Cache> cache_;
};

Ideal reduced_groebner(const Ideal& ideal);
Polynomial normal_form(const Polynomial& f, const Ideal& ideal);
bool ideal_equal(const Ideal& a, const Ideal& b);

/// J^[p^e]: generated by the p^e-th powers of the generators of J.
Ideal bracket_power(const Ideal& ideal, std::uint64_t e);

Ideal ideal_sum(const Ideal& a, const Ideal& b);
Ideal ideal_product(const Ideal& a, const Ideal& b);
/// f·J.
Ideal scale(const Polynomial& f, const Ideal& ideal);

enum class LengthStatus {
  Finite,                // m-primary: `length` = dim R/J
  Unit,                  // J = R; `length` = 0
  NotZeroDimensional,    // R/J is infinite-dimensional
  NotSupportedAtOrigin,  // finite-dimensional, but V(J) contains points other than 0
};

struct LengthResult {
  LengthStatus status;
  std::uint64_t length = 0;  // dim_{F_p} R/J whenever that is finite

  bool m_primary() const { return status == LengthStatus::Finite; }
};

/// Length of R/J via standard monomials; classifies non-m-primary inputs.
/// Throws InfeasibleError when the quotient has more than `limit` standard
/// monomials.
LengthResult artinian_length(const Ideal& ideal, std::uint64_t limit = 20'000'000);

/// Standard monomials of a zero-dimensional ideal, increasing grevlex.
/// Throws DomainError when the ideal is not zero-dimensional.
std::vector<Monomial> standard_monomials(const Ideal& ideal, std::uint64_t limit = 20'000'000);

namespace detail {

/// True when every S-polynomial of `basis` reduces to zero modulo it.
bool satisfies_buchberger_criterion(const std::vector<Polynomial>& basis);

/// (J : g) for zero-dimensional J, computed as the kernel of multiplication
/// by g on the standard-monomial basis of R/J.
Ideal colon_zero_dimensional(const Ideal& ideal, const Polynomial& g);

}  // namespace detail

}  // namespace fthresh
