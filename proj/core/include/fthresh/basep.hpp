#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fthresh/prime.hpp"
#include "fthresh/rational.hpp"

namespace fthresh {

/// A pair (u, v) with p^u (p^v − 1) λ ∈ N.
struct ExponentPair {
  std::uint64_t u = 0;
  std::uint64_t v = 1;

  friend bool operator==(const ExponentPair&, const ExponentPair&) = default;
};

/// Half-open interval [lo, hi); `hi` absent means unbounded above.
struct Window {
  Rational lo{0};
  std::optional<Rational> hi{Rational(1)};

  bool contains(const Rational& x) const { return lo <= x && (!hi || x < *hi); }
  std::string to_string() const;
};

/// The candidate jumping numbers 𝒜_B ∩ window, sorted and deduplicated.
/// `pairs[i]` is the canonical pair of `values[i]` (absent for 0).
struct CandidateSet {
  Prime prime{2};
  std::uint64_t bound = 1;
  Window window;
  std::vector<Rational> values;
  std::vector<std::optional<ExponentPair>> pairs;

  std::size_t size() const { return values.size(); }
};

/// ⟨λ⟩_e = (⌈p^e λ⌉ − 1) / p^e. Requires λ > 0.
Rational truncate(const Rational& lambda, std::uint64_t e, Prime p);

/// The canonical element of E_p(λ): u is the p-adic valuation of the reduced
/// denominator, v the multiplicative order of p modulo the p-free part.
ExponentPair epsilon(const Rational& lambda, Prime p);

/// True iff p^u (p^v − 1) λ is an integer.
bool in_expset(const Rational& lambda, const ExponentPair& pair, Prime p);

/// Every rational in `window` whose denominator divides p^a (p^b − 1) for some
/// a + b <= bound, together with 0 when 0 lies in the window.
/// Throws DomainError for an unbounded window or bound = 0, InfeasibleError
/// when the raw enumeration would exceed `budget` fractions.
CandidateSet candidate_set(Prime p, std::uint64_t bound, const Window& window,
                           std::uint64_t budget = 50'000'000);

/// Number of fractions the enumeration in candidate_set would visit.
BigInt candidate_enumeration_size(Prime p, std::uint64_t bound, const Window& window);

/// frac(p^e λ) for e = 0 .. count − 1.
std::vector<Rational> frac_orbit(const Rational& lambda, std::uint64_t count, Prime p);

/// Decides λ = γ by comparing truncations at index u + a + v b, where
/// (u, v) = pair_lambda and (a, b) = pair_gamma.
bool truncation_equal(const Rational& lambda, const Rational& gamma, const ExponentPair& pair_lambda,
                      const ExponentPair& pair_gamma, Prime p);

/// Serializes a candidate set as a JSON array of "num/den" strings.
std::string candidates_to_json(const CandidateSet& set);

}  // namespace fthresh
