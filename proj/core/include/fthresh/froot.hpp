#pragma once

#include <cstdint>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "fthresh/groebner.hpp"

namespace fthresh {

/// I_e(f): the smallest ideal b with f ∈ b^[p^e], read off by splitting each
/// exponent vector of f into quotient and remainder mod p^e. Requires e >= 1.
Ideal froot_basis(const Polynomial& f, std::uint64_t e);

/// I_e(J) = Σ_g I_e(g) over the generators g of J. Requires e >= 1.
Ideal froot_ideal(const Ideal& ideal, std::uint64_t e);

/// I_e(f^N · J) without expanding f^N:
///   I_e(f^N J) = I_{e-1}( f^⌊N/p⌋ · I_1(f^(N mod p) J) ),   I_0(f^N J) = f^N J.
/// Intermediate ideals are canonicalized at every level.
Ideal froot_power(const Polynomial& f, const BigInt& n, std::uint64_t e, const Ideal& carried);
Ideal froot_power(const Polynomial& f, const BigInt& n, std::uint64_t e);

/// Memoizing evaluator of froot_power for one fixed f.
///
/// Each recursion level maps (current ideal, base-p digit) to the next ideal.
/// When the carried ideal is R, the ideal after k levels is
/// I_k(f^(N mod p^k)) = τ(f^((N mod p^k)/p^k)), so only finitely many states
/// ever occur and every transition is computed once. Ideals are interned by
/// their canonical key. Thread-safe.
class FrobeniusRootEngine {
 public:
  explicit FrobeniusRootEngine(Polynomial f);

  const Polynomial& polynomial() const { return f_; }

  Ideal power(const BigInt& n, std::uint64_t e);
  Ideal power(const BigInt& n, std::uint64_t e, const Ideal& carried);

  /// Interned id of `ideal` (canonical key lookup). Equal ideals share ids.
  std::size_t intern(const Ideal& ideal);
  /// Id-level variant of power(): returns the id of I_e(f^N · ideal(id)).
  std::size_t power_id(const BigInt& n, std::uint64_t e, std::size_t carried_id);
  Ideal ideal(std::size_t id) const;

  std::size_t state_count() const;
  std::size_t transition_count() const;

 private:
  std::size_t transition(std::size_t id, std::uint64_t digit);
  std::size_t multiply_by_power(std::size_t id, const BigInt& q);

  Polynomial f_;
  mutable std::mutex mutex_;
  std::vector<Ideal> ideals_;
  std::unordered_map<std::string, std::size_t> ids_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> transitions_;  // digit -> id -> next
  std::unordered_map<std::string, std::size_t> scaled_;                      // "id:q" -> id
  std::vector<Polynomial> small_powers_;  // f^0, f^1, ... for small digits
};

}  // namespace fthresh
