#include "fthresh/froot.hpp"

#include <map>

#include "fthresh/errors.hpp"

namespace fthresh {

namespace {

constexpr std::size_t kUnknown = static_cast<std::size_t>(-1);

// p^e, or 0 when it exceeds every exponent that can occur (no 64-bit value).
std::uint64_t frobenius_modulus(Prime p, std::uint64_t e) {
  std::uint64_t q = 1;
  for (std::uint64_t k = 0; k < e; ++k) {
    if (__builtin_mul_overflow(q, p.value(), &q)) return 0;
  }
  return q;
}

std::uint64_t small_digit(const BigInt& r) { return r.get_ui(); }

}  // namespace

Ideal froot_basis(const Polynomial& f, std::uint64_t e) {
  if (e == 0) throw DomainError("Frobenius root requires e >= 1");
  const RingPtr& ring = f.ring();
  const std::size_t n = ring->dimension();
  const std::uint64_t q = frobenius_modulus(f.prime(), e);
  // Coordinates f_μ grouped by the remainder exponent vector μ.
  std::map<std::vector<std::uint64_t>, std::vector<Term>> coords;
  for (const auto& t : f.terms()) {
    std::vector<std::uint64_t> rem(n), quo(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t a = t.monomial[i];
      quo[i] = q ? a / q : 0;
      rem[i] = q ? a % q : a;
    }
    coords[rem].push_back(Term{Monomial(std::move(quo)), t.coeff});
  }
  std::vector<Polynomial> gens;
  gens.reserve(coords.size());
  for (auto& [mu, terms] : coords) gens.emplace_back(ring, std::move(terms));
  return Ideal(ring, std::move(gens));
}

Ideal froot_ideal(const Ideal& ideal, std::uint64_t e) {
  if (e == 0) throw DomainError("Frobenius root requires e >= 1");
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) {
    const Ideal part = froot_basis(g, e);
    gens.insert(gens.end(), part.generators().begin(), part.generators().end());
  }
  return Ideal(ideal.ring(), std::move(gens));
}

Ideal froot_power(const Polynomial& f, const BigInt& n, std::uint64_t e, const Ideal& carried) {
  require_same_ring(f.ring(), carried.ring());
  if (n < 0) throw DomainError("negative exponent");
  const std::uint64_t p = f.prime();
  const BigInt pp(static_cast<unsigned long>(p));
  BigInt rest = n;
  Ideal current = carried;
  for (std::uint64_t level = 0; level < e; ++level) {
    BigInt digit;
    mpz_fdiv_qr(rest.get_mpz_t(), digit.get_mpz_t(), rest.get_mpz_t(), pp.get_mpz_t());
    const Polynomial factor = power(f, digit);
    current = froot_ideal(scale(factor, current), 1).reduced();
  }
  return scale(power(f, rest), current).reduced();
}

Ideal froot_power(const Polynomial& f, const BigInt& n, std::uint64_t e) {
  return froot_power(f, n, e, Ideal::unit(f.ring()));
}

// ---------------------------------------------------------------------------
// FrobeniusRootEngine

FrobeniusRootEngine::FrobeniusRootEngine(Polynomial f) : f_(std::move(f)) {}

std::size_t FrobeniusRootEngine::intern(const Ideal& ideal) {
  require_same_ring(f_.ring(), ideal.ring());
  const std::string key = ideal.key();
  std::lock_guard lock(mutex_);
  const auto it = ids_.find(key);
  if (it != ids_.end()) return it->second;
  const std::size_t id = ideals_.size();
  ideals_.push_back(ideal.reduced());
  ids_.emplace(key, id);
  return id;
}

Ideal FrobeniusRootEngine::ideal(std::size_t id) const {
  std::lock_guard lock(mutex_);
  return ideals_.at(id);
}

std::size_t FrobeniusRootEngine::state_count() const {
  std::lock_guard lock(mutex_);
  return ideals_.size();
}

std::size_t FrobeniusRootEngine::transition_count() const {
  std::lock_guard lock(mutex_);
  std::size_t count = 0;
  for (const auto& [digit, row] : transitions_) {
    for (auto next : row) count += next != kUnknown;
  }
  return count;
}

std::size_t FrobeniusRootEngine::transition(std::size_t id, std::uint64_t digit) {
  Ideal current(f_.ring());
  Polynomial factor(f_.ring());
  {
    std::lock_guard lock(mutex_);
    auto& row = transitions_[digit];
    if (id < row.size() && row[id] != kUnknown) return row[id];
    current = ideals_.at(id);
    if (digit < 64) {
      if (small_powers_.empty()) small_powers_.push_back(Polynomial::constant(f_.ring(), 1));
      while (small_powers_.size() <= digit) small_powers_.push_back(small_powers_.back() * f_);
      factor = small_powers_[digit];
    }
  }
  if (digit >= 64) factor = fthresh::power(f_, digit);
  // Computed outside the lock; a racing thread may duplicate the work but
  // reaches the same canonical ideal.
  const std::size_t next = intern(froot_ideal(scale(factor, current), 1));
  std::lock_guard lock(mutex_);
  auto& row = transitions_[digit];
  if (row.size() <= id) row.resize(id + 1, kUnknown);
  row[id] = next;
  return next;
}

std::size_t FrobeniusRootEngine::multiply_by_power(std::size_t id, const BigInt& q) {
  if (q == 0) return id;
  const std::string key = std::to_string(id) + ":" + q.get_str();
  Ideal current(f_.ring());
  {
    std::lock_guard lock(mutex_);
    const auto it = scaled_.find(key);
    if (it != scaled_.end()) return it->second;
    current = ideals_.at(id);
  }
  const std::size_t next = intern(scale(fthresh::power(f_, q), current));
  std::lock_guard lock(mutex_);
  scaled_.emplace(key, next);
  return next;
}

std::size_t FrobeniusRootEngine::power_id(const BigInt& n, std::uint64_t e, std::size_t carried_id) {
  if (n < 0) throw DomainError("negative exponent");
  const BigInt pp(static_cast<unsigned long>(f_.prime().value()));
  BigInt rest = n;
  std::size_t id = carried_id;
  for (std::uint64_t level = 0; level < e; ++level) {
    BigInt digit;
    mpz_fdiv_qr(rest.get_mpz_t(), digit.get_mpz_t(), rest.get_mpz_t(), pp.get_mpz_t());
    id = transition(id, small_digit(digit));
  }
  return multiply_by_power(id, rest);
}

Ideal FrobeniusRootEngine::power(const BigInt& n, std::uint64_t e, const Ideal& carried) {
  return ideal(power_id(n, e, intern(carried)));
}

Ideal FrobeniusRootEngine::power(const BigInt& n, std::uint64_t e) {
  return power(n, e, Ideal::unit(f_.ring()));
}

}  // namespace fthresh
