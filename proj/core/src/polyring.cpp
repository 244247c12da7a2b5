#include "fthresh/polyring.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "fthresh/errors.hpp"

namespace fthresh {

// ---------------------------------------------------------------------------
// Modular arithmetic

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) result = mod_mul(result, a, p);
    a = mod_mul(a, a, p);
    e >>= 1;
  }
  return result;
}

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw DomainError("zero has no inverse mod p");
  return mod_pow(a, p - 2, p);
}

std::uint64_t reduce_mod(const BigInt& value, std::uint64_t p) {
  BigInt r;
  const BigInt pp(std::to_string(p), 10);
  mpz_fdiv_r(r.get_mpz_t(), value.get_mpz_t(), pp.get_mpz_t());
  return std::stoull(r.get_str());
}

// ---------------------------------------------------------------------------
// Ring

Ring::Ring(Prime p, std::vector<std::string> variables) : prime_(p), variables_(std::move(variables)) {
  if (variables_.empty()) throw DomainError("a ring needs at least one variable");
  std::unordered_set<std::string> seen;
  for (const auto& v : variables_) {
    if (v.empty()) throw DomainError("empty variable name");
    if (!seen.insert(v).second) throw DomainError("duplicate variable name '" + v + "'");
  }
}

RingPtr Ring::make(Prime p, std::vector<std::string> variables) {
  return std::make_shared<const Ring>(p, std::move(variables));
}

std::size_t Ring::index_of(std::string_view name) const {
  const auto it = std::find(variables_.begin(), variables_.end(), name);
  return static_cast<std::size_t>(it - variables_.begin());
}

void require_same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return;
  if (!a || !b || !(*a == *b)) throw DomainError("ring mismatch");
}

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(std::vector<std::uint64_t> exps) : exps_(std::move(exps)) {
  for (auto e : exps_) {
    if (__builtin_add_overflow(degree_, e, &degree_)) throw InfeasibleError("monomial degree overflow");
  }
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  r.exps_.resize(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (__builtin_add_overflow(exps_[i], other.exps_[i], &r.exps_[i])) {
      throw InfeasibleError("exponent overflow in monomial product");
    }
  }
  if (__builtin_add_overflow(degree_, other.degree_, &r.degree_)) throw InfeasibleError("monomial degree overflow");
  return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial r;
  r.exps_.resize(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = exps_[i] - other.exps_[i];
  r.degree_ = degree_ - other.degree_;
  return r;
}

Monomial Monomial::lcm(const Monomial& other) const {
  std::vector<std::uint64_t> e(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) e[i] = std::max(exps_[i], other.exps_[i]);
  return Monomial(std::move(e));
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] && other.exps_[i]) return false;
  }
  return true;
}

Monomial Monomial::scaled(std::uint64_t factor) const {
  Monomial r;
  r.exps_.resize(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (__builtin_mul_overflow(exps_[i], factor, &r.exps_[i])) {
      throw InfeasibleError("exponent overflow in Frobenius scaling");
    }
  }
  if (__builtin_mul_overflow(degree_, factor, &r.degree_)) throw InfeasibleError("monomial degree overflow");
  return r;
}

int grevlex_compare(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (auto e : m.exponents()) h = (h ^ e) * 0x100000001b3ULL + (h >> 29);
  return h;
}

// ---------------------------------------------------------------------------
// Polynomial

namespace {

bool term_greater(const Term& a, const Term& b) { return grevlex_compare(a.monomial, b.monomial) > 0; }

}  // namespace

Polynomial::Polynomial(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw DomainError("polynomial without a ring");
}

Polynomial::Polynomial(RingPtr ring, std::vector<Term> terms) : Polynomial(std::move(ring)) {
  const std::uint64_t p = prime();
  const std::size_t n = ring_->dimension();
  for (auto& t : terms) {
    if (t.monomial.size() != n) throw DomainError("monomial length does not match the ring dimension");
    t.coeff %= p;
  }
  std::sort(terms.begin(), terms.end(), term_greater);
  for (auto& t : terms) {
    if (!terms_.empty() && terms_.back().monomial == t.monomial) {
      terms_.back().coeff = (terms_.back().coeff + t.coeff) % p;
      if (terms_.back().coeff == 0) terms_.pop_back();
    } else if (t.coeff != 0) {
      terms_.push_back(std::move(t));
    }
  }
}

Polynomial Polynomial::from_sorted(RingPtr ring, std::vector<Term> terms) {
  Polynomial r(std::move(ring));
  r.terms_ = std::move(terms);
  return r;
}

Polynomial Polynomial::constant(RingPtr ring, std::uint64_t c) {
  const std::size_t n = ring->dimension();
  return Polynomial(std::move(ring), {Term{Monomial(n), c}});
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index) {
  if (index >= ring->dimension()) throw DomainError("variable index out of range");
  std::vector<std::uint64_t> e(ring->dimension(), 0);
  e[index] = 1;
  return Polynomial(std::move(ring), {Term{Monomial(std::move(e)), 1}});
}

Polynomial Polynomial::monomial(RingPtr ring, Monomial m, std::uint64_t coeff) {
  return Polynomial(std::move(ring), {Term{std::move(m), coeff}});
}

std::uint64_t Polynomial::constant_term() const {
  if (!terms_.empty() && terms_.back().monomial.is_one()) return terms_.back().coeff;
  return 0;
}

std::uint64_t Polynomial::total_degree() const { return terms_.empty() ? 0 : terms_.front().monomial.degree(); }

std::uint64_t Polynomial::order() const { return terms_.empty() ? 0 : terms_.back().monomial.degree(); }

Polynomial Polynomial::operator-() const { return scaled(prime() - 1); }

Polynomial Polynomial::scaled(std::uint64_t c) const {
  const std::uint64_t p = prime();
  c %= p;
  Polynomial r(ring_);
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back(Term{t.monomial, mod_mul(t.coeff, c, p)});
  return r;
}

Polynomial Polynomial::monic() const {
  if (is_zero() || leading_coeff() == 1) return *this;
  return scaled(mod_inv(leading_coeff(), prime()));
}

Polynomial Polynomial::times_term(const Monomial& m, std::uint64_t c) const {
  const std::uint64_t p = prime();
  c %= p;
  Polynomial r(ring_);
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back(Term{t.monomial * m, mod_mul(t.coeff, c, p)});
  return r;
}

Polynomial Polynomial::exponent_scaled(std::uint64_t factor) const {
  Polynomial r(ring_);
  if (factor == 0) {
    std::uint64_t sum = 0;
    for (const auto& t : terms_) sum = (sum + t.coeff) % prime();
    return sum ? constant(ring_, sum) : r;
  }
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back(Term{t.monomial.scaled(factor), t.coeff});
  return r;
}

Polynomial Polynomial::minus_term_times(std::uint64_t c, const Monomial& m, const Polynomial& g) const {
  const std::uint64_t p = prime();
  const std::uint64_t neg = (p - c % p) % p;
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size() + g.terms_.size());
  auto it = terms_.begin();
  for (const auto& gt : g.terms_) {
    Monomial prod = gt.monomial * m;
    const std::uint64_t coeff = mod_mul(gt.coeff, neg, p);
    while (it != terms_.end() && grevlex_compare(it->monomial, prod) > 0) r.terms_.push_back(*it++);
    if (it != terms_.end() && it->monomial == prod) {
      const std::uint64_t s = (it->coeff + coeff) % p;
      if (s) r.terms_.push_back(Term{std::move(prod), s});
      ++it;
    } else if (coeff) {
      r.terms_.push_back(Term{std::move(prod), coeff});
    }
  }
  r.terms_.insert(r.terms_.end(), it, terms_.end());
  return r;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a.ring_, b.ring_);
  const std::uint64_t p = a.prime();
  Polynomial r(a.ring_);
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  auto i = a.terms_.begin();
  auto j = b.terms_.begin();
  while (i != a.terms_.end() && j != b.terms_.end()) {
    const int c = grevlex_compare(i->monomial, j->monomial);
    if (c > 0) {
      r.terms_.push_back(*i++);
    } else if (c < 0) {
      r.terms_.push_back(*j++);
    } else {
      const std::uint64_t s = (i->coeff + j->coeff) % p;
      if (s) r.terms_.push_back(Term{i->monomial, s});
      ++i;
      ++j;
    }
  }
  r.terms_.insert(r.terms_.end(), i, a.terms_.end());
  r.terms_.insert(r.terms_.end(), j, b.terms_.end());
  return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a.ring_, b.ring_);
  if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
  const std::uint64_t p = a.prime();
  if (a.size() == 1) return b.times_term(a.terms_[0].monomial, a.terms_[0].coeff);
  if (b.size() == 1) return a.times_term(b.terms_[0].monomial, b.terms_[0].coeff);
  std::unordered_map<Monomial, std::uint64_t, MonomialHash> acc;
  acc.reserve(a.size() * b.size());
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      auto& slot = acc[s.monomial * t.monomial];
      slot = (slot + mod_mul(s.coeff, t.coeff, p)) % p;
    }
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (c) terms.push_back(Term{m, c});
  }
  Polynomial r(a.ring_);
  std::sort(terms.begin(), terms.end(), term_greater);
  r.terms_ = std::move(terms);
  return r;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.ring_ != b.ring_ && !(*a.ring_ == *b.ring_)) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].coeff != b.terms_[i].coeff || !(a.terms_[i].monomial == b.terms_[i].monomial)) return false;
  }
  return true;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  const auto& vars = ring_->variables();
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += " + ";
    const bool unit = t.monomial.is_one();
    if (t.coeff != 1 || unit) out += std::to_string(t.coeff);
    bool first = true;
    for (std::size_t i = 0; i < t.monomial.size(); ++i) {
      const auto e = t.monomial[i];
      if (e == 0) continue;
      if (!first) out += '*';
      first = false;
      out += vars[i];
      if (e != 1) out += "^" + std::to_string(e);
    }
  }
  return out;
}

Polynomial multiply(const Polynomial& a, const Polynomial& b) { return a * b; }

namespace {

Polynomial small_power(const Polynomial& f, std::uint64_t n) {
  Polynomial result = Polynomial::constant(f.ring(), 1);
  Polynomial base = f;
  while (n) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

}  // namespace

Polynomial power(const Polynomial& f, const BigInt& n) {
  if (n < 0) throw DomainError("negative exponent");
  if (n == 0) return Polynomial::constant(f.ring(), 1);
  if (f.is_zero()) return f;
  const std::uint64_t p = f.prime();
  const BigInt pp(std::to_string(p), 10);
  // Base-p digits, least significant first.
  std::vector<std::uint64_t> digits;
  BigInt rest = n;
  while (rest != 0) {
    BigInt r;
    mpz_fdiv_qr(rest.get_mpz_t(), r.get_mpz_t(), rest.get_mpz_t(), pp.get_mpz_t());
    digits.push_back(std::stoull(r.get_str()));
  }
  Polynomial result = Polynomial::constant(f.ring(), 1);
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    result = result.exponent_scaled(p);
    if (*it) result = result * small_power(f, *it);
  }
  return result;
}

Polynomial power(const Polynomial& f, std::uint64_t n) { return power(f, BigInt(std::to_string(n), 10)); }

Polynomial power_naive(const Polynomial& f, std::uint64_t n) {
  Polynomial result = Polynomial::constant(f.ring(), 1);
  for (std::uint64_t i = 0; i < n; ++i) result = result * f;
  return result;
}

Polynomial partial_derivative(const Polynomial& f, std::size_t index) {
  if (index >= f.ring()->dimension()) throw DomainError("variable index out of range");
  const std::uint64_t p = f.prime();
  std::vector<Term> terms;
  for (const auto& t : f.terms()) {
    const std::uint64_t e = t.monomial[index];
    const std::uint64_t c = mod_mul(t.coeff, e % p, p);
    if (c == 0) continue;
    std::vector<std::uint64_t> exps(t.monomial.exponents().begin(), t.monomial.exponents().end());
    --exps[index];
    terms.push_back(Term{Monomial(std::move(exps)), c});
  }
  return Polynomial(f.ring(), std::move(terms));
}

}  // namespace fthresh
