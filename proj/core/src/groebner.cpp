#include "fthresh/groebner.hpp"

#include <algorithm>
#include <mutex>

#include <nlohmann/json.hpp>

#include "fthresh/errors.hpp"

namespace fthresh {

struct Ideal::Cache {
  std::once_flag once;
  std::vector<Polynomial> basis;
  std::string key;
};

namespace {

// ---------------------------------------------------------------------------
// Reduction

const Polynomial* find_reducer(const Monomial& m, const std::vector<const Polynomial*>& basis) {
  for (const Polynomial* g : basis) {
    if (g->leading_monomial().divides(m)) return g;
  }
  return nullptr;
}

// Full reduction of f modulo `basis` (elements need not be monic).
Polynomial reduce(const Polynomial& f, const std::vector<const Polynomial*>& basis) {
  if (f.is_zero() || basis.empty()) return f;
  const std::uint64_t p = f.prime();
  std::vector<Term> remainder;
  Polynomial cur = f;
  while (!cur.is_zero()) {
    const Term& lt = cur.leading_term();
    if (const Polynomial* g = find_reducer(lt.monomial, basis)) {
      const std::uint64_t c = mod_mul(lt.coeff, mod_inv(g->leading_coeff(), p), p);
      cur = cur.minus_term_times(c, lt.monomial / g->leading_monomial(), *g);
      continue;
    }
    // Move the irreducible prefix of cur into the remainder in one pass.
    std::size_t k = 0;
    const auto& terms = cur.terms();
    while (k < terms.size() && !find_reducer(terms[k].monomial, basis)) ++k;
    remainder.insert(remainder.end(), terms.begin(), terms.begin() + static_cast<std::ptrdiff_t>(k));
    cur = Polynomial::from_sorted(cur.ring(), std::vector<Term>(terms.begin() + static_cast<std::ptrdiff_t>(k), terms.end()));
  }
  return Polynomial::from_sorted(f.ring(), std::move(remainder));
}

std::vector<const Polynomial*> pointers(const std::vector<Polynomial>& polys) {
  std::vector<const Polynomial*> out;
  out.reserve(polys.size());
  for (const auto& g : polys) out.push_back(&g);
  return out;
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  const Monomial l = f.leading_monomial().lcm(g.leading_monomial());
  const std::uint64_t p = f.prime();
  const Polynomial a = f.times_term(l / f.leading_monomial(), mod_inv(f.leading_coeff(), p));
  return a.minus_term_times(mod_inv(g.leading_coeff(), p), l / g.leading_monomial(), g);
}

// ---------------------------------------------------------------------------
// Buchberger with the Gebauer–Möller update

struct CriticalPair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
};

class Buchberger {
 public:
  explicit Buchberger(RingPtr ring) : ring_(std::move(ring)) {}

  std::vector<Polynomial> run(std::vector<Polynomial> input) {
    std::sort(input.begin(), input.end(), [](const Polynomial& a, const Polynomial& b) {
      return grevlex_compare(a.leading_monomial(), b.leading_monomial()) < 0;
    });
    for (auto& f : input) {
      Polynomial h = reduce(f, active_pointers());
      if (!h.is_zero()) {
        if (h.is_constant()) return {Polynomial::constant(ring_, 1)};
        update(h.monic());
      }
    }
    while (!pairs_.empty()) {
      auto best = std::min_element(pairs_.begin(), pairs_.end(), [](const CriticalPair& a, const CriticalPair& b) {
        return grevlex_compare(a.lcm, b.lcm) < 0;
      });
      const CriticalPair pair = *best;
      pairs_.erase(best);
      Polynomial h = reduce(s_polynomial(polys_[pair.i], polys_[pair.j]), active_pointers());
      if (h.is_zero()) continue;
      if (h.is_constant()) return {Polynomial::constant(ring_, 1)};
      update(h.monic());
    }
    return finalize();
  }

 private:
  std::vector<const Polynomial*> active_pointers() const {
    std::vector<const Polynomial*> out;
    for (std::size_t k = 0; k < polys_.size(); ++k) {
      if (active_[k]) out.push_back(&polys_[k]);
    }
    return out;
  }

  void update(Polynomial h) {
    const std::size_t hi = polys_.size();
    polys_.push_back(std::move(h));
    active_.push_back(true);
    const Monomial& lh = polys_[hi].leading_monomial();

    std::vector<CriticalPair> fresh;
    for (std::size_t k = 0; k < hi; ++k) {
      if (active_[k]) fresh.push_back(CriticalPair{k, hi, lh.lcm(polys_[k].leading_monomial())});
    }
    // Chain criterion among the new pairs; coprime pairs are kept here so that
    // they can still eliminate others, then dropped.
    std::vector<CriticalPair> kept;
    for (std::size_t a = 0; a < fresh.size(); ++a) {
      const bool coprime = lh.coprime(polys_[fresh[a].i].leading_monomial());
      bool dominated = false;
      if (!coprime) {
        for (std::size_t b = 0; b < fresh.size() && !dominated; ++b) {
          if (b == a) continue;
          if (fresh[b].lcm.divides(fresh[a].lcm)) {
            // Strict divisibility, or equal lcm with a lower index, dominates.
            dominated = !(fresh[b].lcm == fresh[a].lcm) || b < a;
          }
        }
      }
      if (!dominated) kept.push_back(fresh[a]);
    }
    std::vector<CriticalPair> next;
    for (auto& pair : pairs_) {
      const bool drop = lh.divides(pair.lcm) &&
                        !(lh.lcm(polys_[pair.i].leading_monomial()) == pair.lcm) &&
                        !(lh.lcm(polys_[pair.j].leading_monomial()) == pair.lcm);
      if (!drop) next.push_back(std::move(pair));
    }
    for (auto& pair : kept) {
      if (!lh.coprime(polys_[pair.i].leading_monomial())) next.push_back(std::move(pair));
    }
    pairs_ = std::move(next);
    for (std::size_t k = 0; k < hi; ++k) {
      if (active_[k] && lh.divides(polys_[k].leading_monomial())) active_[k] = false;
    }
  }

  std::vector<Polynomial> finalize() {
    std::vector<Polynomial> minimal;
    for (std::size_t k = 0; k < polys_.size(); ++k) {
      if (active_[k]) minimal.push_back(polys_[k]);
    }
    std::vector<Polynomial> out;
    out.reserve(minimal.size());
    for (std::size_t k = 0; k < minimal.size(); ++k) {
      std::vector<const Polynomial*> others;
      for (std::size_t m = 0; m < minimal.size(); ++m) {
        if (m != k) others.push_back(&minimal[m]);
      }
      // The leading term is irreducible by minimality; only the tail changes.
      out.push_back(reduce(minimal[k], others).monic());
    }
    std::sort(out.begin(), out.end(), [](const Polynomial& a, const Polynomial& b) {
      return grevlex_compare(a.leading_monomial(), b.leading_monomial()) > 0;
    });
    return out;
  }

  RingPtr ring_;
  std::vector<Polynomial> polys_;
  std::vector<bool> active_;
  std::vector<CriticalPair> pairs_;
};

std::vector<std::uint64_t> pure_power_bounds(const std::vector<Polynomial>& basis, std::size_t n) {
  // bounds[i] = least e with x_i^e a leading monomial, 0 when none.
  std::vector<std::uint64_t> bounds(n, 0);
  for (const auto& g : basis) {
    const Monomial& lm = g.leading_monomial();
    std::size_t support = n;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (lm[i]) {
        support = i;
        ++count;
      }
    }
    if (count == 1 && (bounds[support] == 0 || lm[support] < bounds[support])) bounds[support] = lm[support];
  }
  return bounds;
}

}  // namespace

// ---------------------------------------------------------------------------
// Ideal

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> generators)
    : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
  if (!ring_) throw DomainError("ideal without a ring");
  for (auto& g : generators) {
    require_same_ring(ring_, g.ring());
    if (!g.is_zero()) generators_.push_back(std::move(g));
  }
}

Ideal Ideal::unit(RingPtr ring) {
  auto one = Polynomial::constant(ring, 1);
  return Ideal(std::move(ring), {std::move(one)});
}

Ideal Ideal::maximal(RingPtr ring) {
  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < ring->dimension(); ++i) gens.push_back(Polynomial::variable(ring, i));
  return Ideal(std::move(ring), std::move(gens));
}

Ideal Ideal::maximal_power(RingPtr ring, std::uint64_t k) {
  const std::size_t n = ring->dimension();
  std::vector<Polynomial> gens;
  std::vector<std::uint64_t> e(n, 0);
  // Enumerate compositions of k into n parts.
  auto rec = [&](auto&& self, std::size_t i, std::uint64_t left) -> void {
    if (i + 1 == n) {
      e[i] = left;
      gens.push_back(Polynomial::monomial(ring, Monomial(e)));
      return;
    }
    for (std::uint64_t a = 0; a <= left; ++a) {
      e[i] = a;
      self(self, i + 1, left - a);
    }
  };
  rec(rec, 0, k);
  return Ideal(std::move(ring), std::move(gens));
}

const std::vector<Polynomial>& Ideal::groebner_basis() const {
  std::call_once(cache_->once, [this] {
    if (!generators_.empty()) cache_->basis = Buchberger(ring_).run(generators_);
    std::string key;
    for (const auto& g : cache_->basis) {
      if (!key.empty()) key += "; ";
      key += g.to_string();
    }
    cache_->key = std::move(key);
  });
  return cache_->basis;
}

Ideal Ideal::reduced() const {
  Ideal out(ring_, groebner_basis());
  std::call_once(out.cache_->once, [&] {
    out.cache_->basis = cache_->basis;
    out.cache_->key = cache_->key;
  });
  return out;
}

bool Ideal::is_unit() const {
  const auto& gb = groebner_basis();
  return gb.size() == 1 && gb[0].is_constant();
}

Polynomial Ideal::normal_form(const Polynomial& f) const {
  require_same_ring(ring_, f.ring());
  return reduce(f, pointers(groebner_basis()));
}

bool Ideal::contains(const Ideal& other) const {
  require_same_ring(ring_, other.ring_);
  for (const auto& g : other.generators_) {
    if (!contains(g)) return false;
  }
  return true;
}

std::string Ideal::key() const {
  groebner_basis();
  return cache_->key;
}

std::string Ideal::to_string() const {
  const auto& gb = groebner_basis();
  if (gb.empty()) return "(0)";
  std::string out = "(";
  for (std::size_t k = 0; k < gb.size(); ++k) {
    if (k) out += ", ";
    out += gb[k].to_string();
  }
  return out + ")";
}

std::string Ideal::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& g : groebner_basis()) arr.push_back(g.to_string());
  return arr.dump();
}

// ---------------------------------------------------------------------------
// Free functions

Ideal reduced_groebner(const Ideal& ideal) { return ideal.reduced(); }

Polynomial normal_form(const Polynomial& f, const Ideal& ideal) { return ideal.normal_form(f); }

bool ideal_equal(const Ideal& a, const Ideal& b) {
  require_same_ring(a.ring(), b.ring());
  return a.key() == b.key();
}

Ideal bracket_power(const Ideal& ideal, std::uint64_t e) {
  std::uint64_t q = 1;
  for (std::uint64_t k = 0; k < e; ++k) {
    if (__builtin_mul_overflow(q, ideal.prime().value(), &q)) throw InfeasibleError("p^e overflows 64 bits");
  }
  std::vector<Polynomial> gens;
  gens.reserve(ideal.generators().size());
  for (const auto& g : ideal.generators()) gens.push_back(g.exponent_scaled(q));
  return Ideal(ideal.ring(), std::move(gens));
}

Ideal ideal_sum(const Ideal& a, const Ideal& b) {
  require_same_ring(a.ring(), b.ring());
  std::vector<Polynomial> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return Ideal(a.ring(), std::move(gens));
}

Ideal ideal_product(const Ideal& a, const Ideal& b) {
  require_same_ring(a.ring(), b.ring());
  std::vector<Polynomial> gens;
  for (const auto& f : a.generators()) {
    for (const auto& g : b.generators()) gens.push_back(f * g);
  }
  return Ideal(a.ring(), std::move(gens));
}

Ideal scale(const Polynomial& f, const Ideal& ideal) {
  require_same_ring(f.ring(), ideal.ring());
  std::vector<Polynomial> gens;
  gens.reserve(ideal.generators().size());
  for (const auto& g : ideal.generators()) gens.push_back(f * g);
  return Ideal(ideal.ring(), std::move(gens));
}

std::vector<Monomial> standard_monomials(const Ideal& ideal, std::uint64_t limit) {
  const auto& gb = ideal.groebner_basis();
  const std::size_t n = ideal.ring()->dimension();
  const auto bounds = pure_power_bounds(gb, n);
  for (auto b : bounds) {
    if (b == 0) throw DomainError("ideal is not zero-dimensional");
  }
  std::vector<Monomial> out;
  std::vector<std::uint64_t> e(n, 0);
  auto divisible = [&](const Monomial& m) {
    for (const auto& g : gb) {
      if (g.leading_monomial().divides(m)) return true;
    }
    return false;
  };
  // Standard monomials form an order ideal, so a divisible prefix prunes the
  // rest of the row.
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      out.emplace_back(e);
      if (out.size() > limit) throw InfeasibleError("quotient has more than " + std::to_string(limit) + " standard monomials");
      return;
    }
    for (std::uint64_t a = 0; a < bounds[i]; ++a) {
      e[i] = a;
      std::vector<std::uint64_t> probe(e.begin(), e.end());
      for (std::size_t k = i + 1; k < n; ++k) probe[k] = 0;
      if (divisible(Monomial(probe))) break;
      self(self, i + 1);
    }
    e[i] = 0;
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return grevlex_compare(a, b) < 0; });
  return out;
}

LengthResult artinian_length(const Ideal& ideal, std::uint64_t limit) {
  if (ideal.is_unit()) return {LengthStatus::Unit, 0};
  const auto& gb = ideal.groebner_basis();
  const std::size_t n = ideal.ring()->dimension();
  for (auto b : pure_power_bounds(gb, n)) {
    if (b == 0) return {LengthStatus::NotZeroDimensional, 0};
  }
  const std::uint64_t length = standard_monomials(ideal, limit).size();
  // In a finite-dimensional quotient of dimension L, x_i vanishes at every
  // point of V(J) iff x_i^L ∈ J.
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint64_t> e(n, 0);
    e[i] = length;
    if (!ideal.contains(Polynomial::monomial(ideal.ring(), Monomial(std::move(e))))) {
      return {LengthStatus::NotSupportedAtOrigin, length};
    }
  }
  return {LengthStatus::Finite, length};
}

namespace detail {

bool satisfies_buchberger_criterion(const std::vector<Polynomial>& basis) {
  const auto ptrs = pointers(basis);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      if (!reduce(s_polynomial(basis[i], basis[j]), ptrs).is_zero()) return false;
    }
  }
  return true;
}

Ideal colon_zero_dimensional(const Ideal& ideal, const Polynomial& g) {
  require_same_ring(ideal.ring(), g.ring());
  if (ideal.is_unit()) return ideal;
  const auto basis = standard_monomials(ideal);
  const std::size_t L = basis.size();
  const std::uint64_t p = ideal.prime();
  auto index_of = [&](const Monomial& m) -> std::size_t {
    const auto it = std::lower_bound(basis.begin(), basis.end(), m,
                                     [](const Monomial& a, const Monomial& b) { return grevlex_compare(a, b) < 0; });
    return static_cast<std::size_t>(it - basis.begin());
  };
  // Column k of the multiplication matrix holds NF(g · basis[k]).
  std::vector<std::vector<std::uint64_t>> rows(L, std::vector<std::uint64_t>(L, 0));
  for (std::size_t k = 0; k < L; ++k) {
    const Polynomial image = ideal.normal_form(g.times_term(basis[k], 1));
    for (const auto& t : image.terms()) rows[index_of(t.monomial)][k] = t.coeff;
  }
  // Row-reduce to find the kernel.
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < L && r < L; ++c) {
    std::size_t piv = r;
    while (piv < L && rows[piv][c] == 0) ++piv;
    if (piv == L) continue;
    std::swap(rows[piv], rows[r]);
    const std::uint64_t inv = mod_inv(rows[r][c], p);
    for (auto& x : rows[r]) x = mod_mul(x, inv, p);
    for (std::size_t i = 0; i < L; ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const std::uint64_t factor = rows[i][c];
      for (std::size_t k = 0; k < L; ++k) rows[i][k] = (rows[i][k] + p - mod_mul(factor, rows[r][k], p)) % p;
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(L, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::vector<Polynomial> gens = ideal.generators();
  for (std::size_t free = 0; free < L; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Term> terms{Term{basis[free], 1}};
    for (std::size_t i = 0; i < pivot_col.size(); ++i) {
      if (rows[i][free]) terms.push_back(Term{basis[pivot_col[i]], (p - rows[i][free]) % p});
    }
    gens.emplace_back(ideal.ring(), std::move(terms));
  }
  return Ideal(ideal.ring(), std::move(gens));
}

}  // namespace detail

}  // namespace fthresh
