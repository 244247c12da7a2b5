#include "fthresh/basep.hpp"

#include <algorithm>

#include "fthresh/errors.hpp"

#include <nlohmann/json.hpp>

namespace fthresh {

namespace {

std::uint64_t p_adic_valuation(BigInt& n, Prime p) {
  std::uint64_t k = 0;
  const BigInt pp(static_cast<unsigned long>(p.value()));
  while (n != 0 && mpz_divisible_p(n.get_mpz_t(), pp.get_mpz_t())) {
    n /= pp;
    ++k;
  }
  return k;
}

// Least s >= 1 with p^s ≡ 1 (mod n); n is coprime to p.
std::uint64_t multiplicative_order(const BigInt& n, Prime p) {
  if (n == 1) return 1;
  if (mpz_fits_ulong_p(n.get_mpz_t())) {
    const unsigned __int128 mod = n.get_ui();
    const unsigned __int128 base = p.value() % n.get_ui();
    unsigned __int128 acc = base;
    for (std::uint64_t s = 1;; ++s) {
      if (acc == 1) return s;
      acc = acc * base % mod;
    }
  }
  const BigInt base(static_cast<unsigned long>(p.value()));
  BigInt acc = base % n;
  for (std::uint64_t s = 1;; ++s) {
    if (acc == 1) return s;
    acc = (acc * base) % n;
  }
}

}  // namespace

std::string Window::to_string() const {
  return "[" + lo.to_string() + ", " + (hi ? hi->to_string() : std::string("inf")) + ")";
}

Rational truncate(const Rational& lambda, std::uint64_t e, Prime p) {
  if (lambda.is_zero()) throw DomainError("truncation requires λ > 0");
  const BigInt pe = big_pow(p, e);
  const BigInt top = (Rational(pe) * lambda).ceil() - 1;
  return Rational(top, pe);
}

ExponentPair epsilon(const Rational& lambda, Prime p) {
  if (lambda.is_zero()) throw DomainError("canonical pair requires λ > 0");
  BigInt n = lambda.denominator();
  const std::uint64_t u = p_adic_valuation(n, p);
  return ExponentPair{u, multiplicative_order(n, p)};
}

bool in_expset(const Rational& lambda, const ExponentPair& pair, Prime p) {
  if (pair.v == 0) return false;
  const BigInt factor = big_pow(p, pair.u) * (big_pow(p, pair.v) - 1);
  return (Rational(factor) * lambda).is_integer();
}

BigInt candidate_enumeration_size(Prime p, std::uint64_t bound, const Window& window) {
  if (!window.hi) throw DomainError("candidate window must be bounded above");
  BigInt total = 0;
  for (std::uint64_t b = 1; b <= bound; ++b) {
    const BigInt cyc = big_pow(p, b) - 1;
    for (std::uint64_t a = 0; a + b <= bound; ++a) {
      const Rational denom(BigInt(big_pow(p, a) * cyc));
      const BigInt first = (denom * window.lo).ceil();
      const BigInt last = (denom * *window.hi).ceil();
      if (last > first) total += last - first;
    }
  }
  return total;
}

CandidateSet candidate_set(Prime p, std::uint64_t bound, const Window& window, std::uint64_t budget) {
  if (bound == 0) throw DomainError("candidate bound B must be positive");
  if (!window.hi) throw DomainError("candidate window must be bounded above (the set is infinite)");
  if (candidate_enumeration_size(p, bound, window) > BigInt(static_cast<unsigned long>(budget))) {
    throw InfeasibleError("candidate enumeration for p=" + std::to_string(p.value()) +
                          ", B=" + std::to_string(bound) + " exceeds the budget of " +
                          std::to_string(budget) + " fractions");
  }

  std::vector<Rational> raw;
  for (std::uint64_t b = 1; b <= bound; ++b) {
    const BigInt cyc = big_pow(p, b) - 1;
    for (std::uint64_t a = 0; a + b <= bound; ++a) {
      const BigInt denom = big_pow(p, a) * cyc;
      const Rational d(denom);
      BigInt c = (d * window.lo).ceil();
      const BigInt last = (d * *window.hi).ceil();
      for (; c < last; ++c) raw.emplace_back(c, denom);
    }
  }
  std::sort(raw.begin(), raw.end());
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());

  CandidateSet out{p, bound, window, std::move(raw), {}};
  out.pairs.reserve(out.values.size());
  for (const auto& v : out.values) {
    out.pairs.push_back(v.is_zero() ? std::nullopt : std::optional<ExponentPair>(epsilon(v, p)));
  }
  return out;
}

std::vector<Rational> frac_orbit(const Rational& lambda, std::uint64_t count, Prime p) {
  if (count == 0) throw DomainError("frac_orbit requires count >= 1");
  std::vector<Rational> out;
  out.reserve(count);
  Rational current = lambda.frac();
  const Rational pr(static_cast<long>(p.value()));
  for (std::uint64_t e = 0; e < count; ++e) {
    out.push_back(current);
    current = (current * pr).frac();
  }
  return out;
}

bool truncation_equal(const Rational& lambda, const Rational& gamma, const ExponentPair& pair_lambda,
                      const ExponentPair& pair_gamma, Prime p) {
  if (!in_expset(lambda, pair_lambda, p)) throw DomainError("pair is not in E_p(λ) for λ = " + lambda.to_string());
  if (!in_expset(gamma, pair_gamma, p)) throw DomainError("pair is not in E_p(γ) for γ = " + gamma.to_string());
  const std::uint64_t index = pair_lambda.u + pair_gamma.u + pair_lambda.v * pair_gamma.v;
  return truncate(lambda, index, p) == truncate(gamma, index, p);
}

std::string candidates_to_json(const CandidateSet& set) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& v : set.values) arr.push_back(v.to_string());
  return arr.dump();
}

}  // namespace fthresh
