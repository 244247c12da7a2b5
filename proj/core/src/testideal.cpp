#include "fthresh/testideal.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "fthresh/errors.hpp"
#include "fthresh/jacobian.hpp"

namespace fthresh {

namespace {

// ⌈p^s λ⌉ − shift.
BigInt scaled_ceiling(const Rational& lambda, std::uint64_t s, Prime p) {
  return (Rational(big_pow(p, s)) * lambda).ceil();
}

bool in_maximal_ideal(const Ideal& ideal) {
  for (const auto& g : ideal.groebner_basis()) {
    if (!g.in_maximal_ideal()) return false;
  }
  return true;
}

// Smallest K (searched over powers of two up to 2^16) with f^K ∈ b, if any.
std::optional<std::uint64_t> radical_exponent(const Polynomial& f, const Ideal& b) {
  for (std::uint64_t k = 1; k <= (1u << 16); k *= 2) {
    if (power_mod(f, BigInt(static_cast<unsigned long>(k)), b).is_zero()) return k;
  }
  return std::nullopt;
}

}  // namespace

std::uint64_t stabilization_exponent(const Rational& lambda, std::uint64_t bound, Prime p) {
  const ExponentPair pair = epsilon(lambda, p);
  return pair.u + pair.v * bound;
}

BoundChoice default_bound(const Polynomial& f) {
  BoundChoice choice;
  const std::uint64_t n = f.ring()->dimension();
  mpz_bin_uiui(choice.degree_bound.get_mpz_t(), n + f.total_degree(), n);
  const LengthResult length = artinian_length(jacobian(f));
  switch (length.status) {
    case LengthStatus::Unit:
      choice.length_bound = 0;
      break;
    case LengthStatus::Finite:
    case LengthStatus::NotSupportedAtOrigin:
      choice.length_bound = length.length;
      break;
    case LengthStatus::NotZeroDimensional:
      break;
  }
  BigInt best = choice.degree_bound;
  if (choice.length_bound && BigInt(static_cast<unsigned long>(*choice.length_bound)) < best) {
    best = static_cast<unsigned long>(*choice.length_bound);
  }
  if (best < 1) best = 1;
  if (!mpz_fits_ulong_p(best.get_mpz_t())) throw InfeasibleError("jumping-number bound does not fit in 64 bits");
  choice.bound = best.get_ui();
  return choice;
}

// ---------------------------------------------------------------------------
// JumpingNumberReport

const Ideal& JumpingNumberReport::ideal_at(const Rational& lambda) const {
  if (!(lambda < Rational(1))) throw DomainError("ideal_at requires λ < 1");
  const auto it = std::upper_bound(jumping_numbers.begin(), jumping_numbers.end(), lambda);
  return test_ideals.at(static_cast<std::size_t>(it - jumping_numbers.begin()) - 1);
}

std::string JumpingNumberReport::to_json(bool with_timing) const {
  nlohmann::ordered_json doc;
  doc["prime"] = f.prime().value();
  doc["poly"] = f.to_string();
  doc["bound"] = bound;
  doc["fpt"] = fpt ? nlohmann::ordered_json(fpt->to_string()) : nlohmann::ordered_json(nullptr);
  auto& jn = doc["jumpingNumbers"] = nlohmann::ordered_json::array();
  for (const auto& l : jumping_numbers) jn.push_back(l.to_string());
  auto& ideals = doc["testIdeals"] = nlohmann::ordered_json::array();
  for (const auto& ideal : test_ideals) ideals.push_back(nlohmann::ordered_json::parse(ideal.to_json()));
  doc["candidateCount"] = candidate_count;
  doc["elapsedMs"] = with_timing
                         ? nlohmann::ordered_json(std::chrono::duration<double, std::milli>(elapsed).count())
                         : nlohmann::ordered_json(nullptr);
  return doc.dump();
}

// ---------------------------------------------------------------------------
// TestIdealEngine

TestIdealEngine::TestIdealEngine(Polynomial f, std::uint64_t bound)
    : engine_(std::make_shared<FrobeniusRootEngine>(std::move(f))), bound_(bound) {
  if (polynomial().is_zero()) throw DomainError("test ideals of the zero polynomial are undefined");
  if (bound_ == 0) throw DomainError("jumping-number bound B must be positive");
  unit_id_ = engine_->intern(Ideal::unit(polynomial().ring()));
}

std::size_t TestIdealEngine::test_ideal_id(const Rational& lambda) {
  const std::uint64_t s = stabilization_exponent(lambda, bound_, prime());
  return engine_->power_id(scaled_ceiling(lambda, s, prime()), s, unit_id_);
}

std::size_t TestIdealEngine::left_limit_id(const Rational& lambda) {
  const std::uint64_t s = stabilization_exponent(lambda, bound_, prime());
  return engine_->power_id(scaled_ceiling(lambda, s, prime()) - 1, s, unit_id_);
}

TestIdealResult TestIdealEngine::test_ideal(const Rational& lambda) {
  if (lambda.is_zero()) return TestIdealResult{lambda, Ideal::unit(polynomial().ring()).reduced(), 0, bound_};
  const BigInt whole = lambda.floor();
  const Rational fractional = lambda.frac();
  std::uint64_t s = 0;
  Ideal ideal = Ideal::unit(polynomial().ring());
  if (!fractional.is_zero()) {
    s = stabilization_exponent(fractional, bound_, prime());
    ideal = engine_->ideal(test_ideal_id(fractional));
  }
  if (whole > 0) ideal = scale(power(polynomial(), whole), ideal);
  return TestIdealResult{lambda, ideal.reduced(), s, bound_};
}

Ideal TestIdealEngine::left_limit(const Rational& lambda) {
  if (lambda.is_zero()) throw DomainError("left limit requires λ > 0");
  // λ = k + μ with μ in (0, 1].
  const BigInt k = lambda.ceil() - 1;
  const Rational mu = lambda - Rational(k);
  Ideal ideal = engine_->ideal(left_limit_id(mu));
  if (k > 0) ideal = scale(power(polynomial(), k), ideal);
  return ideal.reduced();
}

bool TestIdealEngine::is_jumping_number(const Rational& lambda) {
  if (lambda.is_zero()) throw DomainError("is_jumping_number expects a positive candidate");
  const ExponentPair pair = epsilon(lambda, prime());
  if (pair.u + pair.v > bound_) {
    throw DomainError(lambda.to_string() + " is not in the candidate set for B = " + std::to_string(bound_));
  }
  return !ideal_equal(left_limit(lambda), test_ideal(lambda).ideal);
}

const JumpingNumberReport& TestIdealEngine::jumping_numbers(std::uint64_t candidate_budget) {
  if (report_) return *report_;
  const auto start = std::chrono::steady_clock::now();
  const Window unit_interval{Rational(0), Rational(1)};
  const CandidateSet candidates = candidate_set(prime(), bound_, unit_interval, candidate_budget);

  JumpingNumberReport report{polynomial(), bound_, unit_interval, {}, {}, std::nullopt, candidates.size(), {}};
  report.jumping_numbers.push_back(Rational(0));
  report.test_ideals.push_back(engine_->ideal(unit_id_));
  std::size_t previous = unit_id_;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const Rational& lambda = candidates.values[k];
    if (lambda.is_zero()) continue;
    const ExponentPair& pair = *candidates.pairs[k];
    const std::uint64_t s = pair.u + pair.v * bound_;
    const std::size_t id = engine_->power_id(scaled_ceiling(lambda, s, prime()), s, unit_id_);
    if (id != previous) {
      report.jumping_numbers.push_back(lambda);
      report.test_ideals.push_back(engine_->ideal(id));
      previous = id;
    }
  }
  if (polynomial().in_maximal_ideal()) {
    report.fpt = Rational(1);
    for (std::size_t k = 1; k < report.jumping_numbers.size(); ++k) {
      if (in_maximal_ideal(report.test_ideals[k])) {
        report.fpt = report.jumping_numbers[k];
        break;
      }
    }
  }
  report.elapsed = std::chrono::steady_clock::now() - start;
  report_ = std::move(report);
  return *report_;
}

Rational TestIdealEngine::f_threshold(const Ideal& b, const Rational& cap) {
  require_same_ring(polynomial().ring(), b.ring());
  if (b.is_unit()) return Rational(0);
  if (!radical_exponent(polynomial(), b)) {
    throw DomainError("f is not in the radical of " + b.to_string());
  }
  const JumpingNumberReport& report = jumping_numbers();
  const BigInt top = cap.floor();
  for (BigInt j = 0; j <= top; ++j) {
    const Polynomial shift = power(polynomial(), j);
    for (std::size_t k = 0; k < report.jumping_numbers.size(); ++k) {
      const Rational lambda = Rational(j) + report.jumping_numbers[k];
      if (lambda > cap) break;
      if (lambda.is_zero()) continue;
      if (b.contains(scale(shift, report.test_ideals[k]))) return lambda;
    }
  }
  throw NotFoundBelowCap("no λ <= " + cap.to_string() + " has τ(f^λ) inside " + b.to_string());
}

// ---------------------------------------------------------------------------
// Free functions

TestIdealResult test_ideal(const Polynomial& f, const Rational& lambda, std::uint64_t bound) {
  return TestIdealEngine(f, bound).test_ideal(lambda);
}

Ideal test_ideal_left_limit(const Polynomial& f, const Rational& lambda, std::uint64_t bound) {
  return TestIdealEngine(f, bound).left_limit(lambda);
}

bool is_jumping_number(const Polynomial& f, const Rational& lambda, std::uint64_t bound) {
  return TestIdealEngine(f, bound).is_jumping_number(lambda);
}

JumpingNumberReport jumping_numbers_unit_interval(const Polynomial& f, std::uint64_t bound) {
  TestIdealEngine engine(f, bound);
  return engine.jumping_numbers();
}

Polynomial power_mod(const Polynomial& f, const BigInt& n, const Ideal& ideal) {
  if (n < 0) throw DomainError("negative exponent");
  Polynomial result = ideal.normal_form(Polynomial::constant(f.ring(), 1));
  Polynomial base = ideal.normal_form(f);
  const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = ideal.normal_form(result * result);
    if (mpz_tstbit(n.get_mpz_t(), i)) result = ideal.normal_form(result * base);
  }
  return result;
}

std::uint64_t nu(const Polynomial& f, const Ideal& b, std::uint64_t e) {
  require_same_ring(f.ring(), b.ring());
  if (b.is_unit()) throw DomainError("ν is undefined for the unit ideal");
  if (f.is_constant()) throw DomainError("ν requires a non-constant polynomial");
  const auto root = radical_exponent(f, b);
  if (!root) throw DomainError("f is not in the radical of " + b.to_string() + " (no power up to 2^16 lies in it)");
  const BigInt limit = BigInt(static_cast<unsigned long>(*root)) * big_pow(f.prime(), e);
  if (!limit.fits_ulong_p()) throw InfeasibleError("ν search range exceeds 64 bits");
  const std::uint64_t cap = limit.get_ui();  // f^(K p^e) = (f^K)^[p^e] ∈ b^[p^e]
  // f^n ∈ b^[p^e] exactly when I_e(f^n) ⊆ b, and the root engine never expands f^n
  FrobeniusRootEngine roots(f);
  auto member = [&](std::uint64_t n) { return b.contains(roots.power(BigInt(static_cast<unsigned long>(n)), e)); };
  if (member(1)) return 0;
  // Doubling, then bisection on the monotone predicate n ↦ f^n ∈ b^[p^e].
  std::uint64_t lo = 1;
  std::uint64_t hi = 2;
  while (hi < cap && !member(hi)) {
    lo = hi;
    hi = std::min(cap, hi * 2);
  }
  if (hi >= cap) hi = cap;
  if (!member(hi)) throw InfeasibleError("ν search exceeded its cap");
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (member(mid) ? hi : lo) = mid;
  }
  return lo;
}

Rational f_threshold(const Polynomial& f, const Ideal& b, std::uint64_t bound, const Rational& cap) {
  return TestIdealEngine(f, bound).f_threshold(b, cap);
}

}  // namespace fthresh
