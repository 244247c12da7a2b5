#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fthresh/basep.hpp"
#include "fthresh/froot.hpp"

namespace fthresh {

struct TestIdealResult {
  Rational lambda;
  Ideal ideal;
  std::uint64_t stabilization_exponent = 0;  // the s used; 0 for λ = 0
  std::uint64_t bound = 0;
};

/// Jumping numbers of f in [0, 1) with the test ideal at each of them.
struct JumpingNumberReport {
  Polynomial f;
  std::uint64_t bound = 0;
  Window window;
  std::vector<Rational> jumping_numbers;  // ascending, starts with 0
  std::vector<Ideal> test_ideals;         // parallel to jumping_numbers
  /// Least λ in (0, 1) with τ(f^λ) ⊆ m, else 1. Absent when f(0) ≠ 0.
  std::optional<Rational> fpt;
  std::uint64_t candidate_count = 0;
  std::chrono::nanoseconds elapsed{0};

  /// τ(f^λ) for λ in [0, 1), read off the report.
  const Ideal& ideal_at(const Rational& lambda) const;

  /// {"prime","poly","bound","fpt","jumpingNumbers","testIdeals","candidateCount","elapsedMs"}.
  /// elapsedMs is null unless `with_timing`, so equal inputs give equal bytes.
  std::string to_json(bool with_timing = false) const;
};

/// s = u + v·B for (u, v) = ε_p(λ).
std::uint64_t stabilization_exponent(const Rational& lambda, std::uint64_t bound, Prime p);

/// The two computable bounds for |JN(f) ∩ [0,1)| and the smaller one.
struct BoundChoice {
  std::uint64_t bound = 1;
  BigInt degree_bound;                       // binom(n + deg f, n)
  std::optional<std::uint64_t> length_bound; // length R/Jac(f), when Jac(f) is m-primary
};

BoundChoice default_bound(const Polynomial& f);

/// All test-ideal computations for one (f, B), sharing one memoized
/// Frobenius-root engine. B must bound |JN(f) ∩ [0,1)|; nothing here can
/// check that.
class TestIdealEngine {
 public:
  TestIdealEngine(Polynomial f, std::uint64_t bound);

  const Polynomial& polynomial() const { return engine_->polynomial(); }
  std::uint64_t bound() const { return bound_; }
  Prime prime() const { return polynomial().prime(); }

  TestIdealResult test_ideal(const Rational& lambda);
  /// ⋂_{ε>0} τ(f^(λ−ε)) for λ > 0.
  Ideal left_limit(const Rational& lambda);
  /// Requires λ ∈ 𝒜_B \ {0}.
  bool is_jumping_number(const Rational& lambda);

  /// Walks 𝒜_B ∩ [0,1) in ascending order, keeping the candidates where the
  /// test ideal changes. The result is cached.
  const JumpingNumberReport& jumping_numbers(std::uint64_t candidate_budget = 50'000'000);

  /// min{λ ∈ JN(f) ∩ [0, cap] : τ(f^λ) ⊆ b}; 0 when b = R.
  Rational f_threshold(const Ideal& b, const Rational& cap);

  FrobeniusRootEngine& roots() { return *engine_; }

 private:
  std::size_t test_ideal_id(const Rational& lambda_in_unit_interval);
  std::size_t left_limit_id(const Rational& lambda_at_most_one);

  std::shared_ptr<FrobeniusRootEngine> engine_;
  std::uint64_t bound_;
  std::size_t unit_id_;
  std::optional<JumpingNumberReport> report_;
};

TestIdealResult test_ideal(const Polynomial& f, const Rational& lambda, std::uint64_t bound);
Ideal test_ideal_left_limit(const Polynomial& f, const Rational& lambda, std::uint64_t bound);
bool is_jumping_number(const Polynomial& f, const Rational& lambda, std::uint64_t bound);
JumpingNumberReport jumping_numbers_unit_interval(const Polynomial& f, std::uint64_t bound);

/// f^n reduced modulo `ideal`, normal-forming after every product.
Polynomial power_mod(const Polynomial& f, const BigInt& n, const Ideal& ideal);

/// ν_b(p^e) = max{N >= 1 : f^N ∉ b^[p^e]}, or 0 when f itself lies in b^[p^e].
/// Requires f ∈ √b, b proper, f not a unit. Membership is decided as I_e(f^N) ⊆ b.
std::uint64_t nu(const Polynomial& f, const Ideal& b, std::uint64_t e);

Rational f_threshold(const Polynomial& f, const Ideal& b, std::uint64_t bound, const Rational& cap);

}  // namespace fthresh
