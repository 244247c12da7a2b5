#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fthresh/jacobian.hpp"
#include "fthresh/testideal.hpp"

namespace fthresh {

/// Length ℓ of R/Jac(f) and the two perturbation exponents derived from it:
/// N = p^(2ℓ)·n (fpt constancy) and M = p^(2ℓ+1)·(ℓ+1)·n (test-ideal
/// constancy on [0,1)), n = dim R.
struct SingularityProfile {
  Polynomial f;
  Ideal jacobian;
  bool is_isolated = false;
  std::uint64_t ell = 0;
  std::optional<BigInt> bound_n;
  std::optional<BigInt> bound_m;
};

/// Requires f ≠ 0 and f(0) = 0.
SingularityProfile singularity_profile(const Polynomial& f);

/// Compares J·S and K·S for S = R localized at the origin by comparing
/// J + m^(ℓ+2) with K + m^(ℓ+2), then re-checks with exponent ℓ+3.
/// Both ideals must contain m^(ℓ+1) after localizing; if the two exponents
/// disagree, that precondition is false and PreconditionViolation is thrown.
bool local_ideal_equal(const Ideal& a, const Ideal& b, std::uint64_t ell);

/// Jac(f)·S == Jac(f+h)·S for h ∈ m^(ℓ+3). Requires an isolated singularity.
bool jacobian_stability_check(const Polynomial& f, const Polynomial& h);

/// Deterministic h ∈ m^k: `term_count` distinct monomials (fewer only when
/// the degree range has fewer), each of total degree in [k, max_degree],
/// with coefficients in [1, p-1].
Polynomial random_perturbation(const RingPtr& ring, std::uint64_t k, std::uint64_t max_degree,
                               std::uint64_t term_count, std::uint64_t seed);

struct ConstancyOptions {
  std::vector<std::uint64_t> exponents;
  std::uint64_t samples = 1;
  std::uint64_t seed = 0;
  /// Exponents k up to this value get dense random h of degree k..k+extra;
  /// larger k get a single random monomial of degree exactly k.
  std::uint64_t dense_limit = 40;
  std::uint64_t extra_degree = 3;
  std::uint64_t term_count = 4;
};

struct Perturbation {
  Polynomial h;
  std::uint64_t k = 0;        // h ∈ m^k
  std::uint64_t sample = 0;
};

struct PerturbationRecord {
  Perturbation perturbation;
  Rational fpt_f;
  Rational fpt_fh;
  Rational fpt_gap;          // |fpt(f) − fpt(f+h)|
  Rational gap_bound;        // dim R / k
  bool fpt_equal = false;
  bool jumping_numbers_equal = false;
  bool test_ideals_equal_locally = false;
  bool jacobian_stable = false;
  bool gap_within_bound = false;
  std::vector<Rational> local_jumps_f;
  std::vector<Rational> local_jumps_fh;
  /// Non-empty when a guaranteed statement failed (k >= N with unequal fpt,
  /// k >= M with unequal test ideals, or the gap inequality).
  std::vector<std::string> violations;
};

struct ConstancyReport {
  SingularityProfile profile;
  std::uint64_t bound = 0;  // B = ℓ, shared by f and every f+h
  std::uint64_t seed = 0;
  std::vector<PerturbationRecord> records;
  /// Least tested k such that fpt(f+h) = fpt(f) for every record with k' >= k.
  std::optional<std::uint64_t> empirical_fpt_stabilization;

  std::size_t violation_count() const;
  std::string to_json() const;
  /// k,sample,fptF,fptFh,gap,boundDimOverK,fptEqual,jnEqual,tauEqualLocal,jacobianStable,gapOk
  std::string to_csv() const;
};

/// Samples perturbations per `options` and evaluates every record.
/// Requires an isolated singularity and every k >= ℓ+3.
ConstancyReport constancy_report(const Polynomial& f, const ConstancyOptions& options);

/// Same, on caller-supplied perturbations.
ConstancyReport constancy_report(const Polynomial& f, const std::vector<Perturbation>& perturbations,
                                 std::uint64_t seed = 0);

/// Jumping numbers of the localization at the origin, read from a global
/// report computed with a bound valid at the origin.
std::vector<Rational> local_jumping_numbers(const JumpingNumberReport& report, std::uint64_t ell);

/// Checks on one instance that ft^a(f) = ft^a(g) implies τ(g^λ) ⊆ a and
/// ft^b(f) = ft^b(g) implies τ(f^λ) ⊆ b, where a = τ(f^λ), b = τ(g^λ).
/// A threshold above `cap` (or g outside √a) counts as unequal.
bool ft_tau_consistency(const Polynomial& f, const Polynomial& g, const Rational& lambda, std::uint64_t bound,
                        std::optional<Rational> cap = std::nullopt);

}  // namespace fthresh
