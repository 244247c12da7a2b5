#include "fthresh/constancy.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "fthresh/errors.hpp"

namespace fthresh {

namespace {

using nlohmann::ordered_json;

bool same_locally(const Ideal& a, const Ideal& b, std::uint64_t k) {
  const Ideal mk = Ideal::maximal_power(a.ring(), k);
  return ideal_equal(ideal_sum(a, mk), ideal_sum(b, mk));
}

// splitmix64 step, so neighbouring (k, sample) pairs get unrelated streams
std::uint64_t mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

ordered_json rationals(const std::vector<Rational>& values) {
  ordered_json out = ordered_json::array();
  for (const auto& v : values) out.push_back(v.to_string());
  return out;
}

std::uint64_t perturbation_bound(const SingularityProfile& profile) { return std::max<std::uint64_t>(profile.ell, 1); }

}  // namespace

SingularityProfile singularity_profile(const Polynomial& f) {
  if (f.is_zero()) throw DomainError("f must be nonzero");
  if (!f.in_maximal_ideal()) throw DomainError("f must vanish at the origin");
  SingularityProfile out{f, jacobian(f), false, 0, std::nullopt, std::nullopt};
  const LengthResult length = artinian_length(out.jacobian);
  // Jac(f) = R with f(0) = 0 means f is smooth at the origin: local length 0.
  if (length.status == LengthStatus::Finite || length.status == LengthStatus::Unit) {
    out.is_isolated = true;
    out.ell = length.length;
    const BigInt n = static_cast<unsigned long>(f.ring()->dimension());
    const unsigned long p = f.prime();
    out.bound_n = big_pow(p, 2 * out.ell) * n;
    out.bound_m = big_pow(p, 2 * out.ell + 1) * BigInt(static_cast<unsigned long>(out.ell + 1)) * n;
  }
  return out;
}

bool local_ideal_equal(const Ideal& a, const Ideal& b, std::uint64_t ell) {
  require_same_ring(a.ring(), b.ring());
  const bool first = same_locally(a, b, ell + 2);
  const bool second = same_locally(a, b, ell + 3);
  if (first != second) {
    throw PreconditionViolation("local comparison is not stable at exponent " + std::to_string(ell + 2) +
                                "; an ideal does not contain m^" + std::to_string(ell + 1) + " locally");
  }
  return first;
}

bool jacobian_stability_check(const Polynomial& f, const Polynomial& h) {
  require_same_ring(f.ring(), h.ring());
  const SingularityProfile profile = singularity_profile(f);
  if (!profile.is_isolated) throw DomainError("f does not have an isolated singularity at the origin");
  const std::uint64_t need = profile.ell + 3;
  if (!h.is_zero() && h.order() < need) {
    throw DomainError("h must lie in m^" + std::to_string(need) + " (its order is " + std::to_string(h.order()) + ")");
  }
  return local_ideal_equal(profile.jacobian, jacobian(f + h), profile.ell);
}

Polynomial random_perturbation(const RingPtr& ring, std::uint64_t k, std::uint64_t max_degree,
                               std::uint64_t term_count, std::uint64_t seed) {
  if (max_degree < k) throw DomainError("max degree below k");
  if (term_count == 0) return Polynomial(ring);
  const std::size_t n = ring->dimension();
  const std::uint64_t p = ring->prime();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> degree(k, max_degree);
  std::uniform_int_distribution<std::uint64_t> coeff(1, p - 1);

  std::unordered_set<Monomial, MonomialHash> seen;
  std::vector<Term> terms;
  // a small degree range may hold fewer monomials than asked for
  for (std::uint64_t attempt = 0; terms.size() < term_count && attempt < 64 * term_count; ++attempt) {
    const std::uint64_t d = degree(rng);
    std::uniform_int_distribution<std::uint64_t> cut(0, d);
    std::vector<std::uint64_t> cuts(n - 1);
    for (auto& c : cuts) c = cut(rng);
    std::sort(cuts.begin(), cuts.end());
    std::vector<std::uint64_t> exps(n);
    std::uint64_t prev = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      exps[i] = cuts[i] - prev;
      prev = cuts[i];
    }
    exps[n - 1] = d - prev;
    Monomial m(std::move(exps));
    if (!seen.insert(m).second) continue;
    terms.push_back({std::move(m), coeff(rng)});
  }
  return Polynomial(ring, std::move(terms));
}

std::vector<Rational> local_jumping_numbers(const JumpingNumberReport& report, std::uint64_t ell) {
  std::vector<Rational> out;
  const Ideal* last = nullptr;
  for (std::size_t i = 0; i < report.jumping_numbers.size(); ++i) {
    const Ideal& current = report.test_ideals[i];
    if (last == nullptr || !local_ideal_equal(*last, current, ell)) {
      out.push_back(report.jumping_numbers[i]);
      last = &current;
    }
  }
  return out;
}

ConstancyReport constancy_report(const Polynomial& f, const std::vector<Perturbation>& perturbations,
                                 std::uint64_t seed) {
  ConstancyReport out{singularity_profile(f), 0, 0, {}, std::nullopt};
  const SingularityProfile& profile = out.profile;
  if (!profile.is_isolated) throw DomainError("f does not have an isolated singularity at the origin");
  out.bound = perturbation_bound(profile);
  out.seed = seed;
  const std::uint64_t ell = profile.ell;
  const std::uint64_t n = f.ring()->dimension();

  for (const auto& pert : perturbations) {
    require_same_ring(f.ring(), pert.h.ring());
    if (pert.k < ell + 3) {
      throw DomainError("perturbation exponent " + std::to_string(pert.k) + " is below ℓ+3 = " +
                        std::to_string(ell + 3));
    }
    if (!pert.h.is_zero() && pert.h.order() < pert.k) {
      throw DomainError("h = " + pert.h.to_string() + " is not in m^" + std::to_string(pert.k));
    }
  }

  TestIdealEngine base(f, out.bound);
  const JumpingNumberReport& rf = base.jumping_numbers();
  const std::vector<Rational> local_f = local_jumping_numbers(rf, ell);

  for (const auto& pert : perturbations) {
    PerturbationRecord rec{pert, {}, {}, {}, {}, false, false, false, false, false, {}, {}, {}};
    const Polynomial g = f + pert.h;
    TestIdealEngine other(g, out.bound);
    const JumpingNumberReport& rg = other.jumping_numbers();

    rec.fpt_f = *rf.fpt;
    rec.fpt_fh = *rg.fpt;
    rec.fpt_equal = rec.fpt_f == rec.fpt_fh;
    rec.fpt_gap = abs_diff(rec.fpt_f, rec.fpt_fh);
    rec.gap_bound = Rational(BigInt(static_cast<unsigned long>(n)), BigInt(static_cast<unsigned long>(pert.k)));
    rec.gap_within_bound = rec.fpt_gap <= rec.gap_bound;

    rec.local_jumps_f = local_f;
    rec.local_jumps_fh = local_jumping_numbers(rg, ell);
    rec.jumping_numbers_equal = rec.local_jumps_f == rec.local_jumps_fh;

    // both local step functions are constant between their jumps, so
    // comparing at every jump of either one covers [0, 1)
    std::set<Rational> points(rec.local_jumps_f.begin(), rec.local_jumps_f.end());
    points.insert(rec.local_jumps_fh.begin(), rec.local_jumps_fh.end());
    rec.test_ideals_equal_locally = std::all_of(points.begin(), points.end(), [&](const Rational& lambda) {
      return local_ideal_equal(rf.ideal_at(lambda), rg.ideal_at(lambda), ell);
    });

    rec.jacobian_stable = local_ideal_equal(profile.jacobian, jacobian(g), ell);

    const BigInt k = static_cast<unsigned long>(pert.k);
    if (k >= *profile.bound_n && !rec.fpt_equal) rec.violations.push_back("fpt changed with k >= N");
    if (k >= *profile.bound_m && !(rec.jumping_numbers_equal && rec.test_ideals_equal_locally)) {
      rec.violations.push_back("test ideals changed with k >= M");
    }
    if (!rec.gap_within_bound) rec.violations.push_back("fpt gap exceeds n/k");
    if (!rec.jacobian_stable) rec.violations.push_back("Jacobian changed locally");
    out.records.push_back(std::move(rec));
  }

  std::set<std::uint64_t> ks;
  for (const auto& r : out.records) ks.insert(r.perturbation.k);
  for (auto it = ks.rbegin(); it != ks.rend(); ++it) {
    const bool all_equal = std::all_of(out.records.begin(), out.records.end(), [&](const PerturbationRecord& r) {
      return r.perturbation.k < *it || r.fpt_equal;
    });
    if (!all_equal) break;
    out.empirical_fpt_stabilization = *it;
  }
  return out;
}

ConstancyReport constancy_report(const Polynomial& f, const ConstancyOptions& options) {
  const SingularityProfile profile = singularity_profile(f);
  if (!profile.is_isolated) throw DomainError("f does not have an isolated singularity at the origin");
  std::vector<Perturbation> perts;
  for (const std::uint64_t k : options.exponents) {
    for (std::uint64_t s = 0; s < options.samples; ++s) {
      const std::uint64_t stream = mix(options.seed ^ mix(k * 1'000'003ULL + s));
      Polynomial h = k <= options.dense_limit
                         ? random_perturbation(f.ring(), k, k + options.extra_degree, options.term_count, stream)
                         : random_perturbation(f.ring(), k, k, 1, stream);
      perts.push_back({std::move(h), k, s});
    }
  }
  return constancy_report(f, perts, options.seed);
}

std::size_t ConstancyReport::violation_count() const {
  std::size_t count = 0;
  for (const auto& r : records) count += r.violations.size();
  return count;
}

std::string ConstancyReport::to_json() const {
  ordered_json doc;
  doc["prime"] = static_cast<std::uint64_t>(profile.f.prime());
  doc["poly"] = profile.f.to_string();
  doc["ell"] = profile.ell;
  doc["boundN"] = profile.bound_n ? ordered_json(profile.bound_n->get_str()) : ordered_json(nullptr);
  doc["boundM"] = profile.bound_m ? ordered_json(profile.bound_m->get_str()) : ordered_json(nullptr);
  doc["bound"] = bound;
  doc["seed"] = seed;
  auto& recs = doc["records"] = ordered_json::array();
  for (const auto& r : records) {
    ordered_json j;
    j["k"] = r.perturbation.k;
    j["sample"] = r.perturbation.sample;
    j["h"] = r.perturbation.h.to_string();
    j["fptF"] = r.fpt_f.to_string();
    j["fptFh"] = r.fpt_fh.to_string();
    j["fptGap"] = r.fpt_gap.to_string();
    j["gapBound"] = r.gap_bound.to_string();
    j["fptEqual"] = r.fpt_equal;
    j["jumpingNumbersEqual"] = r.jumping_numbers_equal;
    j["testIdealsEqualLocally"] = r.test_ideals_equal_locally;
    j["jacobianStable"] = r.jacobian_stable;
    j["gapWithinBound"] = r.gap_within_bound;
    j["localJumpsF"] = rationals(r.local_jumps_f);
    j["localJumpsFh"] = rationals(r.local_jumps_fh);
    j["violations"] = r.violations;
    recs.push_back(std::move(j));
  }
  doc["empiricalFptStabilization"] =
      empirical_fpt_stabilization ? ordered_json(*empirical_fpt_stabilization) : ordered_json(nullptr);
  doc["violationCount"] = violation_count();
  return doc.dump(2);
}

std::string ConstancyReport::to_csv() const {
  std::ostringstream out;
  out << "k,sample,fptF,fptFh,gap,boundDimOverK,fptEqual,jnEqual,tauEqualLocal,jacobianStable,gapOk\n";
  for (const auto& r : records) {
    out << r.perturbation.k << ',' << r.perturbation.sample << ',' << r.fpt_f.to_string() << ','
        << r.fpt_fh.to_string() << ',' << r.fpt_gap.to_string() << ',' << r.gap_bound.to_string() << ','
        << r.fpt_equal << ',' << r.jumping_numbers_equal << ',' << r.test_ideals_equal_locally << ','
        << r.jacobian_stable << ',' << r.gap_within_bound << '\n';
  }
  return out.str();
}

bool ft_tau_consistency(const Polynomial& f, const Polynomial& g, const Rational& lambda, std::uint64_t bound,
                        std::optional<Rational> cap) {
  require_same_ring(f.ring(), g.ring());
  const Rational limit = cap ? *cap : std::max(Rational(static_cast<long>(f.ring()->dimension())), lambda);
  TestIdealEngine ef(f, bound);
  TestIdealEngine eg(g, bound);
  const Ideal a = ef.test_ideal(lambda).ideal;
  const Ideal b = eg.test_ideal(lambda).ideal;

  auto threshold = [&](TestIdealEngine& engine, const Ideal& target) -> std::optional<Rational> {
    try {
      return engine.f_threshold(target, limit);
    } catch (const NotFoundBelowCap&) {
      return std::nullopt;
    } catch (const DomainError&) {  // not in the radical: the threshold is infinite
      return std::nullopt;
    }
  };
  auto holds = [&](const Ideal& target, const Ideal& other) {
    const auto tf = threshold(ef, target);
    const auto tg = threshold(eg, target);
    const bool same = tf && tg && *tf == *tg;
    return !same || target.contains(other);
  };
  return holds(a, b) && holds(b, a);
}

}  // namespace fthresh
