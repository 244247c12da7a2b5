#include "verify.hpp"

#include <algorithm>
#include <set>

#include "fthresh/jacobian.hpp"

namespace fthresh::cli {

namespace {

void fail(CheckResult& r, const std::string& why) {
  if (r.passed) r.detail = why;
  r.passed = false;
}

}  // namespace

std::vector<CheckResult> verify_invariants(const Polynomial& f, std::uint64_t bound) {
  const Prime p = f.prime();
  TestIdealEngine engine(f, bound);
  const JumpingNumberReport& report = engine.jumping_numbers();
  const auto& jn = report.jumping_numbers;
  std::vector<CheckResult> out;

  {
    CheckResult r{"candidate-shape", true, ""};
    const CandidateSet cands = candidate_set(p, bound, Window{});
    for (const auto& lambda : jn) {
      if (!std::binary_search(cands.values.begin(), cands.values.end(), lambda)) {
        fail(r, lambda.to_string() + " is not a candidate");
      }
    }
    out.push_back(r);
  }
  {
    CheckResult r{"strict-descent", true, ""};
    for (std::size_t i = 1; i < jn.size(); ++i) {
      const Ideal& prev = report.test_ideals[i - 1];
      const Ideal& cur = report.test_ideals[i];
      if (!prev.contains(cur) || ideal_equal(prev, cur)) fail(r, "no strict descent at " + jn[i].to_string());
    }
    out.push_back(r);
  }
  {
    CheckResult r{"frac-closure", true, ""};
    const std::set<Rational> all(jn.begin(), jn.end());
    for (const auto& lambda : jn) {
      const Rational image = (lambda * Rational(static_cast<long>(p.value()))).frac();
      if (!all.count(image)) fail(r, lambda.to_string() + " maps to " + image.to_string());
    }
    out.push_back(r);
  }
  {
    // τ(f^(1+μ)) from the stabilization formula directly, against f·τ(f^μ)
    CheckResult r{"integer-shift", true, ""};
    for (std::size_t i = 0; i < jn.size(); ++i) {
      const Rational lambda = Rational(1) + jn[i];
      const std::uint64_t s = stabilization_exponent(lambda, bound, p);
      const BigInt n = (lambda * Rational(big_pow(p, s))).ceil();
      const Ideal direct = froot_power(f, n, s);
      if (!ideal_equal(direct, scale(f, report.test_ideals[i]))) fail(r, "mismatch at 1+" + jn[i].to_string());
    }
    out.push_back(r);
  }
  if (report.fpt) {
    CheckResult r{"nu-sandwich", true, ""};
    const Ideal m = Ideal::maximal(f.ring());
    for (std::uint64_t e = 1; e <= 4; ++e) {
      const long n = static_cast<long>(nu(f, m, e));
      const Rational q(big_pow(p, e));
      const Rational lo = Rational(n) / q;
      const Rational hi = Rational(n + 1) / q;
      if (!(lo < *report.fpt && *report.fpt <= hi)) {
        fail(r, "e=" + std::to_string(e) + ": nu=" + std::to_string(n));
      }
    }
    out.push_back(r);
  }
  {
    const Ideal jac = jacobian(f);
    if (artinian_length(jac).m_primary()) {
      CheckResult r{"jacobian-containment", true, ""};
      for (std::size_t i = 0; i < jn.size(); ++i) {
        if (!report.test_ideals[i].contains(jac)) fail(r, "Jac(f) not inside τ at " + jn[i].to_string());
      }
      out.push_back(r);
    }
  }
  {
    CheckResult r{"naive-root-oracle", true, ""};
    for (std::uint64_t e = 1; e <= 2; ++e) {
      const std::uint64_t q = big_pow(p, e).get_ui();
      for (std::uint64_t c = 1; c < q; ++c) {
        const Rational lambda(BigInt(static_cast<unsigned long>(c)), BigInt(static_cast<unsigned long>(q)));
        const Ideal naive = froot_basis(power(f, c), e);
        if (!ideal_equal(naive, engine.test_ideal(lambda).ideal)) fail(r, "mismatch at " + lambda.to_string());
      }
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace fthresh::cli
