#include <doctest.h>

#include <random>
#include <set>

#include <nlohmann/json.hpp>

#include "fthresh/errors.hpp"
#include "fthresh/jacobian.hpp"
#include "fthresh/parse.hpp"
#include "fthresh/testideal.hpp"
#include "oracles.hpp"

using namespace fthresh;

namespace {

RingPtr xy(std::uint64_t p) { return Ring::make(Prime(p), {"x", "y"}); }
Polynomial P(const char* s, const RingPtr& r) { return parse_polynomial(s, r); }
Ideal I(const char* s, const RingPtr& r) { return Ideal(r, parse_generators(s, r)); }
Rational q(const char* s) { return Rational::parse(s); }

const char* kQuartic = "x^4 + y^3 + x^2*y^2";

}  // namespace

TEST_CASE("stabilization exponent") {
  CHECK(stabilization_exponent(q("7/12"), 6, Prime(5)) == 12);
  CHECK(stabilization_exponent(q("4/5"), 6, Prime(5)) == 7);
  CHECK(stabilization_exponent(q("1/2"), 1, Prime(3)) == 1);
}

TEST_CASE("test ideals of the quartic") {
  const auto r = xy(5);
  TestIdealEngine engine(P(kQuartic, r), 6);
  CHECK(ideal_equal(engine.test_ideal(q("4/5")).ideal, I("x^2; y", r)));
  CHECK(ideal_equal(engine.test_ideal(q("11/12")).ideal, I("x^2; x*y; y^2", r)));
  CHECK(ideal_equal(engine.test_ideal(q("7/12")).ideal, I("x; y", r)));
  CHECK(engine.test_ideal(q("1/2")).ideal.is_unit());
  CHECK(engine.test_ideal(Rational(0)).ideal.is_unit());
  CHECK(engine.test_ideal(q("7/12")).stabilization_exponent == 12);

  CHECK(engine.left_limit(q("7/12")).is_unit());
  CHECK(ideal_equal(engine.left_limit(q("4/5")), I("x; y", r)));
  CHECK(ideal_equal(engine.left_limit(q("1")), I("x^2; x*y; y^2", r)));

  CHECK(engine.is_jumping_number(q("7/12")));
  CHECK_FALSE(engine.is_jumping_number(q("1/2")));
  CHECK(engine.is_jumping_number(q("1")));
  CHECK_THROWS_AS(engine.is_jumping_number(q("1/78125")), DomainError);
}

TEST_CASE("simple test ideals") {
  const auto r = xy(7);
  CHECK(test_ideal(P("x", r), q("1/2"), 1).ideal.is_unit());
  CHECK(test_ideal_left_limit(P("x", r), q("1"), 1).is_unit());
  CHECK_FALSE(is_jumping_number(P("x", r), q("1/2"), 1));
  CHECK(ideal_equal(test_ideal(P("x", r), q("5/2"), 1).ideal, I("x^2", r)));
  CHECK_THROWS_AS(test_ideal(Polynomial(r), q("1/2"), 1), DomainError);
}

TEST_CASE("jumping numbers on [0,1)") {
  const auto r5 = xy(5);
  const auto report = jumping_numbers_unit_interval(P(kQuartic, r5), 6);
  CHECK(report.jumping_numbers == std::vector<Rational>{Rational(0), q("7/12"), q("4/5"), q("11/12")});
  REQUIRE(report.fpt);
  CHECK(*report.fpt == q("7/12"));
  CHECK(report.candidate_count == 86080);
  CHECK(ideal_equal(report.ideal_at(q("9/10")), I("x^2; y", r5)));

  const auto r7 = xy(7);
  const auto lin = jumping_numbers_unit_interval(P("x", r7), 1);
  CHECK(lin.jumping_numbers == std::vector<Rational>{Rational(0)});
  CHECK(*lin.fpt == Rational(1));

  const auto cusp = jumping_numbers_unit_interval(P("x^2 + y^3", r7), 2);
  CHECK(*cusp.fpt == q("5/6"));

  CHECK(!jumping_numbers_unit_interval(P("1 + x", r7), 1).fpt);
  CHECK_THROWS_AS(jumping_numbers_unit_interval(P("x", r7), 0), DomainError);
}

TEST_CASE("report JSON") {
  const auto r = xy(7);
  TestIdealEngine engine(P("x^2 + y^3", r), 2);
  const auto& report = engine.jumping_numbers();
  const auto doc = nlohmann::json::parse(report.to_json());
  CHECK(doc["prime"] == 7);
  CHECK(doc["fpt"] == "5/6");
  CHECK(doc["jumpingNumbers"] == nlohmann::json::array({"0", "5/6"}));
  CHECK(doc["testIdeals"][1] == nlohmann::json::array({"x", "y"}));
  CHECK(doc["elapsedMs"].is_null());
  CHECK(nlohmann::json::parse(report.to_json(true))["elapsedMs"].is_number());
  CHECK(report.to_json() == jumping_numbers_unit_interval(P("x^2 + y^3", r), 2).to_json());
}

TEST_CASE("default bound") {
  const auto r = xy(5);
  const auto quartic = default_bound(P(kQuartic, r));
  CHECK(quartic.bound == 6);
  CHECK(quartic.degree_bound == 15);
  CHECK(*quartic.length_bound == 6);
  const auto line = default_bound(P("x", r));
  CHECK(line.bound == 1);
  const auto nonisolated = default_bound(P("x^2", r));
  CHECK(!nonisolated.length_bound);
  CHECK(nonisolated.bound == 6);
}

TEST_CASE("nu") {
  const auto r5 = xy(5);
  const Ideal m5 = Ideal::maximal(r5);
  for (std::uint64_t e = 1; e <= 3; ++e) {
    CHECK(nu(P("x", r5), m5, e) == big_pow(5, e).get_ui() - 1);
  }
  CHECK(nu(P("x^2 + y^2", xy(3)), Ideal::maximal(xy(3)), 1) == 2);
  CHECK(nu(P(kQuartic, r5), m5, 1) == 2);
  CHECK(nu(P("x^7", r5), m5, 1) == 0);
  CHECK_THROWS_AS(nu(P("x", r5), Ideal::unit(r5), 1), DomainError);
  CHECK_THROWS_AS(nu(P("1 + x", r5), m5, 1), DomainError);
  CHECK_THROWS_AS(nu(P("x", r5), I("y", r5), 1), DomainError);

  std::mt19937_64 rng(51);
  for (int i = 0; i < 40; ++i) {
    const auto r = xy(std::vector<std::uint64_t>{2, 3, 5}[i % 3]);
    const Polynomial f = oracle::random_polynomial(r, rng, 4, 4, true);
    for (std::uint64_t e = 1; e <= 2; ++e) CHECK(nu(f, Ideal::maximal(r), e) == oracle::nu_maximal(f, e));
  }
}

TEST_CASE("F-thresholds") {
  const auto r = xy(5);
  const Polynomial f = P(kQuartic, r);
  CHECK(f_threshold(f, Ideal::maximal(r), 6, Rational(2)) == q("7/12"));
  CHECK(f_threshold(f, I("x^2; y", r), 6, Rational(2)) == q("4/5"));
  CHECK(f_threshold(f, Ideal::unit(r), 6, Rational(2)) == Rational(0));
  CHECK(f_threshold(f, I("x^2; x*y; y^2", r), 6, Rational(2)) == q("11/12"));
  CHECK(f_threshold(f, Ideal::maximal_power(r, 3), 6, Rational(2)) == q("1"));
  CHECK(f_threshold(f, Ideal::maximal_power(r, 5), 6, Rational(3)) == q("23/12"));
  CHECK_THROWS_AS(f_threshold(f, Ideal::maximal_power(r, 5), 6, Rational(1)), NotFoundBelowCap);
  CHECK_THROWS_AS(f_threshold(P("x", r), I("y", r), 1, Rational(2)), DomainError);
}

TEST_CASE("structure of the jump sequence on random curves") {
  std::mt19937_64 rng(52);
  int checked = 0;
  for (int i = 0; i < 200 && checked < 25; ++i) {
    const auto r = xy(std::vector<std::uint64_t>{2, 3, 5}[i % 3]);
    const Polynomial f = oracle::random_polynomial(r, rng, 4, 4, true, 2);
    const auto choice = default_bound(f);
    if (candidate_enumeration_size(f.prime(), choice.bound, Window{}) > 30000) continue;
    ++checked;
    TestIdealEngine engine(f, choice.bound);
    const auto& report = engine.jumping_numbers();
    const auto cands = candidate_set(f.prime(), choice.bound, Window{});
    const std::set<Rational> jn(report.jumping_numbers.begin(), report.jumping_numbers.end());
    for (std::size_t k = 0; k < report.jumping_numbers.size(); ++k) {
      const Rational& lambda = report.jumping_numbers[k];
      CHECK(std::binary_search(cands.values.begin(), cands.values.end(), lambda));
      CHECK(jn.count((lambda * Rational(static_cast<long>(f.prime()))).frac()));
      if (k > 0) {
        CHECK(report.test_ideals[k - 1].contains(report.test_ideals[k]));
        CHECK_FALSE(ideal_equal(report.test_ideals[k - 1], report.test_ideals[k]));
      }
      // integer shift
      CHECK(ideal_equal(engine.test_ideal(Rational(1) + lambda).ideal, scale(f, report.test_ideals[k])));
    }
    // monotone on all candidate pairs, sampled
    for (std::size_t a = 0; a + 1 < cands.size(); a += 1 + cands.size() / 20) {
      CHECK(engine.test_ideal(cands.values[a]).ideal.contains(engine.test_ideal(cands.values[a + 1]).ideal));
    }
  }
  CHECK(checked >= 10);
}
