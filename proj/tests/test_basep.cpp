#include <doctest.h>

#include <random>
#include <set>

#include "fthresh/basep.hpp"
#include "fthresh/errors.hpp"

using namespace fthresh;

namespace {

Rational q(const char* s) { return Rational::parse(s); }

Rational random_rational(std::mt19937_64& rng, long max_den) {
  std::uniform_int_distribution<long> den(1, max_den);
  const long d = den(rng);
  std::uniform_int_distribution<long> num(1, 3 * d);
  return Rational(BigInt(num(rng)), BigInt(d));
}

}  // namespace

TEST_CASE("rational basics") {
  CHECK(q("6/8").to_string() == "3/4");
  CHECK(q(" 5 ").to_string() == "5");
  CHECK(q("0/7").is_zero());
  CHECK((q("1/2") + q("1/3")).to_string() == "5/6");
  CHECK(q("7/3").floor() == 2);
  CHECK(q("7/3").ceil() == 3);
  CHECK(q("7/3").frac() == q("1/3"));
  CHECK(q("1/3") < q("1/2"));
  CHECK_THROWS_AS(q("1/3") - q("1/2"), DomainError);
  CHECK_THROWS_AS(q("1/0"), ParseError);
  CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), DomainError);
  CHECK_THROWS_AS(q("-1/2"), Error);
  CHECK_THROWS_AS(q("abc"), ParseError);
  CHECK(abs_diff(q("1/3"), q("1/2")) == q("1/6"));
}

TEST_CASE("primes") {
  CHECK(Prime(5).value() == 5);
  CHECK_THROWS_AS(Prime(4), DomainError);
  CHECK_THROWS_AS(Prime(1), DomainError);
  CHECK(is_prime(2305843009213693951ULL));  // 2^61 - 1
}

TEST_CASE("truncate") {
  CHECK(truncate(q("7/12"), 2, Prime(5)) == q("14/25"));
  CHECK(truncate(q("1/2"), 0, Prime(5)) == Rational(0));
  CHECK(truncate(q("1"), 1, Prime(2)) == q("1/2"));
  CHECK_THROWS_AS(truncate(Rational(0), 3, Prime(5)), DomainError);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const Rational lambda = random_rational(rng, 60);
    const Prime p(std::vector<std::uint64_t>{2, 3, 5, 7}[i % 4]);
    Rational prev = truncate(lambda, 0, p);
    for (std::uint64_t e = 1; e <= 8; ++e) {
      const Rational t = truncate(lambda, e, p);
      CHECK(prev <= t);
      CHECK(t < lambda);
      CHECK(lambda - t <= Rational(BigInt(1), big_pow(p, e)));
      CHECK((t * Rational(big_pow(p, e))).is_integer());
      prev = t;
    }
  }
}

TEST_CASE("truncation prefix property") {
  std::mt19937_64 rng(12);
  const Prime p(3);
  for (int i = 0; i < 400; ++i) {
    const Rational a = random_rational(rng, 30);
    const Rational b = random_rational(rng, 30);
    for (std::uint64_t e = 1; e <= 6; ++e) {
      if (truncate(a, e, p) != truncate(b, e, p)) continue;
      for (std::uint64_t s = 0; s <= e; ++s) CHECK(truncate(a, s, p) == truncate(b, s, p));
    }
  }
}

TEST_CASE("epsilon") {
  CHECK(epsilon(q("7/12"), Prime(5)) == ExponentPair{0, 2});
  CHECK(epsilon(q("3"), Prime(2)) == ExponentPair{0, 1});
  CHECK(epsilon(q("4/5"), Prime(5)) == ExponentPair{1, 1});
  CHECK(epsilon(q("1/50"), Prime(5)) == ExponentPair{2, 1});
  CHECK(epsilon(q("1/7"), Prime(2)) == ExponentPair{0, 3});
  CHECK_THROWS_AS(epsilon(Rational(0), Prime(5)), DomainError);

  // u minimal, then v minimal, by scanning
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    const Rational lambda = random_rational(rng, 200);
    const Prime p(std::vector<std::uint64_t>{2, 3, 5, 7}[i % 4]);
    const ExponentPair got = epsilon(lambda, p);
    REQUIRE(in_expset(lambda, got, p));
    bool found = false;
    for (std::uint64_t u = 0; u <= got.u && !found; ++u) {
      for (std::uint64_t v = 1; v <= 200 && !found; ++v) {
        if (in_expset(lambda, {u, v}, p)) {
          CHECK(u == got.u);
          CHECK(v == got.v);
          found = true;
        }
      }
    }
    CHECK(found);
  }
}

TEST_CASE("in_expset") {
  CHECK(in_expset(q("7/12"), {0, 2}, Prime(5)));
  CHECK_FALSE(in_expset(q("7/12"), {3, 1}, Prime(5)));

  std::mt19937_64 rng(14);
  std::uniform_int_distribution<std::uint64_t> small(0, 4);
  for (int i = 0; i < 300; ++i) {
    const Rational lambda = random_rational(rng, 100);
    const Prime p(std::vector<std::uint64_t>{2, 3, 5}[i % 3]);
    const ExponentPair e = epsilon(lambda, p);
    const std::uint64_t a = small(rng), b = small(rng) + 1;
    CHECK(in_expset(lambda, {e.u + a, e.v * b}, p));
  }
}

TEST_CASE("candidate_set examples") {
  auto values = [](const CandidateSet& c) {
    std::vector<std::string> out;
    for (const auto& v : c.values) out.push_back(v.to_string());
    return out;
  };
  CHECK(values(candidate_set(Prime(2), 2, Window{})) == std::vector<std::string>{"0", "1/3", "1/2", "2/3"});
  CHECK(values(candidate_set(Prime(3), 1, Window{})) == std::vector<std::string>{"0", "1/2"});
  CHECK(values(candidate_set(Prime(5), 1, Window{})) == std::vector<std::string>{"0", "1/4", "1/2", "3/4"});
  CHECK(candidate_set(Prime(5), 6, Window{}).size() == 86080);
  CHECK(candidate_set(Prime(7), 2, Window{}).size() == 84);
  CHECK(candidate_set(Prime(2), 10, Window{}).size() == 8350);

  Window upper{q("1"), q("2")};
  const auto shifted = candidate_set(Prime(2), 2, upper);
  CHECK(values(shifted) == std::vector<std::string>{"1", "4/3", "3/2", "5/3"});

  CHECK_THROWS_AS(candidate_set(Prime(2), 0, Window{}), DomainError);
  CHECK_THROWS_AS(candidate_set(Prime(2), 2, Window{Rational(0), std::nullopt}), DomainError);
  CHECK_THROWS_AS(candidate_set(Prime(5), 9, Window{}, 1000), InfeasibleError);
  CHECK(candidates_to_json(candidate_set(Prime(3), 1, Window{})) == R"(["0","1/2"])");
}

TEST_CASE("candidate_set matches a direct scan") {
  // every c/d in [0,1) with d <= max denominator, kept when some a+b <= B works
  for (std::uint64_t p : {2, 3, 5}) {
    for (std::uint64_t bound = 1; bound <= 3; ++bound) {
      const CandidateSet set = candidate_set(Prime(p), bound, Window{});
      std::set<Rational> expected{Rational(0)};
      const long maxden = big_pow(p, bound).get_si();
      for (long d = 1; d <= maxden; ++d) {
        for (long c = 1; c < d; ++c) {
          const Rational lambda{BigInt(c), BigInt(d)};
          bool ok = false;
          for (std::uint64_t b = 1; b <= bound && !ok; ++b) {
            for (std::uint64_t a = 0; a + b <= bound && !ok; ++a) ok = in_expset(lambda, {a, b}, Prime(p));
          }
          if (ok) expected.insert(lambda);
        }
      }
      CHECK(std::vector<Rational>(expected.begin(), expected.end()) == set.values);
      for (std::size_t i = 1; i < set.size(); ++i) {
        REQUIRE(set.pairs[i]);
        CHECK(*set.pairs[i] == epsilon(set.values[i], Prime(p)));
        CHECK(set.pairs[i]->u + set.pairs[i]->v <= bound);
      }
    }
  }
}

TEST_CASE("candidate gap exceeds p^-2B") {
  for (std::uint64_t p : {2, 3, 5}) {
    for (std::uint64_t bound = 1; bound <= 3; ++bound) {
      const CandidateSet set = candidate_set(Prime(p), bound, Window{});
      const Rational gap(BigInt(1), big_pow(p, 2 * bound));
      for (std::size_t i = 0; i < set.size(); ++i) {
        for (std::size_t j = i + 1; j < set.size(); ++j) CHECK(set.values[j] - set.values[i] > gap);
      }
    }
  }
}

TEST_CASE("exclusion interval around candidates") {
  for (std::uint64_t p : {2, 3, 5}) {
    for (std::uint64_t bound = 1; bound <= 3; ++bound) {
      const CandidateSet set = candidate_set(Prime(p), bound, Window{Rational(0), Rational(2)});
      for (std::size_t i = 0; i < set.size(); ++i) {
        if (set.values[i].is_zero()) continue;
        const Rational& lambda = set.values[i];
        const ExponentPair e = epsilon(lambda, Prime(p));
        const std::uint64_t s = e.u + e.v * bound;
        const Rational lo = truncate(lambda, s, Prime(p));
        const Rational hi = lo + Rational(BigInt(1), big_pow(p, s));
        for (const auto& other : set.values) {
          if (other == lambda) continue;
          CHECK_FALSE((lo < other && other <= hi));
        }
      }
    }
  }
}

TEST_CASE("frac_orbit") {
  CHECK(frac_orbit(q("7/12"), 2, Prime(5)) == std::vector<Rational>{q("7/12"), q("11/12")});
  CHECK(frac_orbit(q("4/5"), 2, Prime(5)) == std::vector<Rational>{q("4/5"), Rational(0)});
  CHECK(frac_orbit(q("1/2"), 1, Prime(5)) == std::vector<Rational>{q("1/2")});

  std::mt19937_64 rng(15);
  int tested = 0;
  while (tested < 200) {
    const Rational lambda = random_rational(rng, 400);
    const Prime p(std::vector<std::uint64_t>{2, 3, 5}[tested % 3]);
    const ExponentPair e = epsilon(lambda, p);
    if (e.u + e.v > 8) continue;
    const auto orbit = frac_orbit(lambda, e.u + e.v, p);
    CHECK(std::set<Rational>(orbit.begin(), orbit.end()).size() == e.u + e.v);
    ++tested;
  }
}

TEST_CASE("truncation_equal") {
  const Prime p(5);
  CHECK(truncation_equal(q("7/12"), q("7/12"), {0, 2}, {0, 2}, p));
  CHECK_FALSE(truncation_equal(q("7/12"), q("11/12"), {0, 2}, {0, 2}, p));
  const Rational tiny(BigInt(1), big_pow(5, 9));
  CHECK_FALSE(truncation_equal(q("4/5"), q("4/5") + tiny, {1, 1}, {9, 1}, p));
  CHECK_THROWS_AS(truncation_equal(q("7/12"), q("7/12"), {3, 1}, {0, 2}, p), DomainError);

  std::mt19937_64 rng(16);
  for (int i = 0; i < 500; ++i) {
    const Rational a = random_rational(rng, 40);
    const Rational b = i % 5 == 0 ? a : random_rational(rng, 40);
    const Prime r(std::vector<std::uint64_t>{2, 3, 5, 7}[i % 4]);
    CHECK(truncation_equal(a, b, epsilon(a, r), epsilon(b, r), r) == (a == b));
  }
}
