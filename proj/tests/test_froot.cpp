#include <doctest.h>

#include <random>

#include "fthresh/errors.hpp"
#include "fthresh/froot.hpp"
#include "fthresh/parse.hpp"
#include "oracles.hpp"

using namespace fthresh;

namespace {

RingPtr xy(std::uint64_t p) { return Ring::make(Prime(p), {"x", "y"}); }
Polynomial P(const char* s, const RingPtr& r) { return parse_polynomial(s, r); }
Ideal I(const char* s, const RingPtr& r) { return Ideal(r, parse_generators(s, r)); }

}  // namespace

TEST_CASE("froot_basis") {
  const auto r = xy(5);
  CHECK(ideal_equal(froot_basis(P("x^7", r), 1), I("x", r)));
  CHECK(froot_basis(P("x^4*y^3", r), 1).is_unit());
  CHECK(ideal_equal(froot_basis(P("x^5 + y^5", r), 1), I("x + y", r)));
  CHECK(ideal_equal(froot_basis(P("x^30 + x^26*y", r), 2), I("x", r)));
  CHECK(froot_basis(Polynomial(r), 1).is_zero());
  CHECK_THROWS_AS(froot_basis(P("x", r), 0), DomainError);
  CHECK(froot_basis(P("x^3", r), 40).is_unit());  // p^e far past 64 bits
}

TEST_CASE("froot_ideal") {
  const auto r = xy(5);
  CHECK(ideal_equal(froot_ideal(I("x^7; y^7", r), 1), I("x; y", r)));
  CHECK(froot_ideal(Ideal::unit(r), 3).is_unit());
  CHECK(ideal_equal(froot_ideal(I("x^5 + y^5; x^10", r), 1), I("x + y; x^2", r)));
}

TEST_CASE("froot_power examples") {
  const auto r = xy(5);
  CHECK(ideal_equal(froot_power(P("x", r), BigInt(30), 2), I("x", r)));
  const Ideal j = I("x^3; y", r);
  CHECK(ideal_equal(froot_power(P("x^2 + y^3", r), BigInt(0), 1, j), froot_ideal(j, 1)));
  const Polynomial f = P("x^4 + y^3 + x^2*y^2", r);
  const BigInt n = (Rational::parse("7/12") * Rational(big_pow(5, 12))).ceil();
  CHECK(ideal_equal(froot_power(f, n, 12), I("x; y", r)));
  CHECK(ideal_equal(froot_power(f, BigInt(7), 0), Ideal(r, {power(f, 7)})));
}

TEST_CASE("minimality of the root") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 60; ++i) {
    const auto r = xy(std::vector<std::uint64_t>{2, 3, 5}[i % 3]);
    const Polynomial f = oracle::random_polynomial(r, rng, 12, 5, false);
    const std::uint64_t e = 1 + i % 2;
    const Ideal root = froot_basis(f, e);
    CHECK(bracket_power(root, e).contains(f));
    const auto& gb = root.groebner_basis();
    if (gb.size() < 2) continue;
    for (std::size_t drop = 0; drop < gb.size(); ++drop) {
      std::vector<Polynomial> rest;
      for (std::size_t k = 0; k < gb.size(); ++k) {
        if (k != drop) rest.push_back(gb[k]);
      }
      const Ideal smaller(r, rest);
      if (ideal_equal(smaller, root)) continue;  // redundant generator, nothing lost
      CHECK_FALSE(bracket_power(smaller, e).contains(f));
    }
  }
}

TEST_CASE("composition of roots") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 100; ++i) {
    const auto r = xy(std::vector<std::uint64_t>{2, 3}[i % 2]);
    std::vector<Polynomial> gens{oracle::random_polynomial(r, rng, 20, 4, false),
                                 oracle::random_polynomial(r, rng, 20, 4, false)};
    const Ideal j(r, gens);
    const std::uint64_t a = 1 + i % 2, b = 1;
    CHECK(ideal_equal(froot_ideal(froot_ideal(j, a), b), froot_ideal(j, a + b)));
  }
}

TEST_CASE("scaling rule") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 100; ++i) {
    const auto r = xy(std::vector<std::uint64_t>{2, 3, 5}[i % 3]);
    const Polynomial g = oracle::random_polynomial(r, rng, 3, 3, false);
    const Polynomial h = oracle::random_polynomial(r, rng, 8, 4, false);
    const Ideal lhs = froot_ideal(Ideal(r, {power(g, r->prime()) * h}), 1);
    CHECK(ideal_equal(lhs, scale(g, froot_ideal(Ideal(r, {h}), 1))));
  }
}

TEST_CASE("recursion agrees with direct expansion") {
  std::mt19937_64 rng(44);
  for (int i = 0; i < 60; ++i) {
    const auto r = xy(std::vector<std::uint64_t>{2, 3, 5}[i % 3]);
    const Polynomial f = oracle::random_polynomial(r, rng, 4, 4, false);
    FrobeniusRootEngine engine(f);
    for (std::uint64_t e = 1; e <= 3; ++e) {
      for (std::uint64_t n = 0; n <= 40; n += 1 + i % 3) {
        const Ideal direct = oracle::naive_root(f, n, e);
        CHECK(ideal_equal(froot_power(f, BigInt(static_cast<unsigned long>(n)), e), direct));
        CHECK(ideal_equal(engine.power(BigInt(static_cast<unsigned long>(n)), e), direct));
      }
    }
  }
}

TEST_CASE("carried ideal") {
  std::mt19937_64 rng(45);
  for (int i = 0; i < 40; ++i) {
    const auto r = xy(std::vector<std::uint64_t>{2, 3}[i % 2]);
    const Polynomial f = oracle::random_polynomial(r, rng, 3, 3, true);
    const Ideal j(r, {oracle::random_polynomial(r, rng, 4, 3, false), oracle::random_polynomial(r, rng, 4, 3, false)});
    FrobeniusRootEngine engine(f);
    for (std::uint64_t n : {0, 1, 5, 11, 17}) {
      const Ideal direct = froot_ideal(scale(power(f, n), j), 2);
      CHECK(ideal_equal(froot_power(f, BigInt(static_cast<unsigned long>(n)), 2, j), direct));
      CHECK(ideal_equal(engine.power(BigInt(static_cast<unsigned long>(n)), 2, j), direct));
    }
  }
}

TEST_CASE("monotone in the exponent") {
  std::mt19937_64 rng(46);
  for (int i = 0; i < 30; ++i) {
    const auto r = xy(std::vector<std::uint64_t>{2, 3, 5}[i % 3]);
    const Polynomial f = oracle::random_polynomial(r, rng, 4, 4, true);
    FrobeniusRootEngine engine(f);
    Ideal prev = engine.power(BigInt(0), 2);
    for (unsigned long n = 1; n <= 30; ++n) {
      const Ideal cur = engine.power(BigInt(n), 2);
      CHECK(prev.contains(cur));
      prev = cur;
    }
  }
}

TEST_CASE("engine memoizes states") {
  const auto r = xy(5);
  FrobeniusRootEngine engine(P("x^4 + y^3 + x^2*y^2", r));
  const BigInt n = (Rational::parse("11/12") * Rational(big_pow(5, 12))).ceil();
  CHECK(ideal_equal(engine.power(n, 12), I("x^2; x*y; y^2", r)));
  const std::size_t states = engine.state_count();
  engine.power(n, 12);
  CHECK(engine.state_count() == states);
  CHECK(states < 40);
}
