#include <doctest.h>

#include <algorithm>
#include <random>

#include "fthresh/errors.hpp"
#include "fthresh/groebner.hpp"
#include "fthresh/jacobian.hpp"
#include "fthresh/parse.hpp"
#include "oracles.hpp"

using namespace fthresh;

namespace {

RingPtr xy(std::uint64_t p) { return Ring::make(Prime(p), {"x", "y"}); }
Polynomial P(const char* s, const RingPtr& r) { return parse_polynomial(s, r); }
Ideal I(const char* s, const RingPtr& r) { return Ideal(r, parse_generators(s, r)); }

// random m-primary ideal: pure powers plus a few random elements of m
Ideal random_m_primary(const RingPtr& r, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> deg(1, 4);
  std::vector<Polynomial> gens;
  for (std::size_t v = 0; v < r->dimension(); ++v) {
    std::vector<std::uint64_t> e(r->dimension(), 0);
    e[v] = deg(rng) + 1;
    gens.push_back(Polynomial::monomial(r, Monomial(e)));
  }
  const int extra = static_cast<int>(rng() % 3);
  for (int i = 0; i < extra; ++i) gens.push_back(oracle::random_polynomial(r, rng, 3, 3, true));
  return Ideal(r, gens);
}

}  // namespace

TEST_CASE("reduced bases") {
  const auto r = xy(5);
  CHECK(I("x; y^2", r).key() == "y^2; x");  // decreasing leading monomial
  CHECK(I("x + y; x - y", r).key() == I("x; y", r).key());
  CHECK(I("x^2; 1 + x", r).is_unit());
  CHECK(Ideal(r).is_zero());
  CHECK(I("x; y^2", r).to_string() == "(y^2, x)");
  CHECK(Ideal::unit(r).to_string() == "(1)");
  CHECK(I("x; y^2", r).to_json() == R"(["y^2","x"])");

  const Ideal j = I("y - x^2; x*y - 1", r);
  const auto& gb = j.groebner_basis();
  CHECK(detail::satisfies_buchberger_criterion(gb));
  for (const auto& g : gb) CHECK(g.leading_coeff() == 1);
  const auto len = artinian_length(j);
  CHECK(len.status == LengthStatus::NotSupportedAtOrigin);
  CHECK(len.length == 3);  // x^3 = 1, y = x^2
  std::mt19937_64 rng(31);
  for (int i = 0; i < 50; ++i) {
    const Polynomial a = oracle::random_polynomial(r, rng, 4, 4, false);
    const Polynomial b = oracle::random_polynomial(r, rng, 4, 4, false);
    CHECK(j.contains(a * P("y - x^2", r) + b * P("x*y - 1", r)));
  }
  CHECK_FALSE(j.contains(P("x - 1", r)));
}

TEST_CASE("normal forms") {
  const auto r = xy(5);
  const Ideal j = I("x^2; y^2", r);
  CHECK(normal_form(P("x^2", r), j).is_zero());
  CHECK(normal_form(P("x*y", r), j) == P("x*y", r));
  std::mt19937_64 rng(32);
  for (int i = 0; i < 50; ++i) {
    std::vector<Term> standard;
    for (std::uint64_t a = 0; a < 2; ++a) {
      for (std::uint64_t b = 0; b < 2; ++b) {
        if (rng() % 2) standard.push_back({Monomial(std::vector<std::uint64_t>{a, b}), rng() % 4 + 1});
      }
    }
    const Polynomial f(r, standard);
    const Polynomial g = oracle::random_polynomial(r, rng, 4, 4, false);
    CHECK(normal_form(f + g * P("x^2", r), j) == f);
  }
}

TEST_CASE("ideal equality") {
  const auto r = xy(5);
  CHECK(ideal_equal(I("x; y", r), I("y; x", r)));
  CHECK_FALSE(ideal_equal(I("x", r), I("x^2", r)));
  CHECK(ideal_equal(I("x + y; y", r), I("x; y", r)));
  CHECK_THROWS_AS(ideal_equal(I("x", r), I("x", xy(7))), DomainError);
  CHECK(I("x; y", r).contains(I("x^2; x*y", r)));
  CHECK_FALSE(I("x^2; x*y", r).contains(I("x; y", r)));
}

TEST_CASE("bracket powers") {
  const auto r5 = xy(5);
  CHECK(ideal_equal(bracket_power(I("x; y", r5), 1), I("x^5; y^5", r5)));
  CHECK(ideal_equal(bracket_power(I("x + y^2", r5), 0), I("x + y^2", r5)));
  const auto r2 = xy(2);
  CHECK(ideal_equal(bracket_power(I("x + y; y", r2), 1), I("x^2; y^2", r2)));

  std::mt19937_64 rng(33);
  for (int i = 0; i < 40; ++i) {
    const auto r = xy(std::vector<std::uint64_t>{2, 3, 5}[i % 3]);
    const Ideal j = random_m_primary(r, rng);
    // a second presentation: add a combination and permute
    auto gens = j.generators();
    gens.push_back(gens[0] * oracle::random_polynomial(r, rng, 2, 2, false) + gens[1]);
    std::reverse(gens.begin(), gens.end());
    const Ideal k(r, gens);
    REQUIRE(ideal_equal(j, k));
    CHECK(ideal_equal(bracket_power(j, 1), bracket_power(k, 1)));
  }
}

TEST_CASE("artinian length") {
  const auto r = xy(5);
  CHECK(artinian_length(I("x^2; y^2", r)).length == 4);
  CHECK(artinian_length(I("x^2; y^2", r)).m_primary());
  CHECK(artinian_length(jacobian(P("x^4 + y^3 + x^2*y^2", r))).length == 6);
  CHECK(artinian_length(I("x", r)).status == LengthStatus::NotZeroDimensional);
  const auto unit = artinian_length(Ideal::unit(r));
  CHECK(unit.status == LengthStatus::Unit);
  CHECK(unit.length == 0);
  CHECK(artinian_length(I("x^2 - x; y", r)).status == LengthStatus::NotSupportedAtOrigin);
  for (std::uint64_t a = 1; a <= 5; ++a) {
    for (std::uint64_t b = 1; b <= 5; ++b) {
      const Ideal j(r, {Polynomial::monomial(r, Monomial(std::vector<std::uint64_t>{a, 0})),
                        Polynomial::monomial(r, Monomial(std::vector<std::uint64_t>{0, b}))});
      CHECK(artinian_length(j).length == a * b);
    }
  }
  CHECK(standard_monomials(I("x^2; y^2", r)).size() == 4);
  CHECK_THROWS_AS(standard_monomials(I("x", r)), DomainError);
}

TEST_CASE("length agrees with linear algebra") {
  std::mt19937_64 rng(34);
  for (int i = 0; i < 40; ++i) {
    const auto r = xy(std::vector<std::uint64_t>{2, 3, 5, 7}[i % 4]);
    const Ideal j = random_m_primary(r, rng);
    CHECK(artinian_length(j).length == oracle::length(j.generators()));
  }
}

TEST_CASE("sum, product, scale") {
  const auto r = xy(5);
  CHECK(ideal_equal(ideal_sum(I("x", r), I("y", r)), I("x; y", r)));
  CHECK(ideal_equal(ideal_product(I("x", r), I("y", r)), I("x*y", r)));
  CHECK(ideal_equal(scale(P("x", r), I("x; y", r)), I("x^2; x*y", r)));
  CHECK(ideal_equal(Ideal::maximal_power(r, 2), I("x^2; x*y; y^2", r)));
  CHECK(Ideal::maximal_power(r, 0).is_unit());
}

TEST_CASE("Buchberger criterion and canonical keys") {
  std::mt19937_64 rng(35);
  for (int i = 0; i < 60; ++i) {
    const std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5, 7}[i % 4];
    const auto r = i % 2 ? xy(p) : Ring::make(Prime(p), {"x", "y", "z"});
    std::vector<Polynomial> gens;
    const int n = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < n; ++k) gens.push_back(oracle::random_polynomial(r, rng, 3, 3, false));
    const Ideal j(r, gens);
    CHECK(detail::satisfies_buchberger_criterion(j.groebner_basis()));
    for (const auto& g : gens) CHECK(j.contains(g));
    std::shuffle(gens.begin(), gens.end(), rng);
    CHECK(Ideal(r, gens).key() == j.key());
  }
}

TEST_CASE("colon commutes with Frobenius") {
  std::mt19937_64 rng(36);
  for (int i = 0; i < 30; ++i) {
    const auto r = xy(std::vector<std::uint64_t>{2, 3}[i % 2]);
    const Ideal j = random_m_primary(r, rng);
    const Polynomial g = oracle::random_polynomial(r, rng, 2, 3, i % 3 != 0);
    const Ideal lhs = detail::colon_zero_dimensional(bracket_power(j, 1), power(g, r->prime()));
    const Ideal rhs = bracket_power(detail::colon_zero_dimensional(j, g), 1);
    CHECK(ideal_equal(lhs, rhs));
  }
  const auto r = xy(5);
  CHECK(ideal_equal(detail::colon_zero_dimensional(I("x^2; y^2", r), P("x", r)), I("x; y^2", r)));
}
