#include <benchmark/benchmark.h>

#include "fthresh/constancy.hpp"
#include "fthresh/parse.hpp"

using namespace fthresh;

namespace {

RingPtr xy(std::uint64_t p) { return Ring::make(Prime(p), {"x", "y"}); }

Polynomial quartic() { return parse_polynomial("x^4 + y^3 + x^2*y^2", xy(5)); }

}  // namespace

static void BM_CandidateSet(benchmark::State& state) {
  const auto bound = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    auto set = candidate_set(Prime(5), bound, Window{});
    benchmark::DoNotOptimize(set.values.data());
    state.counters["candidates"] = static_cast<double>(set.size());
  }
}
BENCHMARK(BM_CandidateSet)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

// full candidate walk, fresh engine each time
static void BM_JumpingNumbersQuartic(benchmark::State& state) {
  const Polynomial f = quartic();
  for (auto _ : state) {
    TestIdealEngine engine(f, 6);
    benchmark::DoNotOptimize(engine.jumping_numbers().fpt);
  }
}
BENCHMARK(BM_JumpingNumbersQuartic)->Unit(benchmark::kMillisecond);

// one τ at s = 12 without memoization
static void BM_RootRecursionUncached(benchmark::State& state) {
  const Polynomial f = quartic();
  const BigInt n = (Rational::parse("11/12") * Rational(big_pow(5, 12))).ceil();
  for (auto _ : state) benchmark::DoNotOptimize(froot_power(f, n, 12).key());
}
BENCHMARK(BM_RootRecursionUncached)->Unit(benchmark::kMillisecond);

static void BM_RootRecursionMemoized(benchmark::State& state) {
  FrobeniusRootEngine engine(quartic());
  const BigInt n = (Rational::parse("11/12") * Rational(big_pow(5, 12))).ceil();
  engine.power(n, 12);
  for (auto _ : state) benchmark::DoNotOptimize(engine.power(n, 12).key());
}
BENCHMARK(BM_RootRecursionMemoized)->Unit(benchmark::kMicrosecond);

static void BM_PolynomialPower(benchmark::State& state) {
  const Polynomial f = parse_polynomial("x^4 + y^3 + x^2*y^2 + 2x*y + 3", xy(7));
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(power(f, n).size());
}
BENCHMARK(BM_PolynomialPower)->RangeMultiplier(4)->Range(4, 256)->Unit(benchmark::kMicrosecond);

static void BM_JacobianLength(benchmark::State& state) {
  const auto r = Ring::make(Prime(32003), {"x", "y", "z"});
  const Polynomial f = parse_polynomial("x^5 + y^4 + z^3 + x^2*y^2*z + x*y*z^2", r);
  for (auto _ : state) benchmark::DoNotOptimize(artinian_length(jacobian(f)).length);
}
BENCHMARK(BM_JacobianLength)->Unit(benchmark::kMillisecond);

static void BM_Nu(benchmark::State& state) {
  const Polynomial f = quartic();
  const Ideal m = Ideal::maximal(f.ring());
  const auto e = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(nu(f, m, e));
}
BENCHMARK(BM_Nu)->DenseRange(1, 6)->Unit(benchmark::kMillisecond);

static void BM_PerturbedFpt(benchmark::State& state) {
  const auto r = xy(7);
  const Polynomial g = parse_polynomial("x^2 + y^3 + x^4802", r);
  for (auto _ : state) {
    TestIdealEngine engine(g, 2);
    benchmark::DoNotOptimize(engine.jumping_numbers().fpt);
  }
}
BENCHMARK(BM_PerturbedFpt)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
