#include <benchmark/benchmark.h>

#include <random>

#include "skewsds/constructions.hpp"
#include "skewsds/doptimal.hpp"
#include "skewsds/group.hpp"
#include "skewsds/matrices.hpp"
#include "skewsds/search.hpp"

using namespace skewsds;

static void BM_DiffProfile(benchmark::State& state) {
  const int v = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  SubsetZv x(v);
  for (int i = 0; i < v; ++i) {
    if (rng() & 1) x.insert(i);
  }
  for (auto _ : state) benchmark::DoNotOptimize(diff_profile(x));
}
BENCHMARK(BM_DiffProfile)->Arg(31)->Arg(75)->Arg(127);

static void BM_CanonicalForm(benchmark::State& state) {
  const auto q = qr_skew_sds(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(q));
}
BENCHMARK(BM_CanonicalForm)->Arg(31)->Arg(71);

static void BM_EnumerateSkewA(benchmark::State& state) {
  const int v = static_cast<int>(state.range(0));
  const int lambda = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_skew_A(v, lambda));
}
BENCHMARK(BM_EnumerateSkewA)->Args({23, 5})->Args({31, 7})->Unit(benchmark::kMillisecond);

static void BM_EnumerateCanonicalB(benchmark::State& state) {
  const int v = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const int lambda = static_cast<int>(state.range(2));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_canonical_B(v, k, lambda));
}
BENCHMARK(BM_EnumerateCanonicalB)->Args({21, 6, 6})->Args({31, 10, 10})->Unit(benchmark::kMillisecond);

static void BM_Classify(benchmark::State& state) {
  const auto p = *derive_params(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  SearchOptions o;
  o.jobs = static_cast<unsigned>(state.range(2));
  for (auto _ : state) benchmark::DoNotOptimize(classify(p, o));
}
BENCHMARK(BM_Classify)
    ->Args({29, 7, 1})
    ->Args({31, 10, 1})
    ->Args({31, 10, 2})
    ->Args({37, 10, 1})
    ->Unit(benchmark::kMillisecond);

static void BM_ExactDeterminant(benchmark::State& state) {
  const auto q = qr_skew_sds(static_cast<int>(state.range(0)), 1);
  const auto m = build_design(q.a, q.b).dense();
  for (auto _ : state) benchmark::DoNotOptimize(exact_determinant(m));
}
BENCHMARK(BM_ExactDeterminant)->Arg(7)->Arg(31)->Arg(71)->Unit(benchmark::kMillisecond);

static void BM_EhlichBound(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ehlich_bound(n));
}
BENCHMARK(BM_EhlichBound)->Arg(62)->Arg(182);

BENCHMARK_MAIN();
