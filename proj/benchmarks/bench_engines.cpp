#include <benchmark/benchmark.h>

#include "polyclone/central_algebra.hpp"
#include "polyclone/clone.hpp"
#include "polyclone/pol.hpp"
#include "polyclone/relations.hpp"

using namespace polyclone;

static void BM_is_compatible_meet_q4(benchmark::State& state) {
  const Relation rho = build_central_minimal(4, 2, {0});
  const OpTable meet = LatticeSpec::chain(4).meet;
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_compatible(meet, rho).compatible);
  }
}
BENCHMARK(BM_is_compatible_meet_q4);

static void BM_enumerate_compatible(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  const int arity = static_cast<int>(state.range(1));
  const Relation rho = build_central_minimal(q, 2, {0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_compatible(q, rho, arity).count);
  }
}
BENCHMARK(BM_enumerate_compatible)->Args({3, 1})->Args({3, 2})->Args({4, 1})->Args({4, 2});

static void BM_clone_level(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  const int arity = static_cast<int>(state.range(1));
  const Algebra algebra = build_r_algebra(LatticeSpec::chain(q), true);
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_clone_level(algebra, arity).members.size());
  }
}
BENCHMARK(BM_clone_level)->Args({2, 1})->Args({3, 1})->Args({3, 2})->Args({4, 1});

static void BM_decomposition_sweep_q3(benchmark::State& state) {
  const Algebra algebra = build_r_algebra(LatticeSpec::chain(3), true);
  const Relation rho = build_central_minimal(3, 2, {0});
  const auto pol = enumerate_compatible(3, rho, 2);
  for (auto _ : state) {
    std::uint64_t verified = 0;
    for (const OpTable& f : pol.tables) {
      if (decompose(algebra, f).verified) ++verified;
    }
    benchmark::DoNotOptimize(verified);
  }
}
BENCHMARK(BM_decomposition_sweep_q3);

BENCHMARK_MAIN();
