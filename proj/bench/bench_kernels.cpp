// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "qfc/boxcount.hpp"
#include "qfc/conic.hpp"
#include "qfc/harness.hpp"

using namespace qfc;

namespace {

const QuadraticForm& bench_form() {
  static const QuadraticForm q(2, 3, -1, 1, 0, 4);
  return q;
}

void BM_CountExact(benchmark::State& state) {
  const PrimeModulus p(1000000007);
  const Box box(123456789, 987654321, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_exact(bench_form(), 17, p, box).count);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CountExactSerial(benchmark::State& state) {
  const PrimeModulus p(1000000007);
  const Box box(123456789, 987654321, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_exact_serial(bench_form(), 17, p, box).count);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CountNaive(benchmark::State& state) {
  const PrimeModulus p(1000000007);
  const Box box(123456789, 987654321, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_naive(bench_form(), 17, p, box).count);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Lemma(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_small_arc_lemma(-1, state.range(0)).triples_checked);
}

void BM_LemmaSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_small_arc_lemma_serial(-1, state.range(0)).triples_checked);
}

void BM_Sweep(benchmark::State& state) {
  SweepSpec spec;
  spec.primes = {10007, 100003};
  spec.m_schedule = {10, 100, 1000};
  spec.samples = 50;
  spec.form = {1, 0, -2, 0, 0, 0};
  for (auto _ : state) benchmark::DoNotOptimize(sweep(spec).size());
}

void BM_SweepSerial(benchmark::State& state) {
  SweepSpec spec;
  spec.primes = {10007, 100003};
  spec.m_schedule = {10, 100, 1000};
  spec.samples = 50;
  spec.form = {1, 0, -2, 0, 0, 0};
  for (auto _ : state) benchmark::DoNotOptimize(sweep_serial(spec).size());
}

}  // namespace

BENCHMARK(BM_CountExact)->Arg(1000)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountExactSerial)->Arg(1000)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountNaive)->Arg(1000)->Arg(3000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Lemma)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LemmaSerial)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sweep)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
