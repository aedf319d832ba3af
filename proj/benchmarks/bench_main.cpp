#include <normfsi/bounds.hpp>
#include <normfsi/builtins.hpp>
#include <normfsi/construction.hpp>
#include <normfsi/machines.hpp>
#include <normfsi/measure.hpp>
#include <normfsi/normality.hpp>
#include <normfsi/shuffler_enum.hpp>

#include <benchmark/benchmark.h>

using namespace normfsi;

static void BM_ShuffleRun(benchmark::State& state) {
  const auto fig7 = Deterministic::make(builtin("fig7-shuffler"), 2);
  const auto x = WordStream::prng(2, 1);
  const auto y = WordStream::prng(2, 2);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(shuffle(fig7, x, y, n));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ShuffleRun)->Arg(1 << 12)->Arg(1 << 16);

static void BM_MeasureKernel(benchmark::State& state) {
  const Schedule schedule = Schedule::relaxed(2, {}, 2, 1, Rational(9, 20));
  const ShufflerEnumeration en(2);
  std::vector<Deterministic> machines;
  for (const auto& m : en.range(1, 2)) machines.push_back(Deterministic::make(m, 2));
  const auto g = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(measure(g_problem(schedule, g, CylinderPair(Alphabet(2)), machines)));
  }
}
BENCHMARK(BM_MeasureKernel)->DenseRange(3, 7)->Unit(benchmark::kMillisecond);

static void BM_RelaxedConstruction(benchmark::State& state) {
  const Schedule schedule = Schedule::relaxed(2, {}, 2, 1, Rational(9, 20));
  ConstructionOptions opts;
  opts.steps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(construct_pair(schedule, opts));
}
BENCHMARK(BM_RelaxedConstruction)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_BlockHistogram(benchmark::State& state) {
  const FiniteWord w = stream_prefix(WordStream::champernowne(2), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    for (std::size_t l = 1; l <= 4; ++l) benchmark::DoNotOptimize(sliding_discrepancy(w, l));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BlockHistogram)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

static void BM_TailCount(benchmark::State& state) {
  const FiniteWord g = FiniteWord::parse("01", Alphabet(2));
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tail_count(g, Rational(1, 4), n));
}
BENCHMARK(BM_TailCount)->Arg(64)->Arg(256);
BENCHMARK_MAIN();
