#include <benchmark/benchmark.h>

#include <random>

#include "hilbert/echelon.hpp"
#include "hilbert/engine.hpp"
#include "hilbert/generators.hpp"
#include "hilbert/series.hpp"

namespace {

using namespace hilbert;

void echelon_random_sparse(benchmark::State& state) {
  const auto columns = static_cast<std::uint32_t>(state.range(0));
  const PrimeField field;
  std::mt19937_64 rng(7);
  std::vector<std::vector<MatrixEntry>> rows(columns);
  for (auto& row : rows) {
    for (int i = 0; i < 8; ++i) {
      row.push_back({static_cast<std::uint32_t>(rng() % columns), static_cast<std::uint32_t>(rng() % field.prime())});
    }
  }
  for (auto _ : state) {
    RowEchelon echelon(field, columns, RowEchelon::Tail::keep);
    for (const auto& row : rows) echelon.insert(row);
    benchmark::DoNotOptimize(echelon.rank());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(echelon_random_sparse)->RangeMultiplier(4)->Range(256, 4096)->Unit(benchmark::kMillisecond);

void commutative_generic_quotient(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto kind = AlgebraKind::commutative(n);
  const std::vector<GeneratorSpec> specs(static_cast<std::size_t>(n + 1), generic(2));
  EngineOptions options;
  options.trials = 1;
  for (auto _ : state) benchmark::DoNotOptimize(quotient_series(kind, specs, n + 1, options));
}
BENCHMARK(commutative_generic_quotient)->DenseRange(4, 8)->Unit(benchmark::kMillisecond);

void tensor_generic_quotient(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  const auto kind = AlgebraKind::tensor(3);
  const std::vector<GeneratorSpec> specs(2, generic(2));
  EngineOptions options;
  options.trials = 1;
  for (auto _ : state) benchmark::DoNotOptimize(quotient_series(kind, specs, degree, options));
}
BENCHMARK(tensor_generic_quotient)->DenseRange(5, 8)->Unit(benchmark::kMillisecond);

void froberg_truncation(benchmark::State& state) {
  const int precision = static_cast<int>(state.range(0));
  const DegreeSequence degrees{5, 4, 4, 3, 3, 3, 2, 2, 2, 2};
  for (auto _ : state) benchmark::DoNotOptimize(froberg_series(8, degrees, precision));
}
BENCHMARK(froberg_truncation)->RangeMultiplier(4)->Range(16, 1024);

}  // namespace
BENCHMARK_MAIN();
