// SPDX-License-Identifier: Apache-2.0
// Parallel row elimination against the serial reference.
#include <benchmark/benchmark.h>

#include <random>

#include "chowkit/corpus.hpp"
#include "chowkit/matrix.hpp"
#include "chowkit/scene.hpp"

namespace {

using chowkit::Matrix;
using chowkit::Rational;

// Small-integer entries with a sprinkling of halves, about a third nonzero.
Matrix workload(std::size_t rows, std::size_t cols, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 2);
  std::uniform_int_distribution<int> keep(0, 2);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (keep(rng) == 0) {
        m(i, j) = Rational(num(rng), den(rng));
        m(i, j).canonicalize();
      }
    }
  }
  return m;
}

void BM_RrefParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix m = workload(2 * n, n, 7);
  for (auto _ : state) benchmark::DoNotOptimize(chowkit::rref(m));
  state.SetComplexityN(state.range(0));
}

void BM_RrefSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix m = workload(2 * n, n, 7);
  for (auto _ : state) benchmark::DoNotOptimize(chowkit::rref_serial(m));
  state.SetComplexityN(state.range(0));
}

BENCHMARK(BM_RrefParallel)->RangeMultiplier(2)->Range(16, 64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RrefSerial)->RangeMultiplier(2)->Range(16, 64)->Unit(benchmark::kMillisecond);

// End to end: the whole corpus, dominated by small eliminations.
void BM_CorpusSuite(benchmark::State& state) {
  for (auto _ : state) {
    int passed = 0;
    for (const auto& name : chowkit::corpus::list_cases()) {
      const auto c = chowkit::corpus::load_case(name);
      passed += chowkit::scene::eval_scene(chowkit::scene::parse_scene(std::string(c.scene), name)).passed();
    }
    benchmark::DoNotOptimize(passed);
  }
}

BENCHMARK(BM_CorpusSuite)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
