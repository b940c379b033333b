#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "grkhs/complexity.hpp"
#include "grkhs/quadrature.hpp"
#include "grkhs/spline.hpp"
#include "grkhs/tensor_spectrum.hpp"

namespace {

using grkhs::ShapeSequence;

void BM_TopTensorEigenvalues(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  const ShapeSequence shape = ShapeSequence::power_law(1.0, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(grkhs::top_n_tensor_eigenvalues(shape, d, n));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_TopTensorEigenvalues)->Args({16, 10000})->Args({1000, 10000})->Args({1000000, 1000});

void BM_InfoComplexity(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const ShapeSequence shape = ShapeSequence::isotropic(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(grkhs::info_complexity(shape, d, std::ldexp(1.0, -6), grkhs::ErrorCriterion::kNormalized));
  }
}
BENCHMARK(BM_InfoComplexity)->Arg(8)->Arg(32)->Arg(128);

void BM_Nystrom(benchmark::State& state) {
  const double gamma = static_cast<double>(state.range(0)) / 10.0;
  const auto precision = static_cast<grkhs::NystromPrecision>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(grkhs::nystrom_eigs(gamma, 200, 10, {0.0, precision, false}));
}
BENCHMARK(BM_Nystrom)
    ->Args({10, static_cast<int>(grkhs::NystromPrecision::kDouble)})
    ->Args({10, static_cast<int>(grkhs::NystromPrecision::kAuto)})
    ->Args({1, static_cast<int>(grkhs::NystromPrecision::kAuto)})
    ->Unit(benchmark::kMillisecond);

void BM_SplineWorstCase(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  grkhs::Design design{d, {}};
  for (std::size_t i = 0; i < n; ++i) {
    grkhs::Point p(d);
    for (auto& c : p) c = normal(rng);
    design.points.push_back(p);
  }
  const ShapeSequence shape = ShapeSequence::isotropic(1.0);
  const std::size_t m = d == 1 ? 60 : 24;
  for (auto _ : state) benchmark::DoNotOptimize(grkhs::spline_worst_case_error(shape, d, design, m));
}
BENCHMARK(BM_SplineWorstCase)->Args({1, 20})->Args({2, 20})->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
