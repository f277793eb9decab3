// Serial reference vs OpenMP kernels. Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <cmath>

#include "sharpyoung/kernels.hpp"
#include "sharpyoung/pipeline.hpp"
#include "sharpyoung/trilinear.hpp"

using namespace sharpyoung;

namespace {

Triple bench_triple(double cond) {
  Triple t;
  for (int j = 0; j < 3; ++j) {
    Mat Q = Mat::Identity(3, 3);
    Q(0, 0) = cond;
    Q(0, 1) = Q(1, 0) = 0.3 * (j + 1);
    Q(2, 2) = 1.0 / std::sqrt(cond);
    t[j].Q = Q;
    t[j].a = Vec::Constant(3, 0.1 * (j - 1));
    t[j].b = Vec::Constant(3, 0.2 * (1 - j));
  }
  return t;
}

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

void label(benchmark::State& state) {
  state.SetLabel(state.range(0) ? "parallel, " + std::to_string(parallel_threads()) + " threads" : "serial");
}

void BM_trilinear_heis(benchmark::State& state) {
  const Triple g = bench_triple(static_cast<double>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(trilinear_heis(g, {}, exec_of(state)).log_value);
  label(state);
}

void BM_trilinear_oracle(benchmark::State& state) {
  const Triple g = bench_triple(static_cast<double>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(trilinear_oracle(g, {}, exec_of(state)).log_value);
  label(state);
}

void BM_grid_sampling(benchmark::State& state) {
  const auto p = std::array<Exponent, 3>{Exponent::finite(1.5), Exponent::finite(1.5), Exponent::finite(1.5)};
  const auto dt = make_diffuse_triple(p, 0.01);
  const GridSpec grid = auto_grid(dt.triple, p, 33, 65);
  const Gaussian& g = dt.triple[0];
  for (auto _ : state) {
    auto v = map_indexed<cdouble>(grid.size(), [&](long i) { return g(grid.point(i)); }, exec_of(state));
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * grid.size());
  label(state);
}

}  // namespace

BENCHMARK(BM_trilinear_heis)->ArgsProduct({{0, 1}, {1, 100}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_trilinear_oracle)->ArgsProduct({{0, 1}, {1, 100}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_grid_sampling)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
