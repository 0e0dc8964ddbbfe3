#include "hamincl/action.hpp"
#include "hamincl/kernels.hpp"

#include <benchmark/benchmark.h>

using namespace hamincl;

namespace {

struct Fixture {
  PotentialModel model = make_zoo("maxpair", 2);
  Mat x, y;
  std::vector<PeriodicTrajectory> batch;

  explicit Fixture(int K) {
    PeriodicTrajectory q(2.0, 2, K);
    q.set_sin(0, 1, 1.1);
    q.set_cos(1, 1, 0.9);
    q.set_sin(1, 3, 0.05);
    const int M = quadrature_nodes(K);
    x = sample(q, M);
    y = sample(derivative(derivative(q)), M);
    for (int i = 0; i < 64; ++i) batch.push_back((0.5 + i / 64.0) * q);
  }
};

void BM_SelectSerial(benchmark::State& st) {
  Fixture f(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::select_nodes_serial(f.model, f.x, f.y, 1e-7, 1e-7));
}

void BM_SelectParallel(benchmark::State& st) {
  Fixture f(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::select_nodes_parallel(f.model, f.x, f.y, 1e-7, 1e-7));
}

void BM_ActionBatchSerial(benchmark::State& st) {
  Fixture f(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::action_values_serial(f.batch, f.model));
}

void BM_ActionBatchParallel(benchmark::State& st) {
  Fixture f(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::action_values_parallel(f.batch, f.model));
}

}  // namespace

BENCHMARK(BM_SelectSerial)->Arg(32)->Arg(128)->Arg(512);
BENCHMARK(BM_SelectParallel)->Arg(32)->Arg(128)->Arg(512);
BENCHMARK(BM_ActionBatchSerial)->Arg(32)->Arg(128);
BENCHMARK(BM_ActionBatchParallel)->Arg(32)->Arg(128);

BENCHMARK_MAIN();
