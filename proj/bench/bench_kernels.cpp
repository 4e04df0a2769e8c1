// Serial vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include <random>

#include "affscale/hyperbolic.hpp"
#include "affscale/kernels.hpp"
#include "affscale/sdp.hpp"

using namespace affscale;

namespace {

Mat random_spd(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Mat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = nd(rng);
  return g * g.transpose() / n + Mat::Identity(n, n);
}

Mat random_rows(int m, int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Mat a(m, d);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = nd(rng);
  return a;
}

template <bool Parallel>
void BM_SdpHessian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DetBarrierOracle o(n);
  const Vec e = svec(random_spd(n, 1));
  for (auto _ : state) {
    Mat h = Parallel ? kernels::hessian_matrix(o, e) : kernels::hessian_matrix_serial(o, e);
    benchmark::DoNotOptimize(h.data());
  }
  state.counters["threads"] = Parallel ? kernels::max_threads() : 1;
}

template <bool Parallel>
void BM_HpHessian(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto o = hp_barrier_oracle(HpFamily::elementary_symmetric(d, 3));
  const Vec e = Vec::Ones(d);
  for (auto _ : state) {
    Mat h = Parallel ? kernels::hessian_matrix(*o, e) : kernels::hessian_matrix_serial(*o, e);
    benchmark::DoNotOptimize(h.data());
  }
  state.counters["threads"] = Parallel ? kernels::max_threads() : 1;
}

template <bool Parallel>
void BM_DualRows(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DetBarrierOracle o(n);
  const Vec e = svec(random_spd(n, 2));
  const auto frame = o.local_frame(e);
  const Mat a = random_rows(2 * n, svec_dim(n), 3);
  for (auto _ : state) {
    Mat r = Parallel ? kernels::dual_rows_to_local(*frame, a) : kernels::dual_rows_to_local_serial(*frame, a);
    benchmark::DoNotOptimize(r.data());
  }
}

}  // namespace

BENCHMARK(BM_SdpHessian<false>)->Arg(8)->Arg(16)->Arg(24);
BENCHMARK(BM_SdpHessian<true>)->Arg(8)->Arg(16)->Arg(24);
BENCHMARK(BM_HpHessian<false>)->Arg(12)->Arg(24);
BENCHMARK(BM_HpHessian<true>)->Arg(12)->Arg(24);
BENCHMARK(BM_DualRows<false>)->Arg(10)->Arg(20)->Arg(40);
BENCHMARK(BM_DualRows<true>)->Arg(10)->Arg(20)->Arg(40);

BENCHMARK_MAIN();
