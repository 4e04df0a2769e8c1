#ifndef AFFSCALE_KERNELS_HPP
#define AFFSCALE_KERNELS_HPP

#include <cstdint>
#include <exception>
#include <random>

#include "affscale/conic_core.hpp"

namespace affscale::kernels {

/// Number of worker threads the parallel kernels will use (1 without OpenMP).
int max_threads();

/// Runs fn(i) for i in [0, n) across OpenMP threads. The first exception
/// thrown by any iteration is rethrown on the calling thread after the loop.
template <class F>
void parallel_for(int n, F&& fn) {
  std::exception_ptr failure;
#if defined(AFFSCALE_HAVE_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
  for (int i = 0; i < n; ++i) {
    try {
      fn(i);
    } catch (...) {
#if defined(AFFSCALE_HAVE_OPENMP)
#pragma omp critical(affscale_parallel_for_failure)
#endif
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

template <class F>
void serial_for(int n, F&& fn) {
  for (int i = 0; i < n; ++i) fn(i);
}

/// Independent, reproducible RNG stream for item `index` of a run seeded
/// with `seed`; results do not depend on thread count or schedule.
std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index);

/// Rows of A mapped through W^{-T}: returns the d x m matrix whose column i
/// is frame.dual_to_local(A.row(i)).
Mat dual_rows_to_local(const LocalFrame& frame, const Mat& a);
Mat dual_rows_to_local_serial(const LocalFrame& frame, const Mat& a);

/// Dense Hessian assembled column by column.
Mat hessian_matrix(const BarrierOracle& oracle, const Vec& e);
Mat hessian_matrix_serial(const BarrierOracle& oracle, const Vec& e);

}  // namespace affscale::kernels

#endif  // AFFSCALE_KERNELS_HPP
