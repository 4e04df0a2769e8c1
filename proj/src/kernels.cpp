#include "affscale/kernels.hpp"

#if defined(AFFSCALE_HAVE_OPENMP)
#include <omp.h>
#endif

namespace affscale::kernels {

int max_threads() {
#if defined(AFFSCALE_HAVE_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    0x6166u};
  return std::mt19937_64(seq);
}

Mat dual_rows_to_local_serial(const LocalFrame& frame, const Mat& a) {
  Mat out(a.cols(), a.rows());
  serial_for(static_cast<int>(a.rows()), [&](int i) {
    out.col(i) = frame.dual_to_local(a.row(i).transpose());
  });
  return out;
}

Mat dual_rows_to_local(const LocalFrame& frame, const Mat& a) {
  Mat out(a.cols(), a.rows());
  parallel_for(static_cast<int>(a.rows()), [&](int i) {
    out.col(i) = frame.dual_to_local(a.row(i).transpose());
  });
  return out;
}

Mat hessian_matrix_serial(const BarrierOracle& oracle, const Vec& e) {
  return oracle.hessian_matrix(e);
}

Mat hessian_matrix(const BarrierOracle& oracle, const Vec& e) {
  const int d = oracle.dim();
  Mat h(d, d);
  parallel_for(d, [&](int j) { h.col(j) = oracle.hessian_apply(e, Vec::Unit(d, j)); });
  return 0.5 * (h + h.transpose());
}

}  // namespace affscale::kernels
