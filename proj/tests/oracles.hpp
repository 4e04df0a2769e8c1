// Independent reference computations used by the tests. Nothing here calls
// the solver paths it is used to check.
#ifndef AFFSCALE_TESTS_ORACLES_HPP
#define AFFSCALE_TESTS_ORACLES_HPP

#include <cmath>
#include <random>
#include <vector>

#include "affscale/conic_core.hpp"
#include "affscale/hyperbolic.hpp"
#include "affscale/qcp.hpp"
#include "affscale/sdp.hpp"

namespace oracle {

using affscale::Mat;
using affscale::Vec;

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

inline double rel_err(const Vec& got, const Vec& want) {
  return (got - want).norm() / std::max(want.norm(), 1e-300);
}

inline double rel_err(const Mat& got, const Mat& want) {
  return (got - want).norm() / std::max(want.norm(), 1e-300);
}

// ---- worked 2x2 instance: C = diag(1,2), A_1 = I, b = 2, E = I, alpha = 1/2 ----
//
// Restricted to diagonal X, tr X = 2 and the cone boundary tr X = alpha ||X||
// give x1 + x2 = 2, x1^2 + x2^2 = 16, a single-variable quadratic solved here
// with the textbook formula; the smaller objective picks x2 < x1.
struct Diag2 {
  double x1, x2;   // diagonal of x_e
  double gap;      // tr(C E) - tr(C x_e)
  double y;        // y_e
  double s1, s2;   // diagonal of s_e
  double t;        // step
  double e1, e2;   // diagonal of E'
};

inline affscale::SdpInstance diag2_instance() {
  affscale::SdpInstance sdp;
  sdp.objective = Mat::Zero(2, 2);
  sdp.objective(0, 0) = 1.0;
  sdp.objective(1, 1) = 2.0;
  sdp.constraints = {Mat::Identity(2, 2)};
  sdp.rhs = Vec::Constant(1, 2.0);
  sdp.block_sizes = {2};
  return sdp;
}

inline Diag2 diag2_oracle() {
  // x1 = 2 - x2, (2 - x2)^2 + x2^2 = 16  ->  2 x2^2 - 4 x2 - 12 = 0.
  const double qa = 2.0, qb = -4.0, qc = -12.0;
  const double disc = std::sqrt(qb * qb - 4.0 * qa * qc);
  const double r_lo = (-qb - disc) / (2.0 * qa);
  Diag2 d{};
  d.x2 = r_lo;
  d.x1 = 2.0 - r_lo;
  d.gap = (1.0 + 2.0) - (d.x1 + 2.0 * d.x2);
  // s = gap/(n - a^2) (I - a^2/tr(X) X) with n = 2, a^2 = 1/4, tr X = 2.
  const double k = d.gap / 1.75;
  d.s1 = k * (1.0 - 0.125 * d.x1);
  d.s2 = k * (1.0 - 0.125 * d.x2);
  // C - y I = S  ->  y = 1 - s1.
  d.y = 1.0 - d.s1;
  // power sums of (x1, x2) -> step polynomial coefficients, minimizer.
  const double p1 = d.x1 + d.x2, p2 = d.x1 * d.x1 + d.x2 * d.x2;
  const double p3 = std::pow(d.x1, 3) + std::pow(d.x2, 3), p4 = std::pow(d.x1, 4) + std::pow(d.x2, 4);
  const double a = p1 * p1 * p2 - 2 * 0.25 * p1 * p3 + 0.0625 * p4;
  const double b = 2 * 0.0625 * p3 - 2 * p1 * p1 * p1;
  d.t = -b / (2 * a);
  d.e1 = (1.0 + d.t * d.x1) / (1.0 + d.t);
  d.e2 = (1.0 + d.t * d.x2) / (1.0 + d.t);
  return d;
}

// ---- ambient-coordinate subproblem oracle ----
//
// Kernel of the ambient first-order system by full-pivot LU, minimum-norm
// particular solution by complete orthogonal decomposition, boundary quadratic
// in the explicit Hessian metric. Shares nothing with the local-frame solver.
struct AmbientSolution {
  bool ok = false;
  Vec x;
  double lambda = 0.0;
  int nullity = -1;
};

inline AmbientSolution ambient_qcp(const affscale::BarrierOracle& o, const Mat& a, const Vec& b,
                                   const Vec& c, const Vec& e, double alpha) {
  const int d = o.dim();
  const int m = static_cast<int>(a.rows());
  Mat h(d, d);
  for (int j = 0; j < d; ++j) h.col(j) = o.hessian_apply(e, Vec::Unit(d, j));
  h = 0.5 * (h + h.transpose()).eval();
  const Vec g = o.gradient(e);
  Mat sys = Mat::Zero(m + d, d + m + 1);
  sys.topLeftCorner(m, d) = a;
  sys.bottomLeftCorner(d, d) = g * g.transpose() - alpha * alpha * h;
  sys.block(m, d, d, m) = a.transpose();
  sys.block(m, d + m, d, 1) = c;
  Vec rhs = Vec::Zero(m + d);
  rhs.head(m) = b;

  AmbientSolution out;
  Eigen::FullPivLU<Mat> lu(sys);
  lu.setThreshold(1e-10);
  const Mat kernel = lu.kernel();
  out.nullity = static_cast<int>(kernel.cols());
  if (out.nullity != 1) return out;
  const Vec null_dir = kernel.col(0);
  const Vec part = sys.completeOrthogonalDecomposition().solve(rhs);

  auto along = [&](const Vec& x) { return -g.dot(x); };  // <e, x>_e
  auto sq = [&](const Vec& u, const Vec& v) { return u.dot(h * v); };
  const Vec xp = part.head(d), xv = null_dir.head(d);
  const double a2 = alpha * alpha;
  const double qa = along(xv) * along(xv) - a2 * sq(xv, xv);
  const double qb = 2.0 * (along(xp) * along(xv) - a2 * sq(xp, xv));
  const double qc = along(xp) * along(xp) - a2 * sq(xp, xp);
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0) return out;
  double best = INFINITY;
  for (const double sgn : {-1.0, 1.0}) {
    const double sigma = (-qb + sgn * std::sqrt(disc)) / (2.0 * qa);
    const Vec u = part + sigma * null_dir;
    const Vec x = u.head(d);
    if (!(along(x) > 0.0) || !(u(d + m) < 0.0)) continue;
    if (c.dot(x) < best) {
      best = c.dot(x);
      out.x = x;
      out.lambda = u(d + m);
      out.ok = true;
    }
  }
  return out;
}

/// tr(E^{-1} B_i E^{-1} B_j) for the svec basis B_i, entry by entry.
inline Mat sdp_hessian_by_traces(const Mat& e) {
  const int n = static_cast<int>(e.rows());
  const int d = affscale::svec_dim(n);
  const Mat einv = e.inverse();
  std::vector<Mat> basis;
  for (int k = 0; k < d; ++k) basis.push_back(affscale::smat(Vec::Unit(d, k)));
  Mat h(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) h(i, j) = (einv * basis[i] * einv * basis[j]).trace();
  return h;
}

/// e_k by enumerating k-subsets.
inline double elementary_symmetric_brute(const Vec& x, int k) {
  const int d = static_cast<int>(x.size());
  double total = 0.0;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    double prod = 1.0;
    for (const int i : idx) prod *= x(i);
    total += prod;
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == d - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
  return total;
}

/// sum_j lambda_j^k by direct powers.
inline std::array<double, 4> power_sums_direct(const Vec& lambda) {
  std::array<double, 4> p{};
  for (int k = 1; k <= 4; ++k)
    for (const double l : lambda) p[k - 1] += std::pow(l, k);
  return p;
}

/// Coefficients (ascending) of prod_j (t + lambda_j).
inline Vec monic_from_roots(const Vec& lambda) {
  Vec a = Vec::Ones(1);
  for (const double l : lambda) {
    Vec next = Vec::Zero(a.size() + 1);
    next.head(a.size()) += l * a;
    next.tail(a.size()) += a;
    a = next;
  }
  return a;
}

inline Mat random_spd(int n, std::mt19937_64& rng, double lo = 0.5, double hi = 2.0) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(lo, hi);
  Mat z(n, n);
  for (auto& v : z.reshaped()) v = g(rng);
  const Mat q = Eigen::HouseholderQR<Mat>(z).householderQ();
  Vec ev(n);
  for (auto& v : ev) v = u(rng);
  Mat out = q * ev.asDiagonal() * q.transpose();
  return 0.5 * (out + out.transpose());
}

inline Mat random_sym(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat z(n, n);
  for (auto& v : z.reshaped()) v = g(rng);
  return 0.5 * (z + z.transpose());
}

inline Vec random_vec(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec v(d);
  for (auto& x : v) x = g(rng);
  return v;
}

/// Random interior point within half the local unit ball of the canonical direction.
inline Vec random_interior(const affscale::HpFamily& f, std::mt19937_64& rng) {
  const auto o = affscale::hp_barrier_oracle(f);
  const Vec e = affscale::canonical_direction(f);
  const Vec u = random_vec(f.dim, rng);
  const double nu = std::sqrt(affscale::local_inner(*o, e, u, u));
  std::uniform_real_distribution<double> r(0.0, 0.9);
  std::uniform_real_distribution<double> s(0.3, 3.0);
  return s(rng) * (e + (r(rng) / nu) * u);
}

/// A point on the boundary of K_e(alpha) with <e,x>_e > 0, built in the local frame.
inline Vec random_boundary_point(const affscale::BarrierOracle& o, const Vec& e, double alpha,
                                 std::mt19937_64& rng) {
  const auto frame = o.local_frame(e);
  const Vec ec = frame->center();
  const double n = o.degree();
  Vec u = random_vec(o.dim(), rng);
  u -= (u.dot(ec) / ec.squaredNorm()) * ec;
  u.normalize();
  const double along = 1.0;
  const double perp = std::sqrt(n / (alpha * alpha) - 1.0);
  const Vec z = along * ec / std::sqrt(n) + perp * u;
  return frame->from_local(z);
}

inline std::vector<affscale::HpFamily> all_families() {
  return {affscale::HpFamily::product(5), affscale::HpFamily::second_order(6),
          affscale::HpFamily::determinant(4), affscale::HpFamily::elementary_symmetric(7, 3)};
}

}  // namespace oracle

#endif  // AFFSCALE_TESTS_ORACLES_HPP
