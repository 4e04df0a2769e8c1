#include "affscale/qcp.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "affscale/kernels.hpp"

namespace affscale {

const char* to_string(SubproblemStatus s) {
  switch (s) {
    case SubproblemStatus::Solved: return "Solved";
    case SubproblemStatus::NotInSwath: return "NotInSwath";
    case SubproblemStatus::NumericalFailure: return "NumericalFailure";
  }
  return "?";
}

namespace {

void check_shapes(const BarrierOracle& oracle, const Mat& a, const Vec& c, const Vec& e,
                  double alpha) {
  const int d = oracle.dim();
  if (a.rows() < 1) throw Error(ErrorKind::DimensionMismatch, "at least one constraint is required");
  require_dim(a.cols(), d, "constraint columns");
  require_dim(c.size(), d, "objective length");
  require_dim(e.size(), d, "point length");
  if (!(alpha > 0.0 && alpha * alpha < oracle.degree())) {
    throw Error(ErrorKind::DomainError, "alpha must lie in (0, sqrt(n))");
  }
  if (!oracle.is_interior(e)) throw Error(ErrorKind::NotInterior, "e is not interior");
}

SubproblemSolution failure(SubproblemStatus status, std::string detail) {
  SubproblemSolution out;
  out.status = status;
  out.detail = std::move(detail);
  return out;
}

// Real roots of a s^2 + b s + c, cancellation-free.
int quadratic_roots(double a, double b, double c, double scale, std::array<double, 2>& roots) {
  if (std::abs(a) <= 1e-14 * scale) {
    if (std::abs(b) <= 1e-14 * scale) return 0;
    roots[0] = -c / b;
    return 1;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) {
    if (disc > -1e-14 * b * b) {
      roots[0] = -b / (2.0 * a);
      return 1;
    }
    return 0;
  }
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  if (q == 0.0) {
    roots[0] = 0.0;
    return 1;
  }
  roots[0] = q / a;
  roots[1] = c / q;
  return 2;
}

}  // namespace

FirstOrderSystem assemble_first_order_system(const BarrierOracle& oracle, const Mat& a,
                                             const Vec& c, const Vec& e, double alpha) {
  check_shapes(oracle, a, c, e, alpha);
  const Eigen::Index d = oracle.dim();
  const Eigen::Index m = a.rows();
  const Mat h = kernels::hessian_matrix(oracle, e);
  const Vec g = oracle.gradient(e);

  FirstOrderSystem sys;
  sys.matrix = Mat::Zero(m + d, d + m + 1);
  sys.matrix.topLeftCorner(m, d) = a;
  sys.matrix.bottomLeftCorner(d, d) = g * g.transpose() - alpha * alpha * h;
  sys.matrix.block(m, d, d, m) = a.transpose();
  sys.matrix.block(m, d + m, d, 1) = c;
  sys.rhs = Vec::Zero(m + d);
  sys.rhs.head(m) = a * e;
  return sys;
}

SubproblemSolution solve_qcp(const BarrierOracle& oracle, const Mat& a, const Vec& b,
                             const Vec& c, const Vec& e, double alpha) {
  check_shapes(oracle, a, c, e, alpha);
  require_dim(b.size(), a.rows(), "rhs length");
  const Eigen::Index d = oracle.dim();
  const Eigen::Index m = a.rows();
  const double n = oracle.degree();
  const double a2 = alpha * alpha;

  // Local frame: z = W x, W^T W = H(e).
  const auto frame = oracle.local_frame(e);
  const Vec e_loc = frame->center();
  const Vec c_loc = frame->dual_to_local(c);
  const Mat at_loc = kernels::dual_rows_to_local(*frame, a);  // d x m

  Eigen::ColPivHouseholderQR<Mat> aqr(at_loc);
  aqr.setThreshold(1e-12);
  if (aqr.rank() < m) {
    return failure(SubproblemStatus::NumericalFailure, "constraint rows are dependent in the local frame");
  }
  const Mat q_full = aqr.householderQ() * Mat::Identity(d, m);
  const Mat r = aqr.matrixR().topLeftCorner(m, m).triangularView<Eigen::Upper>();
  // Q^T z = R^{-T} P^T b, written as a correction to Q^T e~ since A e = b up to rounding.
  const Vec residual = aqr.colsPermutation().transpose() * (b - a * e);
  const Vec b_loc = q_full.transpose() * e_loc +
                    r.transpose().triangularView<Eigen::Lower>().solve(residual);

  // The part of c~ inside range(Q) is absorbed by the multiplier w; only the
  // orthogonal part, which shrinks like the gap near the optimum, stays.
  const Vec c_range = q_full.transpose() * c_loc;
  const Vec c_perp = c_loc - q_full * c_range;
  const double gamma = c_perp.norm();
  if (!(gamma > 1e-300) || !std::isfinite(gamma)) {
    return failure(SubproblemStatus::NumericalFailure, "objective is constant on the feasible slice");
  }
  const Vec c_hat = c_perp / gamma;

  // Unknowns (z, w', lambda') with lambda' = gamma lambda and
  // y = P R^{-1} (w' - lambda Q^T c~).
  Mat sys = Mat::Zero(m + d, d + m + 1);
  sys.topLeftCorner(m, d) = q_full.transpose();
  sys.bottomLeftCorner(d, d) = e_loc * e_loc.transpose();
  sys.bottomLeftCorner(d, d).diagonal().array() -= a2;
  sys.block(m, d, d, m) = q_full;
  sys.block(m, d + m, d, 1) = c_hat;
  Vec rhs = Vec::Zero(m + d);
  rhs.head(m) = b_loc;

  Eigen::ColPivHouseholderQR<Mat> sqr(sys.transpose());
  const Mat& rs = sqr.matrixR();
  const Eigen::Index k = m + d;
  const double rmax = std::abs(rs(0, 0));
  if (!(std::abs(rs(k - 1, k - 1)) > 1e-12 * rmax)) {
    return failure(SubproblemStatus::NumericalFailure, "first-order system has nullity above one");
  }
  const Mat q_sys = sqr.householderQ();
  const Vec null_dir = q_sys.col(k);
  const Vec v = rs.topLeftCorner(k, k).triangularView<Eigen::Upper>().transpose().solve(
      sqr.colsPermutation().transpose() * rhs);
  const Vec particular = q_sys.leftCols(k) * v;

  const Vec zp = particular.head(d);
  const Vec zv = null_dir.head(d);
  const double ap = e_loc.dot(zp);
  const double av = e_loc.dot(zv);
  const double qa = av * av - a2 * zv.squaredNorm();
  const double qb = 2.0 * (ap * av - a2 * zp.dot(zv));
  const double qc = ap * ap - a2 * zp.squaredNorm();
  const double scale = std::max({std::abs(qa), std::abs(qb), std::abs(qc), 1e-300});

  std::array<double, 2> roots{};
  const int nroots = quadratic_roots(qa, qb, qc, scale, roots);
  if (nroots == 0) return failure(SubproblemStatus::NotInSwath, "boundary quadratic has no real root");

  const double lambda_scale = sys.norm();
  int best = -1;
  double best_obj = std::numeric_limits<double>::infinity();
  bool saw_tiny_lambda = false;
  for (int i = 0; i < nroots; ++i) {
    const Vec u = particular + roots[i] * null_dir;
    const Vec z = u.head(d);
    if (!(e_loc.dot(z) > 0.0)) continue;
    const double lam = u(d + m);
    if (std::abs(lam) <= 1e-12 * lambda_scale) {
      saw_tiny_lambda = true;
      continue;
    }
    if (!(lam < 0.0)) continue;
    const double obj = c_hat.dot(z);
    if (obj < best_obj) {
      best_obj = obj;
      best = i;
    }
  }
  if (best < 0) {
    if (saw_tiny_lambda) return failure(SubproblemStatus::NumericalFailure, "multiplier is numerically zero");
    return failure(SubproblemStatus::NotInSwath, "no boundary root passes the minimizer tests");
  }

  const Vec u = particular + roots[best] * null_dir;
  const Vec z = u.head(d);
  const Vec w = u.segment(d, m);
  const double lambda = u(d + m) / gamma;
  // y_e = -y / lambda = P R^{-1} (Q^T c~ - w' / lambda).
  const Vec y_perm = r.triangularView<Eigen::Upper>().solve(c_range - w / lambda);

  SubproblemSolution out;
  out.status = SubproblemStatus::Solved;
  out.x = frame->from_local(z);
  out.y = aqr.colsPermutation() * y_perm;
  out.lambda = lambda;
  out.gap = c_perp.dot(e_loc - z);
  out.x_norm_e = z.norm();
  const double along = e_loc.dot(z);
  const Vec s_loc = (out.gap / (n - a2)) * (e_loc - (a2 / along) * z);
  out.s = frame->dual_from_local(s_loc);
  if (!out.x.allFinite() || !out.y.allFinite() || !out.s.allFinite()) {
    return failure(SubproblemStatus::NumericalFailure, "non-finite solution");
  }
  return out;
}

bool in_swath(const BarrierOracle& oracle, const Mat& a, const Vec& b, const Vec& c,
              const Vec& e, double alpha) {
  return solve_qcp(oracle, a, b, c, e, alpha).solved();
}

}  // namespace affscale
