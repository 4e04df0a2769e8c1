#include "affscale/diagnostics.hpp"

#include <cmath>
#include <limits>

#include "affscale/kernels.hpp"

namespace affscale {

double trace_q(const Mat& e, const Mat& x, const Mat& s, double t) {
  require_dim(x.rows(), e.rows(), "trace_q X");
  require_dim(s.rows(), e.rows(), "trace_q S");
  const Mat m = (e + t * x) * s;
  return (m * m).trace();
}

Mat normalized_dual(const Mat& e, const Mat& x, double alpha) {
  const int n = static_cast<int>(e.rows());
  const auto llt = checked_cholesky(e);
  const Mat einv = llt.solve(Mat::Identity(n, n));
  const double along = (einv * x).trace();  // <E, X>_E
  if (!(along > 0.0)) throw Error(ErrorKind::DomainError, "X is not in the positive half-cone");
  const Mat v = e - (alpha * alpha / along) * x;
  return einv * v * einv / (n - alpha * alpha);
}

namespace {

void finalize(CheckReport& r) { r.pass = r.max_rel_err <= r.tolerance; }

void record(CheckReport& r, double got, double want) {
  const double abs_err = std::abs(got - want);
  const double rel_err = abs_err / std::max(std::abs(want), std::numeric_limits<double>::min());
  r.max_abs_err = std::max(r.max_abs_err, abs_err);
  r.max_rel_err = std::max(r.max_rel_err, std::isfinite(rel_err) ? rel_err : 1e300);
  ++r.samples;
}

struct SdpSolve {
  SubproblemSolution sol;
  Mat x, s;
};

SdpSolve solve_sdp(const SdpInstance& sdp, const Mat& e, double alpha) {
  const DetBarrierOracle oracle(sdp.order());
  SdpSolve out;
  out.sol = solve_qcp(oracle, sdp.constraint_matrix(), sdp.rhs, sdp.objective_vector(), svec(e), alpha);
  if (!out.sol.solved()) {
    throw Error(out.sol.status == SubproblemStatus::NotInSwath ? ErrorKind::NotInSwath
                                                               : ErrorKind::NumericalFailure,
                out.sol.detail);
  }
  out.x = smat(out.sol.x);
  out.s = smat(out.sol.s);
  return out;
}

}  // namespace

CheckReport q_scaling_check(const SdpInstance& sdp, const Mat& e, double alpha, int t_samples,
                            double tol) {
  if (t_samples < 1) throw Error(ErrorKind::DomainError, "t_samples must be >= 1");
  const int n = sdp.order();
  const SdpSolve sub = solve_sdp(sdp, e, alpha);
  const Mat s_norm = sub.s / sub.sol.gap;
  const PowerSums p = power_sums_from_eigs(direction_eigs_sdp(e, sub.x));
  const StepPoly q = step_poly_coeffs(p, alpha, n);
  const double t_e = -q.b / (2.0 * q.a);
  const double scale = (n - alpha * alpha) * p.p1;

  CheckReport r;
  r.name = "q_scaling";
  r.tolerance = tol;
  for (int j = 0; j < t_samples; ++j) {
    const double t = t_samples == 1 ? 0.0 : 2.0 * t_e * j / (t_samples - 1);
    record(r, trace_q(e, sub.x, s_norm, t), q(t) / (scale * scale));
  }
  finalize(r);
  return r;
}

CheckReport membership_equiv_check(const SdpInstance& sdp, const Mat& e, double alpha,
                                   double beta, const std::vector<double>& t_grid, double band) {
  const int n = sdp.order();
  if (!(beta > 0.0 && beta < 1.0)) throw Error(ErrorKind::DomainError, "beta must lie in (0, 1)");
  const SdpSolve sub = solve_sdp(sdp, e, alpha);
  const Mat s_norm = sub.s / sub.sol.gap;
  const Vec s_vec = svec(s_norm);
  const double threshold = 1.0 / (n - beta * beta);
  const DetBarrierOracle oracle(n);

  CheckReport r;
  r.name = "membership_equiv";
  r.tolerance = 0.0;
  int considered = 0;
  for (const double t : t_grid) {
    const double q = trace_q(e, sub.x, s_norm, t);
    if (std::abs(q - threshold) <= band) continue;
    ++considered;
    const Vec et = svec(e + t * sub.x);
    bool left = oracle.is_interior(et);
    if (left) left = dual_cone_member(QuadCone(oracle, et, beta), s_vec) == Membership::Interior;
    const bool right = q < threshold;
    if (left != right) ++r.failures;
    r.max_abs_err = std::max(r.max_abs_err, std::abs(q - threshold));
  }
  r.samples = considered;
  r.max_rel_err = considered > 0 ? static_cast<double>(r.failures) / considered : 0.0;
  finalize(r);
  return r;
}

CheckReport decrease_bound_check(const Mat& e, const Mat& x, double alpha,
                                 const std::vector<double>& t_grid) {
  const int n = static_cast<int>(e.rows());
  const DetBarrierOracle oracle(n);
  const double x_norm = std::sqrt(local_inner(oracle, svec(e), svec(x), svec(x)));
  if (!(x_norm > 0.0)) throw Error(ErrorKind::DomainError, "X must be nonzero");
  const Mat s = normalized_dual(e, x, alpha);
  const double na = n - alpha * alpha;

  CheckReport r;
  r.name = "decrease_bound";
  r.tolerance = 0.0;
  r.worst_margin = std::numeric_limits<double>::infinity();
  for (const double t : t_grid) {
    const double q = trace_q(e, x, s, t);
    const double bound = (1.0 - 2.0 * t * ((1.0 - alpha) / na) * x_norm * (alpha - t * x_norm)) / na;
    const double margin = bound - q;
    r.worst_margin = std::min(r.worst_margin, margin);
    if (!(margin > 0.0)) ++r.failures;
    ++r.samples;
  }
  r.max_rel_err = r.samples > 0 ? static_cast<double>(r.failures) / r.samples : 0.0;
  r.max_abs_err = std::max(0.0, -r.worst_margin);
  finalize(r);
  return r;
}

CheckReport fd_check(const BarrierOracle& oracle, const Vec& x, double h, double tol) {
  const int d = oracle.dim();
  require_dim(x.size(), d, "fd_check");
  if (!oracle.is_interior(x)) throw Error(ErrorKind::NotInterior, "fd_check point is not interior");
  if (h <= 0.0) h = 1e-5 * (1.0 + x.norm());

  const Vec g = oracle.gradient(x);
  const Mat hess = kernels::hessian_matrix(oracle, x);
  Vec g_fd(d);
  Mat h_fd(d, d);
  kernels::parallel_for(d, [&](int i) {
    const Vec step = h * Vec::Unit(d, i);
    g_fd(i) = (oracle.value(x + step) - oracle.value(x - step)) / (2.0 * h);
    h_fd.col(i) = (oracle.gradient(x + step) - oracle.gradient(x - step)) / (2.0 * h);
  });

  CheckReport r;
  r.name = "finite_difference";
  r.tolerance = tol;
  r.samples = 2 * d;
  const double g_scale = std::max(g.lpNorm<Eigen::Infinity>(), std::numeric_limits<double>::min());
  const double h_scale = std::max(hess.lpNorm<Eigen::Infinity>(), std::numeric_limits<double>::min());
  const double g_err = (g_fd - g).lpNorm<Eigen::Infinity>();
  const double h_err = (h_fd - hess).lpNorm<Eigen::Infinity>();
  r.max_abs_err = std::max(g_err, h_err);
  r.max_rel_err = std::max(g_err / g_scale, h_err / h_scale);
  finalize(r);
  return r;
}

std::vector<double> conjecture_curve(const BarrierOracle& oracle, const Vec& e, const Vec& x,
                                     const Vec& s, const std::vector<double>& t_grid) {
  const double denom = e.dot(s);
  if (denom == 0.0) throw Error(ErrorKind::DomainError, "<e, s> vanishes");
  std::vector<double> out(t_grid.size(), std::numeric_limits<double>::quiet_NaN());
  kernels::parallel_for(static_cast<int>(t_grid.size()), [&](int i) {
    const Vec et = e + t_grid[i] * x;
    if (!oracle.is_interior(et)) return;
    out[i] = s.dot(oracle.hessian_solve(et, s)) / (denom * denom);
  });
  return out;
}

}  // namespace affscale
