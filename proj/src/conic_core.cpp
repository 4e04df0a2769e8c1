#include "affscale/conic_core.hpp"

#include <cmath>

namespace affscale {

Mat BarrierOracle::hessian_matrix(const Vec& e) const {
  const int d = dim();
  Mat h(d, d);
  for (int j = 0; j < d; ++j) {
    h.col(j) = hessian_apply(e, Vec::Unit(d, j));
  }
  return 0.5 * (h + h.transpose());
}

PowerSums power_sums_from_eigs(const Vec& lambda) {
  PowerSums s;
  for (const double l : lambda) {
    const double l2 = l * l;
    s.p1 += l;
    s.p2 += l2;
    s.p3 += l2 * l;
    s.p4 += l2 * l2;
  }
  return s;
}

PowerSums BarrierOracle::direction_power_sums(const Vec& e, const Vec& x) const {
  return power_sums_from_eigs(direction_eigs(e, x));
}

std::unique_ptr<LocalFrame> BarrierOracle::local_frame(const Vec& e) const {
  return std::make_unique<CholeskyFrame>(hessian_matrix(e), e);
}

CholeskyFrame::CholeskyFrame(const Mat& hessian, const Vec& e) {
  Eigen::LLT<Mat> llt(hessian);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorKind::NotInterior, "Hessian is not positive definite");
  }
  lower_ = llt.matrixL();
  const double scale = hessian.cwiseAbs().maxCoeff();
  const double min_pivot = lower_.diagonal().cwiseAbs2().minCoeff();
  if (!(min_pivot > 1e-12 * scale)) {
    throw Error(ErrorKind::NotInterior, "Hessian pivot below threshold");
  }
  center_ = to_local(e);
}

Vec CholeskyFrame::to_local(const Vec& x) const {
  return lower_.transpose() * x;
}

Vec CholeskyFrame::from_local(const Vec& z) const {
  return lower_.transpose().triangularView<Eigen::Upper>().solve(z);
}

Vec CholeskyFrame::dual_to_local(const Vec& s) const {
  return lower_.triangularView<Eigen::Lower>().solve(s);
}

Vec CholeskyFrame::dual_from_local(const Vec& w) const {
  return lower_ * w;
}

const char* to_string(Membership m) {
  switch (m) {
    case Membership::Interior: return "Interior";
    case Membership::Boundary: return "Boundary";
    case Membership::Outside: return "Outside";
  }
  return "?";
}

double local_inner(const BarrierOracle& oracle, const Vec& e, const Vec& u,
                   const Vec& v) {
  require_dim(u.size(), oracle.dim(), "local_inner u");
  require_dim(v.size(), oracle.dim(), "local_inner v");
  return u.dot(oracle.hessian_apply(e, v));
}

QuadCone::QuadCone(const BarrierOracle& oracle, Vec center, double alpha)
    : oracle_(&oracle), center_(std::move(center)), alpha_(alpha) {
  require_dim(center_.size(), oracle.dim(), "QuadCone center");
  const double n = oracle.degree();
  if (oracle.degree() < 2) {
    throw Error(ErrorKind::DomainError, "cones require degree >= 2");
  }
  if (!(alpha > 0.0) || !(alpha < std::sqrt(n))) {
    throw Error(ErrorKind::DomainError, "alpha must lie in (0, sqrt(n))");
  }
  dual_alpha_ = std::sqrt(n - alpha * alpha);
}

namespace {

Membership classify(const BarrierOracle& oracle, const Vec& e, double alpha,
                    const Vec& x, double tol) {
  const Vec hx = oracle.hessian_apply(e, x);
  const double along = e.dot(hx);
  const double norm = std::sqrt(std::max(0.0, x.dot(hx)));
  const double margin = along - alpha * norm;
  const double band = tol * (1.0 + norm);
  if (margin > band) return Membership::Interior;
  if (margin < -band) return Membership::Outside;
  return Membership::Boundary;
}

}  // namespace

Membership primal_cone_member(const QuadCone& cone, const Vec& x, double tol) {
  require_dim(x.size(), cone.oracle().dim(), "primal_cone_member");
  return classify(cone.oracle(), cone.center(), cone.alpha(), x, tol);
}

Membership dual_cone_member(const QuadCone& cone, const Vec& s, double tol) {
  require_dim(s.size(), cone.oracle().dim(), "dual_cone_member");
  const Vec pre = cone.oracle().hessian_solve(cone.center(), s);
  if (!pre.allFinite()) {
    throw Error(ErrorKind::NumericalFailure, "Hessian solve not finite");
  }
  return classify(cone.oracle(), cone.center(), cone.dual_alpha(), pre, tol);
}

ScheduleConstants schedule_constants(double alpha, int degree) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorKind::DomainError, "alpha must lie in (0, 1)");
  }
  if (degree < 2) {
    throw Error(ErrorKind::DomainError, "degree must be at least 2");
  }
  ScheduleConstants k{};
  k.alpha = alpha;
  k.beta = alpha * std::sqrt((1.0 + alpha) / 2.0);
  k.kappa = alpha * std::sqrt((1.0 - alpha) / 8.0);
  k.ratio_bound = 1.0 - k.kappa / (k.kappa + std::sqrt(double(degree)));
  return k;
}

}  // namespace affscale
