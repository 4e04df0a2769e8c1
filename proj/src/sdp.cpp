#include "affscale/sdp.hpp"

#include <cmath>

namespace affscale {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

Mat solve_lower(const Mat& l, const Mat& rhs) {
  return l.triangularView<Eigen::Lower>().solve(rhs);
}

}  // namespace

int svec_dim(int order) { return order * (order + 1) / 2; }

int svec_order(int d) {
  const int n = static_cast<int>(std::lround((std::sqrt(8.0 * d + 1.0) - 1.0) / 2.0));
  if (n < 1 || svec_dim(n) != d) {
    throw Error(ErrorKind::DimensionMismatch,
                "dimension " + std::to_string(d) + " is not n(n+1)/2");
  }
  return n;
}

Vec svec(const Mat& m) {
  const int n = static_cast<int>(m.rows());
  require_dim(m.cols(), n, "svec square");
  Vec v(svec_dim(n));
  int k = 0;
  for (int i = 0; i < n; ++i) {
    v(k++) = m(i, i);
    for (int j = i + 1; j < n; ++j) {
      v(k++) = kSqrt2 * 0.5 * (m(i, j) + m(j, i));
    }
  }
  return v;
}

Mat smat(const Vec& v) {
  const int n = svec_order(static_cast<int>(v.size()));
  Mat m(n, n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    m(i, i) = v(k++);
    for (int j = i + 1; j < n; ++j) {
      m(i, j) = m(j, i) = v(k++) / kSqrt2;
    }
  }
  return m;
}

Mat SdpInstance::constraint_matrix() const {
  Mat a(num_constraints(), svec_dim(order()));
  for (int i = 0; i < num_constraints(); ++i) {
    a.row(i) = svec(constraints[i]).transpose();
  }
  return a;
}

Vec SdpInstance::apply(const Mat& x) const {
  Vec out(num_constraints());
  for (int i = 0; i < num_constraints(); ++i) {
    out(i) = (constraints[i].cwiseProduct(x)).sum();
  }
  return out;
}

Mat SdpInstance::apply_adjoint(const Vec& y) const {
  require_dim(y.size(), num_constraints(), "apply_adjoint");
  const Eigen::Index n = constraints.empty() ? order() : constraints.front().rows();
  Mat out = Mat::Zero(n, n);
  for (int i = 0; i < num_constraints(); ++i) out += y(i) * constraints[i];
  return out;
}

void SdpInstance::validate() const {
  if (order() < 2) throw Error(ErrorKind::InvariantViolation, "order must be >= 2");
  require_dim(rhs.size(), num_constraints(), "rhs length");
  for (const auto& a : constraints) {
    require_dim(a.rows(), order(), "constraint order");
    require_dim(a.cols(), order(), "constraint order");
  }
  if (num_constraints() < 1) {
    throw Error(ErrorKind::InvariantViolation, "at least one constraint is required");
  }
  if (rhs.lpNorm<Eigen::Infinity>() == 0.0) {
    throw Error(ErrorKind::InvariantViolation, "b must be nonzero");
  }
  const Mat a = constraint_matrix();
  Eigen::ColPivHouseholderQR<Mat> qr(a.transpose());
  qr.setThreshold(1e-12);
  if (qr.rank() < num_constraints()) {
    throw Error(ErrorKind::InvariantViolation, "constraint matrices are linearly dependent");
  }
  Mat with_c(a.rows() + 1, a.cols());
  with_c << a, objective_vector().transpose();
  Eigen::ColPivHouseholderQR<Mat> qrc(with_c.transpose());
  qrc.setThreshold(1e-12);
  if (qrc.rank() <= num_constraints()) {
    throw Error(ErrorKind::InvariantViolation, "C lies in the span of the constraints");
  }
}

Eigen::LLT<Mat> checked_cholesky(const Mat& e) {
  if (e.rows() != e.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "matrix not square");
  }
  Eigen::LLT<Mat> llt(e);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorKind::NotInterior, "matrix is not positive definite");
  }
  const double scale = e.diagonal().cwiseAbs().maxCoeff();
  const Mat& l = llt.matrixLLT();
  const double min_pivot = l.diagonal().cwiseAbs2().minCoeff();
  if (!(min_pivot > 1e-14 * scale)) {
    throw Error(ErrorKind::NotInterior, "Cholesky pivot below threshold");
  }
  return llt;
}

DetBarrierOracle::DetBarrierOracle(int order) : order_(order) {
  if (order < 2) throw Error(ErrorKind::DomainError, "order must be >= 2");
}

bool DetBarrierOracle::is_interior(const Vec& e) const {
  if (e.size() != dim() || !e.allFinite()) return false;
  try {
    checked_cholesky(smat(e));
    return true;
  } catch (const Error&) {
    return false;
  }
}

double DetBarrierOracle::value(const Vec& e) const {
  require_dim(e.size(), dim(), "value");
  const auto llt = checked_cholesky(smat(e));
  return -2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

Vec DetBarrierOracle::gradient(const Vec& e) const {
  require_dim(e.size(), dim(), "gradient");
  const auto llt = checked_cholesky(smat(e));
  return -svec(llt.solve(Mat::Identity(order_, order_)));
}

Vec DetBarrierOracle::hessian_apply(const Vec& e, const Vec& v) const {
  require_dim(e.size(), dim(), "hessian_apply e");
  require_dim(v.size(), dim(), "hessian_apply v");
  const auto llt = checked_cholesky(smat(e));
  const Mat left = llt.solve(smat(v));            // E^{-1} V
  const Mat both = llt.solve(left.transpose());   // E^{-1} V E^{-1}
  return svec(both);
}

Vec DetBarrierOracle::hessian_solve(const Vec& e, const Vec& w) const {
  require_dim(e.size(), dim(), "hessian_solve e");
  require_dim(w.size(), dim(), "hessian_solve w");
  const Mat em = smat(e);
  checked_cholesky(em);
  return svec(em * smat(w) * em);
}

Vec DetBarrierOracle::direction_eigs(const Vec& e, const Vec& x) const {
  require_dim(x.size(), dim(), "direction_eigs");
  return direction_eigs_sdp(smat(e), smat(x));
}

std::unique_ptr<LocalFrame> DetBarrierOracle::local_frame(const Vec& e) const {
  require_dim(e.size(), dim(), "local_frame");
  return std::make_unique<CongruenceFrame>(smat(e));
}

CongruenceFrame::CongruenceFrame(const Mat& e)
    : lower_(checked_cholesky(e).matrixL()) {}

Vec CongruenceFrame::to_local(const Vec& x) const {
  const Mat half = solve_lower(lower_, smat(x));          // L^{-1} X
  return svec(solve_lower(lower_, half.transpose()));     // L^{-1} X L^{-T}
}

Vec CongruenceFrame::from_local(const Vec& z) const {
  return svec(lower_ * smat(z) * lower_.transpose());
}

Vec CongruenceFrame::dual_to_local(const Vec& s) const {
  return svec(lower_.transpose() * smat(s) * lower_);
}

Vec CongruenceFrame::dual_from_local(const Vec& w) const {
  const Mat upper = lower_.transpose();
  const Mat half = upper.triangularView<Eigen::Upper>().solve(smat(w));
  return svec(upper.triangularView<Eigen::Upper>().solve(half.transpose()));
}

Vec CongruenceFrame::center() const {
  return svec(Mat::Identity(lower_.rows(), lower_.rows()));
}

Vec direction_eigs_sdp(const Mat& e, const Mat& x) {
  require_dim(x.rows(), e.rows(), "direction_eigs_sdp");
  const Mat l = checked_cholesky(e).matrixL();
  const Mat half = solve_lower(l, x);
  Mat z = solve_lower(l, half.transpose());
  z = 0.5 * (z + z.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> eig(z, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorKind::NumericalFailure, "symmetric eigensolve failed");
  }
  return eig.eigenvalues();
}

}  // namespace affscale
