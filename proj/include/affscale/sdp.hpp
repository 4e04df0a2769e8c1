#ifndef AFFSCALE_SDP_HPP
#define AFFSCALE_SDP_HPP

#include <vector>

#include "affscale/conic_core.hpp"

namespace affscale {

// Scaled symmetric vectorization: upper triangle row by row, off-diagonal
// entries multiplied by sqrt(2), so svec(U).dot(svec(V)) == tr(U V).
int svec_dim(int order);
/// Inverse of svec_dim; throws DimensionMismatch if d is not triangular.
int svec_order(int d);
Vec svec(const Mat& m);
Mat smat(const Vec& v);

/// min tr(C X) s.t. tr(A_i X) = b_i, X psd.
struct SdpInstance {
  Mat objective;
  std::vector<Mat> constraints;
  Vec rhs;
  /// SDPA block structure the dense matrices were concatenated from.
  std::vector<int> block_sizes;

  int order() const { return static_cast<int>(objective.rows()); }
  int num_constraints() const { return static_cast<int>(constraints.size()); }

  /// m x d matrix whose rows are svec(A_i).
  Mat constraint_matrix() const;
  Vec objective_vector() const { return svec(objective); }
  Vec apply(const Mat& x) const;                // A(X)
  Mat apply_adjoint(const Vec& y) const;        // sum_i y_i A_i

  /// Throws InvariantViolation unless b != 0, the A_i are independent and
  /// C is not in their span.
  void validate() const;
};

/// Cholesky L of E with a relative pivot threshold; NotInterior otherwise.
Eigen::LLT<Mat> checked_cholesky(const Mat& e);

/// -ln det X on the svec coordinates of S^n.
class DetBarrierOracle final : public BarrierOracle {
 public:
  explicit DetBarrierOracle(int order);

  int order() const { return order_; }
  int dim() const override { return svec_dim(order_); }
  int degree() const override { return order_; }

  bool is_interior(const Vec& e) const override;
  double value(const Vec& e) const override;
  Vec gradient(const Vec& e) const override;
  Vec hessian_apply(const Vec& e, const Vec& v) const override;
  Vec hessian_solve(const Vec& e, const Vec& w) const override;
  Vec direction_eigs(const Vec& e, const Vec& x) const override;
  std::unique_ptr<LocalFrame> local_frame(const Vec& e) const override;

 private:
  int order_;
};

/// Congruence frame X -> L^{-1} X L^{-T} for E = L L^T.
class CongruenceFrame final : public LocalFrame {
 public:
  explicit CongruenceFrame(const Mat& e);

  Vec to_local(const Vec& x) const override;
  Vec from_local(const Vec& z) const override;
  Vec dual_to_local(const Vec& s) const override;
  Vec dual_from_local(const Vec& w) const override;
  Vec center() const override;

  const Mat& factor() const { return lower_; }

 private:
  Mat lower_;
};

/// Eigenvalues of E^{-1/2} X E^{-1/2}, ascending.
Vec direction_eigs_sdp(const Mat& e, const Mat& x);

}  // namespace affscale

#endif  // AFFSCALE_SDP_HPP
