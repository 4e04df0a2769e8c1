#ifndef AFFSCALE_CONIC_CORE_HPP
#define AFFSCALE_CONIC_CORE_HPP

#include <memory>

#include "affscale/types.hpp"

namespace affscale {

/// Linear change of coordinates z = W x at an interior point e with
/// W^T W = H(e), so the local inner product becomes the plain dot product
/// and e maps to a vector of norm sqrt(n).
///
/// Backends with structure (diagonal, Jordan-algebra, congruence) supply a
/// frame whose conditioning tracks sqrt(cond H(e)) rather than cond H(e);
/// the subproblem solver works exclusively in these coordinates.
class LocalFrame {
 public:
  virtual ~LocalFrame() = default;

  virtual Vec to_local(const Vec& x) const = 0;         // W x
  virtual Vec from_local(const Vec& z) const = 0;       // W^{-1} z
  virtual Vec dual_to_local(const Vec& s) const = 0;    // W^{-T} s
  virtual Vec dual_from_local(const Vec& w) const = 0;  // W^T w

  /// W e.
  virtual Vec center() const = 0;
};

struct PowerSums {
  double p1 = 0, p2 = 0, p3 = 0, p4 = 0;
};

/// sum_j lambda_j^k for k = 1..4.
PowerSums power_sums_from_eigs(const Vec& lambda);

/// Barrier f = -ln p of a hyperbolic polynomial p of degree n on a
/// d-dimensional space with the standard dot product.
///
/// All evaluations throw Error{NotInterior} when e is not strictly inside
/// the cone. Implementations hold no mutable state and may be shared across
/// threads.
class BarrierOracle {
 public:
  virtual ~BarrierOracle() = default;

  virtual int dim() const = 0;
  virtual int degree() const = 0;

  virtual bool is_interior(const Vec& e) const = 0;
  virtual double value(const Vec& e) const = 0;
  virtual Vec gradient(const Vec& e) const = 0;
  virtual Vec hessian_apply(const Vec& e, const Vec& v) const = 0;
  virtual Vec hessian_solve(const Vec& e, const Vec& w) const = 0;

  /// Roots of lambda -> p(lambda e - x), ascending.
  virtual Vec direction_eigs(const Vec& e, const Vec& x) const = 0;

  /// Power sums of direction_eigs(e, x); families with clustered roots
  /// override this with a root-free route.
  virtual PowerSums direction_power_sums(const Vec& e, const Vec& x) const;

  /// Defaults to a Cholesky factor of the dense Hessian.
  virtual std::unique_ptr<LocalFrame> local_frame(const Vec& e) const;

  /// Dense d x d Hessian assembled column by column from hessian_apply.
  Mat hessian_matrix(const Vec& e) const;
};

/// Frame built from H(e) = L L^T, W = L^T.
class CholeskyFrame final : public LocalFrame {
 public:
  CholeskyFrame(const Mat& hessian, const Vec& e);

  Vec to_local(const Vec& x) const override;
  Vec from_local(const Vec& z) const override;
  Vec dual_to_local(const Vec& s) const override;
  Vec dual_from_local(const Vec& w) const override;
  Vec center() const override { return center_; }

 private:
  Mat lower_;
  Vec center_;
};

enum class Membership { Interior, Boundary, Outside };

const char* to_string(Membership m);

inline constexpr double kMembershipTol = 1e-9;

/// <u, H(e) v>.
double local_inner(const BarrierOracle& oracle, const Vec& e, const Vec& u,
                   const Vec& v);

/// Circular cone K_e(alpha) = { x : <e,x>_e >= alpha ||x||_e } for
/// 0 < alpha < sqrt(n). Holds a non-owning reference to the oracle.
class QuadCone {
 public:
  QuadCone(const BarrierOracle& oracle, Vec center, double alpha);

  const BarrierOracle& oracle() const { return *oracle_; }
  const Vec& center() const { return center_; }
  double alpha() const { return alpha_; }

  /// sqrt(n - alpha^2), the parameter of the dual cone in the local metric.
  double dual_alpha() const { return dual_alpha_; }

 private:
  const BarrierOracle* oracle_;
  Vec center_;
  double alpha_;
  double dual_alpha_;
};

/// Sign of <e,x>_e - alpha ||x||_e against the band tol * (1 + ||x||_e).
Membership primal_cone_member(const QuadCone& cone, const Vec& x,
                              double tol = kMembershipTol);

/// Membership of s in K_e(alpha)^* (dual w.r.t. the ambient dot product),
/// decided as H(e)^{-1} s against K_e(sqrt(n - alpha^2)).
Membership dual_cone_member(const QuadCone& cone, const Vec& s,
                            double tol = kMembershipTol);

struct ScheduleConstants {
  double alpha;
  double beta;         // alpha sqrt((1 + alpha) / 2)
  double kappa;        // alpha sqrt((1 - alpha) / 8)
  double ratio_bound;  // 1 - kappa / (kappa + sqrt(n))
};

ScheduleConstants schedule_constants(double alpha, int degree);

}  // namespace affscale

#endif  // AFFSCALE_CONIC_CORE_HPP
