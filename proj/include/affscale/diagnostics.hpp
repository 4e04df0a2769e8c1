#ifndef AFFSCALE_DIAGNOSTICS_HPP
#define AFFSCALE_DIAGNOSTICS_HPP

#include <string>
#include <vector>

#include "affscale/driver.hpp"
#include "affscale/sdp.hpp"

namespace affscale {

/// pass == (max_rel_err <= tolerance). Counting checks report the fraction
/// of failing samples as max_rel_err against a tolerance of zero.
struct CheckReport {
  std::string name;
  double max_abs_err = 0.0;
  double max_rel_err = 0.0;
  int samples = 0;
  int failures = 0;
  double tolerance = 0.0;
  double worst_margin = 0.0;  // decrease_bound_check only
  bool pass = false;
};

/// tr(((E + t X) S)^2).
double trace_q(const Mat& e, const Mat& x, const Mat& s, double t);

/// S / gap scaled so that tr(E S) = 1, built from a boundary point X:
/// H(E)[E - alpha^2 / <E,X>_E X] / (n - alpha^2).
Mat normalized_dual(const Mat& e, const Mat& x, double alpha);

/// trace_q with S = s_e / gap against q~(t) / ((n - alpha^2) p1)^2 on
/// t_samples points spanning [0, 2 t_E].
CheckReport q_scaling_check(const SdpInstance& sdp, const Mat& e, double alpha, int t_samples,
                            double tol = 1e-8);

/// Compares (E + tX pd and S in int K_{E+tX}(beta)^*) with q(t) < 1/(n - beta^2)
/// over t_grid, skipping points within `band` of the threshold.
CheckReport membership_equiv_check(const SdpInstance& sdp, const Mat& e, double alpha,
                                   double beta, const std::vector<double>& t_grid,
                                   double band = 1e-9);

/// q(t) < (1 - 2t (1-alpha)/(n-alpha^2) ||X||_E (alpha - t ||X||_E)) / (n - alpha^2)
/// strictly at every grid point. X must lie on the boundary of K_E(alpha).
CheckReport decrease_bound_check(const Mat& e, const Mat& x, double alpha,
                                 const std::vector<double>& t_grid);

/// Central differences of value and gradient along coordinate directions.
/// h <= 0 selects 1e-5 (1 + ||x||).
CheckReport fd_check(const BarrierOracle& oracle, const Vec& x, double h = 0.0,
                     double tol = 1e-5);

/// <s, H(e + t x)^{-1} s> / <e, s>^2 per grid point; NaN where e + t x is not
/// interior. DomainError if <e, s> = 0.
std::vector<double> conjecture_curve(const BarrierOracle& oracle, const Vec& e, const Vec& x,
                                     const Vec& s, const std::vector<double>& t_grid);

}  // namespace affscale

#endif  // AFFSCALE_DIAGNOSTICS_HPP
