#ifndef AFFSCALE_DRIVER_HPP
#define AFFSCALE_DRIVER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "affscale/hyperbolic.hpp"
#include "affscale/qcp.hpp"

namespace affscale {

enum class StepMode { QTildeMinimizer, FixedHalfAlpha };
enum class SolveStatus { Converged, MaxIters, NotInSwath, NumericalFailure };

const char* to_string(StepMode m);
const char* to_string(SolveStatus s);

struct SolverConfig {
  double alpha = 0.5;
  double gap_tol = 1e-8;  // relative to the initial gap
  int max_iters = 500;
  StepMode step_mode = StepMode::QTildeMinimizer;
  std::uint64_t seed = 0;

  void validate() const;
};

/// q~(t) = a t^2 + b t + c.
struct StepPoly {
  double a = 0.0, b = 0.0, c = 0.0;
  double operator()(double t) const { return (a * t + b) * t + c; }
};

/// Coefficients from the power sums of the eigenvalues of x_e in direction e.
/// DomainError if p1 <= 0, ConvexityViolation if a <= 0.
StepPoly step_poly_coeffs(const PowerSums& p, double alpha, int degree);

/// -b / 2a or alpha / (2 ||x_e||_e); StepBoundViolation if the minimizer is
/// not strictly beyond alpha / (2 ||x_e||_e), or t <= 0 in either mode.
double step_length(double a, double b, double alpha, double x_norm_e, StepMode mode);

/// (e + t x) / (1 + t); NotInterior if the oracle rejects the result.
Vec next_iterate(const BarrierOracle& oracle, const Vec& e, const Vec& x, double t);

/// <c, e - x>.
double duality_gap(const Vec& c, const Vec& e, const Vec& x);

struct IterationRecord {
  int k = 0;
  double alpha = 0.0;
  double gap = 0.0;
  double t = 0.0;
  double x_norm_e = 0.0;
  double primal_obj = 0.0;
  double dual_obj = 0.0;
  StepPoly qtilde;
  double wallclock = 0.0;  // seconds
};

struct ViolationCounts {
  int primal_monotone = 0;
  int dual_monotone = 0;
  int ratio_bound = 0;
  int dual_carry = 0;
  int swath = 0;

  int total() const { return primal_monotone + dual_monotone + ratio_bound + dual_carry + swath; }
};

struct SolveResult {
  SolveStatus status = SolveStatus::NumericalFailure;
  std::string message;
  std::vector<IterationRecord> trace;
  double initial_gap = 0.0;
  double final_gap = 0.0;
  Vec final_e, final_x, final_y, final_s;
  ViolationCounts violations;

  /// gap_0, ..., gap_K including the gap at the final iterate.
  std::vector<double> gaps() const;
};

/// The affine-scaling iteration from e0. Guarantees are checked every
/// iteration and counted in `violations`; the run only aborts on loss of
/// interiority, a failed subproblem, or a degenerate step.
SolveResult run(const BarrierOracle& oracle, const Mat& a, const Vec& b, const Vec& c,
                const Vec& e0, const SolverConfig& config);

struct AlphaReductionResult {
  Vec e;
  int iterations = 0;
  int bound = 0;
  double final_alpha = 0.0;
};

/// ceil((2 / ln(8/7)) ln(alpha0 / alpha) + (1 / ln(9/8)) ln((1 - alpha) / (1 - alpha0))).
int alpha_reduction_bound(double alpha0, double alpha);

/// Fixed-step updates with alpha_{i+1} = alpha_i sqrt((1 + alpha_i) / 2) until
/// alpha_i <= alpha_target. NotInSwath / NumericalFailure are thrown.
AlphaReductionResult alpha_reduction_run(const BarrierOracle& oracle, const Mat& a,
                                         const Vec& b, const Vec& c, const Vec& e0,
                                         double alpha0, double alpha_target);

}  // namespace affscale

#endif  // AFFSCALE_DRIVER_HPP
