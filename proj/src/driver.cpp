#include "affscale/driver.hpp"

#include <chrono>
#include <cmath>

namespace affscale {

const char* to_string(StepMode m) {
  switch (m) {
    case StepMode::QTildeMinimizer: return "qtilde";
    case StepMode::FixedHalfAlpha: return "fixed";
  }
  return "?";
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::MaxIters: return "MaxIters";
    case SolveStatus::NotInSwath: return "NotInSwath";
    case SolveStatus::NumericalFailure: return "NumericalFailure";
  }
  return "?";
}

void SolverConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::DomainError, "alpha must lie in (0, 1)");
  if (!(gap_tol > 0.0)) throw Error(ErrorKind::DomainError, "gap_tol must be positive");
  if (max_iters < 0) throw Error(ErrorKind::DomainError, "max_iters must be >= 0");
}

StepPoly step_poly_coeffs(const PowerSums& p, double alpha, int degree) {
  if (!(p.p1 > 0.0)) throw Error(ErrorKind::DomainError, "p1 must be positive");
  const double a2 = alpha * alpha;
  StepPoly q;
  q.a = p.p1 * p.p1 * p.p2 - 2.0 * a2 * p.p1 * p.p3 + a2 * a2 * p.p4;
  q.b = 2.0 * a2 * a2 * p.p3 - 2.0 * p.p1 * p.p1 * p.p1;
  q.c = (degree - a2) * p.p1 * p.p1;
  if (!(q.a > 0.0)) throw Error(ErrorKind::ConvexityViolation, "step polynomial is not strictly convex");
  return q;
}

double step_length(double a, double b, double alpha, double x_norm_e, StepMode mode) {
  if (!(x_norm_e > 0.0)) throw Error(ErrorKind::DomainError, "||x_e||_e must be positive");
  const double floor = 0.5 * alpha / x_norm_e;
  if (mode == StepMode::FixedHalfAlpha) return floor;
  if (!(a > 0.0)) throw Error(ErrorKind::ConvexityViolation, "step polynomial is not strictly convex");
  const double t = -b / (2.0 * a);
  if (!(t > 0.0) || !(t > floor)) {
    throw Error(ErrorKind::StepBoundViolation,
                "minimizer " + std::to_string(t) + " not beyond " + std::to_string(floor));
  }
  return t;
}

Vec next_iterate(const BarrierOracle& oracle, const Vec& e, const Vec& x, double t) {
  if (!(t > 0.0)) throw Error(ErrorKind::DomainError, "step must be positive");
  Vec out = (e + t * x) / (1.0 + t);
  if (!oracle.is_interior(out)) throw Error(ErrorKind::NotInterior, "next iterate left the cone");
  return out;
}

double duality_gap(const Vec& c, const Vec& e, const Vec& x) { return c.dot(e - x); }

std::vector<double> SolveResult::gaps() const {
  std::vector<double> out;
  out.reserve(trace.size() + 1);
  for (const auto& r : trace) out.push_back(r.gap);
  if (!trace.empty() || status == SolveStatus::Converged) out.push_back(final_gap);
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

SolveStatus status_of(SubproblemStatus s) {
  return s == SubproblemStatus::NotInSwath ? SolveStatus::NotInSwath : SolveStatus::NumericalFailure;
}

// Relative slack for comparisons between consecutive objective values.
double slack(double a, double b) { return 1e-12 * (1.0 + std::abs(a) + std::abs(b)); }

// Loss of conditioning inside the subproblem ends the run with a status.
SubproblemSolution guarded_solve(const BarrierOracle& oracle, const Mat& a, const Vec& b,
                                 const Vec& c, const Vec& e, double alpha) {
  try {
    return solve_qcp(oracle, a, b, c, e, alpha);
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::DimensionMismatch || err.kind() == ErrorKind::DomainError) throw;
    SubproblemSolution out;
    out.status = SubproblemStatus::NumericalFailure;
    out.detail = err.what();
    return out;
  }
}

}  // namespace

SolveResult run(const BarrierOracle& oracle, const Mat& a, const Vec& b, const Vec& c,
                const Vec& e0, const SolverConfig& config) {
  config.validate();
  const ScheduleConstants sched = schedule_constants(config.alpha, oracle.degree());
  const bool check_ratio = config.step_mode == StepMode::QTildeMinimizer;

  SolveResult result;
  Vec e = e0;
  SubproblemSolution sol = guarded_solve(oracle, a, b, c, e, config.alpha);
  if (!sol.solved()) {
    result.status = status_of(sol.status);
    result.message = "start point: " + sol.detail;
    result.final_e = e;
    return result;
  }
  result.initial_gap = sol.gap;
  const double target = config.gap_tol * sol.gap;
  double prev_ratio = -1.0;

  auto finish = [&](SolveStatus status, std::string message) {
    result.status = status;
    result.message = std::move(message);
    result.final_e = e;
    result.final_x = sol.x;
    result.final_y = sol.y;
    result.final_s = sol.s;
    result.final_gap = sol.gap;
    return result;
  };

  for (int k = 0;; ++k) {
    if (sol.gap <= target) return finish(SolveStatus::Converged, "");
    if (k >= config.max_iters) return finish(SolveStatus::MaxIters, "iteration limit reached");

    const auto start = Clock::now();
    IterationRecord rec;
    rec.k = k;
    rec.alpha = config.alpha;
    rec.gap = sol.gap;
    rec.x_norm_e = sol.x_norm_e;
    rec.primal_obj = c.dot(e);
    rec.dual_obj = b.dot(sol.y);

    Vec e_next;
    try {
      rec.qtilde = step_poly_coeffs(oracle.direction_power_sums(e, sol.x), config.alpha, oracle.degree());
      rec.t = step_length(rec.qtilde.a, rec.qtilde.b, config.alpha, sol.x_norm_e, config.step_mode);
      e_next = next_iterate(oracle, e, sol.x, rec.t);
    } catch (const Error& err) {
      rec.wallclock = std::chrono::duration<double>(Clock::now() - start).count();
      result.trace.push_back(rec);
      return finish(SolveStatus::NumericalFailure, err.what());
    }

    SubproblemSolution next = guarded_solve(oracle, a, b, c, e_next, config.alpha);

    if (!(c.dot(e_next) < rec.primal_obj)) ++result.violations.primal_monotone;
    // Cones are invariant under positive scaling; s_e / gap keeps the band meaningful.
    if (dual_cone_member(QuadCone(oracle, e_next, sched.beta), sol.s / sol.gap) != Membership::Interior) {
      ++result.violations.dual_carry;
    }
    rec.wallclock = std::chrono::duration<double>(Clock::now() - start).count();
    result.trace.push_back(rec);

    if (!next.solved()) {
      if (next.status == SubproblemStatus::NotInSwath) ++result.violations.swath;
      e = e_next;
      return finish(status_of(next.status), "iterate " + std::to_string(k + 1) + ": " + next.detail);
    }
    if (b.dot(next.y) < rec.dual_obj - slack(b.dot(next.y), rec.dual_obj)) {
      ++result.violations.dual_monotone;
    }
    const double ratio = next.gap / sol.gap;
    if (check_ratio && prev_ratio >= 0.0 && std::min(prev_ratio, ratio) > sched.ratio_bound + 1e-9) {
      ++result.violations.ratio_bound;
    }
    prev_ratio = ratio;
    e = std::move(e_next);
    sol = std::move(next);
  }
}

int alpha_reduction_bound(double alpha0, double alpha) {
  const double v = (2.0 / std::log(8.0 / 7.0)) * std::log(alpha0 / alpha) +
                   (1.0 / std::log(9.0 / 8.0)) * std::log((1.0 - alpha) / (1.0 - alpha0));
  return static_cast<int>(std::ceil(v));
}

AlphaReductionResult alpha_reduction_run(const BarrierOracle& oracle, const Mat& a,
                                         const Vec& b, const Vec& c, const Vec& e0,
                                         double alpha0, double alpha_target) {
  if (!(alpha_target > 0.0 && alpha_target < alpha0 && alpha0 < 1.0)) {
    throw Error(ErrorKind::DomainError, "need 0 < target < alpha0 < 1");
  }
  AlphaReductionResult out;
  out.e = e0;
  out.bound = alpha_reduction_bound(alpha0, alpha_target);
  double alpha = alpha0;
  while (alpha > alpha_target) {
    const SubproblemSolution sol = solve_qcp(oracle, a, b, c, out.e, alpha);
    if (!sol.solved()) {
      throw Error(sol.status == SubproblemStatus::NotInSwath ? ErrorKind::NotInSwath
                                                             : ErrorKind::NumericalFailure,
                  "alpha " + std::to_string(alpha) + ": " + sol.detail);
    }
    const double t = 0.5 * alpha / sol.x_norm_e;
    try {
      out.e = next_iterate(oracle, out.e, sol.x, t);
    } catch (const Error& err) {
      throw Error(ErrorKind::NumericalFailure, err.what());
    }
    alpha *= std::sqrt((1.0 + alpha) / 2.0);
    ++out.iterations;
  }
  out.final_alpha = alpha;
  return out;
}

}  // namespace affscale
