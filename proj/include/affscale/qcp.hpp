#ifndef AFFSCALE_QCP_HPP
#define AFFSCALE_QCP_HPP

#include <string>

#include "affscale/conic_core.hpp"

namespace affscale {

enum class SubproblemStatus { Solved, NotInSwath, NumericalFailure };

const char* to_string(SubproblemStatus s);

/// Optimum of  min <c,x>  s.t.  A x = b,  x in K_e(alpha)  and its dual.
struct SubproblemSolution {
  Vec x;                 // x_e, on the boundary of K_e(alpha)
  Vec y;                 // y_e
  Vec s;                 // s_e = c - A^T y_e
  double lambda = 0.0;   // multiplier of the first-order system (< 0 at the minimizer)
  double gap = 0.0;      // <c, e - x_e>
  double x_norm_e = 0.0; // ||x_e||_e
  SubproblemStatus status = SubproblemStatus::NumericalFailure;
  std::string detail;

  bool solved() const { return status == SubproblemStatus::Solved; }
};

struct FirstOrderSystem {
  Mat matrix;  // (m + d) x (d + m + 1), unknowns (x, y, lambda)
  Vec rhs;     // (A e, 0)
};

/// Ambient-coordinate form of the linear first-order conditions
///   A x = b,   lambda c + A^T y + <g(e),x> g(e) - alpha^2 H(e) x = 0
/// with b taken as A e. Reference assembly; solve_qcp works in a local frame.
FirstOrderSystem assemble_first_order_system(const BarrierOracle& oracle, const Mat& a,
                                             const Vec& c, const Vec& e, double alpha);

/// Solves the quadratic-cone relaxation at e. Throws NotInterior if e is
/// not interior and DimensionMismatch on bad shapes; everything else is
/// reported through status.
SubproblemSolution solve_qcp(const BarrierOracle& oracle, const Mat& a, const Vec& b,
                             const Vec& c, const Vec& e, double alpha);

bool in_swath(const BarrierOracle& oracle, const Mat& a, const Vec& b, const Vec& c,
              const Vec& e, double alpha);

}  // namespace affscale

#endif  // AFFSCALE_QCP_HPP
