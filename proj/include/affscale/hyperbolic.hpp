#ifndef AFFSCALE_HYPERBOLIC_HPP
#define AFFSCALE_HYPERBOLIC_HPP

#include <complex>
#include <cstdint>
#include <memory>
#include <string>

#include "affscale/conic_core.hpp"

namespace affscale {

enum class FamilyTag { Product, SecondOrder, Determinant, ElementarySymmetric };

/// Closed enumeration of hyperbolic polynomials.
///   Product              p(x) = x_1 ... x_d                 n = d
///   SecondOrder          p(x) = x_d^2 - (x_1^2 + ... )      n = 2
///   Determinant          p(x) = det(smat(x))                d = n(n+1)/2
///   ElementarySymmetric  p(x) = e_k(x_1, ..., x_d)          n = k
struct HpFamily {
  FamilyTag tag = FamilyTag::Product;
  int dim = 0;
  int degree = 0;

  static HpFamily product(int d);
  static HpFamily second_order(int d);
  static HpFamily determinant(int order);
  static HpFamily elementary_symmetric(int d, int k);

  std::string name() const;
  /// Inverse of name() plus parameters; DomainError on unknown names.
  static HpFamily from_name(const std::string& name, int dim, int k);
};

/// The family's reference interior direction (ones, last unit vector, svec(I)).
Vec canonical_direction(const HpFamily& family);

double eval_p(const HpFamily& family, const Vec& x);

/// e_0(x), ..., e_k(x) by the prefix recurrence.
Vec elementary_symmetric_all(const Eigen::Ref<const Vec>& x, int k);

/// Family-specific test for the closed cone (coordinates >= 0, x_d >= ||x_bar||,
/// psd, e_1..e_k >= 0), each within -tol * (1 + ||x||).
bool native_cone_member(const HpFamily& family, const Vec& x, double tol = 1e-12);

std::unique_ptr<BarrierOracle> hp_barrier_oracle(const HpFamily& family);

/// Coefficients a_0..a_n (ascending) of t -> p(x + t e).
Vec restricted_coeffs(const HpFamily& family, const Vec& x, const Vec& e);

/// Complex roots of sum_i a_i t^i via a balanced companion matrix.
Eigen::VectorXcd polynomial_roots(const Vec& coeffs);

inline constexpr double kImagTol = 1e-6;

/// Roots of lambda -> p(lambda e - x), ascending; NonRealEigenvalues if any
/// root has |Im| > tol (1 + |Re|).
Vec direction_eigs_hp(const HpFamily& family, const Vec& x, const Vec& e,
                      double tol = kImagTol);

/// Newton identities applied to e_k = a_{n-k} / a_n; only the top five
/// coefficients are read.
PowerSums power_sums_from_coeffs(const Vec& coeffs);

struct HyperbolicityReport {
  double max_imag_residual = 0.0;
  int failures = 0;
  int trials = 0;
};

HyperbolicityReport hyperbolicity_sample_check(const HpFamily& family, const Vec& e,
                                               int trials, std::uint64_t seed);

/// min <c,x> s.t. A x = b, x in the closed hyperbolicity cone.
struct HpInstance {
  HpFamily family;
  Vec objective;
  Mat constraints;
  Vec rhs;
  Vec start;

  int num_constraints() const { return static_cast<int>(constraints.rows()); }
  /// InvariantViolation on shape, A e0 != b, b = 0, rank or span failures.
  void validate(const BarrierOracle& oracle) const;
};

}  // namespace affscale

#endif  // AFFSCALE_HYPERBOLIC_HPP
