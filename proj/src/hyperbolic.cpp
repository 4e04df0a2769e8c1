#include "affscale/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "affscale/kernels.hpp"
#include "affscale/sdp.hpp"

namespace affscale {

HpFamily HpFamily::product(int d) {
  if (d < 2) throw Error(ErrorKind::DomainError, "product family needs d >= 2");
  return {FamilyTag::Product, d, d};
}

HpFamily HpFamily::second_order(int d) {
  if (d < 2) throw Error(ErrorKind::DomainError, "second-order family needs d >= 2");
  return {FamilyTag::SecondOrder, d, 2};
}

HpFamily HpFamily::determinant(int order) {
  if (order < 2) throw Error(ErrorKind::DomainError, "determinant family needs order >= 2");
  return {FamilyTag::Determinant, svec_dim(order), order};
}

HpFamily HpFamily::elementary_symmetric(int d, int k) {
  if (k < 2 || k > d) {
    throw Error(ErrorKind::DomainError, "elementary symmetric family needs 2 <= k <= d");
  }
  return {FamilyTag::ElementarySymmetric, d, k};
}

std::string HpFamily::name() const {
  switch (tag) {
    case FamilyTag::Product: return "product";
    case FamilyTag::SecondOrder: return "second_order";
    case FamilyTag::Determinant: return "determinant";
    case FamilyTag::ElementarySymmetric: return "elementary_symmetric";
  }
  return "?";
}

HpFamily HpFamily::from_name(const std::string& name, int dim, int k) {
  if (name == "product") return product(dim);
  if (name == "second_order") return second_order(dim);
  if (name == "determinant") return determinant(svec_order(dim));
  if (name == "elementary_symmetric") return elementary_symmetric(dim, k);
  throw Error(ErrorKind::DomainError, "unknown family '" + name + "'");
}

Vec canonical_direction(const HpFamily& family) {
  switch (family.tag) {
    case FamilyTag::Product:
    case FamilyTag::ElementarySymmetric:
      return Vec::Ones(family.dim);
    case FamilyTag::SecondOrder:
      return Vec::Unit(family.dim, family.dim - 1);
    case FamilyTag::Determinant:
      return svec(Mat::Identity(family.degree, family.degree));
  }
  return {};
}

Vec elementary_symmetric_all(const Eigen::Ref<const Vec>& x, int k) {
  Vec e = Vec::Zero(k + 1);
  e(0) = 1.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const int top = static_cast<int>(std::min<Eigen::Index>(k, i + 1));
    for (int j = top; j >= 1; --j) e(j) += x(i) * e(j - 1);
  }
  return e;
}

namespace {

double second_order_p(const Vec& x) {
  const Eigen::Index d = x.size();
  return x(d - 1) * x(d - 1) - x.head(d - 1).squaredNorm();
}

// J = diag(-1, ..., -1, 1).
Vec reflect(const Vec& x) {
  Vec j = -x;
  j(x.size() - 1) = x(x.size() - 1);
  return j;
}

Vec without(const Vec& x, Eigen::Index skip) {
  Vec out(x.size() - 1);
  out.head(skip) = x.head(skip);
  out.tail(x.size() - skip - 1) = x.tail(x.size() - skip - 1);
  return out;
}

// ---- Product ---------------------------------------------------------------

class DiagonalFrame final : public LocalFrame {
 public:
  explicit DiagonalFrame(Vec e) : e_(std::move(e)) {}
  Vec to_local(const Vec& x) const override { return x.cwiseQuotient(e_); }
  Vec from_local(const Vec& z) const override { return z.cwiseProduct(e_); }
  Vec dual_to_local(const Vec& s) const override { return s.cwiseProduct(e_); }
  Vec dual_from_local(const Vec& w) const override { return w.cwiseQuotient(e_); }
  Vec center() const override { return Vec::Ones(e_.size()); }

 private:
  Vec e_;
};

class ProductOracle final : public BarrierOracle {
 public:
  explicit ProductOracle(int d) : d_(d) {}
  int dim() const override { return d_; }
  int degree() const override { return d_; }

  bool is_interior(const Vec& e) const override {
    return e.size() == d_ && e.allFinite() && e.minCoeff() > 0.0;
  }
  double value(const Vec& e) const override {
    check(e);
    return -e.array().log().sum();
  }
  Vec gradient(const Vec& e) const override {
    check(e);
    return -e.cwiseInverse();
  }
  Vec hessian_apply(const Vec& e, const Vec& v) const override {
    check(e);
    require_dim(v.size(), d_, "hessian_apply");
    return v.cwiseQuotient(e.cwiseAbs2());
  }
  Vec hessian_solve(const Vec& e, const Vec& w) const override {
    check(e);
    require_dim(w.size(), d_, "hessian_solve");
    return w.cwiseProduct(e.cwiseAbs2());
  }
  Vec direction_eigs(const Vec& e, const Vec& x) const override {
    check(e);
    require_dim(x.size(), d_, "direction_eigs");
    Vec lambda = x.cwiseQuotient(e);
    std::sort(lambda.begin(), lambda.end());
    return lambda;
  }
  std::unique_ptr<LocalFrame> local_frame(const Vec& e) const override {
    check(e);
    return std::make_unique<DiagonalFrame>(e);
  }

 private:
  void check(const Vec& e) const {
    require_dim(e.size(), d_, "point");
    if (!is_interior(e)) throw Error(ErrorKind::NotInterior, "point outside the orthant");
  }
  int d_;
};

// ---- Second-order cone -----------------------------------------------------
//
// Jordan algebra with identity u = (0, ..., 0, 1), det = p, and quadratic
// representation Q_w v = 2 w <w, v> - det(w) J v. With this inner product
// H(e) = 2 Q_{e^{-1}}, so W = sqrt(2) Q_{e^{-1/2}} is a symmetric frame.

struct SpectralPair {
  double lo, hi;  // eigenvalues x_d -+ ||x_bar||
  Vec axis;       // unit vector along x_bar (arbitrary when x_bar = 0)
};

SpectralPair spectral(const Vec& x) {
  const Eigen::Index d = x.size();
  const double r = x.head(d - 1).norm();
  Vec axis = Vec::Zero(d - 1);
  if (r > 0.0) {
    axis = x.head(d - 1) / r;
  } else if (d > 1) {
    axis(0) = 1.0;
  }
  return {x(d - 1) - r, x(d - 1) + r, axis};
}

// f(lo) c_lo + f(hi) c_hi with c_{lo,hi} = (-+axis, 1) / 2.
Vec spectral_apply(const SpectralPair& s, double f_lo, double f_hi) {
  const Eigen::Index d = s.axis.size() + 1;
  Vec out(d);
  out.head(d - 1) = 0.5 * (f_hi - f_lo) * s.axis;
  out(d - 1) = 0.5 * (f_hi + f_lo);
  return out;
}

Vec quad_rep(const Vec& w, double det_w, const Vec& v) {
  return 2.0 * w.dot(v) * w - det_w * reflect(v);
}

class JordanFrame final : public LocalFrame {
 public:
  explicit JordanFrame(const Vec& e) {
    const SpectralPair s = spectral(e);
    inv_sqrt_ = spectral_apply(s, 1.0 / std::sqrt(s.lo), 1.0 / std::sqrt(s.hi));
    sqrt_ = spectral_apply(s, std::sqrt(s.lo), std::sqrt(s.hi));
    det_sqrt_ = std::sqrt(s.lo) * std::sqrt(s.hi);
  }
  Vec to_local(const Vec& x) const override {
    return std::numbers::sqrt2 * quad_rep(inv_sqrt_, 1.0 / det_sqrt_, x);
  }
  Vec from_local(const Vec& z) const override {
    return quad_rep(sqrt_, det_sqrt_, z) / std::numbers::sqrt2;
  }
  Vec dual_to_local(const Vec& s) const override { return from_local(s); }
  Vec dual_from_local(const Vec& w) const override { return to_local(w); }
  Vec center() const override {
    return std::numbers::sqrt2 * Vec::Unit(inv_sqrt_.size(), inv_sqrt_.size() - 1);
  }

 private:
  Vec inv_sqrt_;
  Vec sqrt_;
  double det_sqrt_;
};

class SecondOrderOracle final : public BarrierOracle {
 public:
  explicit SecondOrderOracle(int d) : d_(d) {}
  int dim() const override { return d_; }
  int degree() const override { return 2; }

  bool is_interior(const Vec& e) const override {
    if (e.size() != d_ || !e.allFinite()) return false;
    return e(d_ - 1) > 0.0 && spectral(e).lo > 0.0;
  }
  double value(const Vec& e) const override {
    check(e);
    const SpectralPair s = spectral(e);
    return -std::log(s.lo) - std::log(s.hi);
  }
  Vec gradient(const Vec& e) const override {
    check(e);
    return -2.0 * reflect(e) / det(e);
  }
  Vec hessian_apply(const Vec& e, const Vec& v) const override {
    check(e);
    require_dim(v.size(), d_, "hessian_apply");
    const double p = det(e);
    const Vec je = reflect(e);
    return -2.0 * reflect(v) / p + 4.0 * je.dot(v) / (p * p) * je;
  }
  Vec hessian_solve(const Vec& e, const Vec& w) const override {
    check(e);
    require_dim(w.size(), d_, "hessian_solve");
    return e.dot(w) * e - 0.5 * det(e) * reflect(w);
  }
  Vec direction_eigs(const Vec& e, const Vec& x) const override {
    require_dim(x.size(), d_, "direction_eigs");
    const JordanFrame frame(checked(e));
    const Vec v = frame.to_local(x) / std::numbers::sqrt2;
    const SpectralPair s = spectral(v);
    Vec lambda(2);
    lambda << s.lo, s.hi;
    return lambda;
  }
  std::unique_ptr<LocalFrame> local_frame(const Vec& e) const override {
    return std::make_unique<JordanFrame>(checked(e));
  }

 private:
  // p(e) from the spectral product avoids cancellation near the boundary.
  static double det(const Vec& e) {
    const SpectralPair s = spectral(e);
    return s.lo * s.hi;
  }
  void check(const Vec& e) const {
    require_dim(e.size(), d_, "point");
    if (!is_interior(e)) throw Error(ErrorKind::NotInterior, "point outside the Lorentz cone");
  }
  const Vec& checked(const Vec& e) const {
    check(e);
    return e;
  }
  int d_;
};

// ---- Determinant family ----------------------------------------------------

class DeterminantFamilyOracle final : public BarrierOracle {
 public:
  explicit DeterminantFamilyOracle(const HpFamily& family) : family_(family), det_(family.degree) {}
  int dim() const override { return det_.dim(); }
  int degree() const override { return det_.degree(); }
  bool is_interior(const Vec& e) const override { return det_.is_interior(e); }
  double value(const Vec& e) const override { return det_.value(e); }
  Vec gradient(const Vec& e) const override { return det_.gradient(e); }
  Vec hessian_apply(const Vec& e, const Vec& v) const override { return det_.hessian_apply(e, v); }
  Vec hessian_solve(const Vec& e, const Vec& w) const override { return det_.hessian_solve(e, w); }
  std::unique_ptr<LocalFrame> local_frame(const Vec& e) const override { return det_.local_frame(e); }

  // Eigenvalues are invariant under the congruence, so the restriction
  // polynomial is taken at (W x, W e) = (L^{-1} X L^{-T}, I).
  Vec direction_eigs(const Vec& e, const Vec& x) const override {
    require_dim(x.size(), dim(), "direction_eigs");
    const auto frame = det_.local_frame(e);
    return direction_eigs_hp(family_, frame->to_local(x), frame->center());
  }
  PowerSums direction_power_sums(const Vec& e, const Vec& x) const override {
    require_dim(x.size(), dim(), "direction_power_sums");
    const auto frame = det_.local_frame(e);
    return power_sums_from_coeffs(restricted_coeffs(family_, frame->to_local(x), frame->center()));
  }

 private:
  HpFamily family_;
  DetBarrierOracle det_;
};

// ---- Elementary symmetric --------------------------------------------------

class ElementarySymmetricOracle final : public BarrierOracle {
 public:
  explicit ElementarySymmetricOracle(const HpFamily& family) : family_(family) {}
  int dim() const override { return family_.dim; }
  int degree() const override { return family_.degree; }

  bool is_interior(const Vec& e) const override {
    if (e.size() != dim() || !e.allFinite()) return false;
    const Vec all = elementary_symmetric_all(e, degree());
    return all.tail(degree()).minCoeff() > 0.0;
  }
  double value(const Vec& e) const override {
    check(e);
    return -std::log(elementary_symmetric_all(e, degree())(degree()));
  }
  Vec gradient(const Vec& e) const override {
    check(e);
    return -partials(e) / elementary_symmetric_all(e, degree())(degree());
  }
  Vec hessian_apply(const Vec& e, const Vec& v) const override {
    require_dim(v.size(), dim(), "hessian_apply");
    return hessian(e) * v;
  }
  Vec hessian_solve(const Vec& e, const Vec& w) const override {
    require_dim(w.size(), dim(), "hessian_solve");
    Eigen::LDLT<Mat> ldlt(hessian(e));
    if (ldlt.info() != Eigen::Success) throw Error(ErrorKind::NumericalFailure, "Hessian solve failed");
    return ldlt.solve(w);
  }
  Vec direction_eigs(const Vec& e, const Vec& x) const override {
    check(e);
    return direction_eigs_hp(family_, x, e);
  }
  PowerSums direction_power_sums(const Vec& e, const Vec& x) const override {
    check(e);
    require_dim(x.size(), dim(), "direction_power_sums");
    return power_sums_from_coeffs(restricted_coeffs(family_, x, e));
  }

 private:
  void check(const Vec& e) const {
    require_dim(e.size(), dim(), "point");
    if (!is_interior(e)) throw Error(ErrorKind::NotInterior, "point outside the hyperbolicity cone");
  }

  // d e_k / d x_i = e_{k-1}(x without x_i).
  Vec partials(const Vec& e) const {
    Vec g(dim());
    for (int i = 0; i < dim(); ++i) {
      g(i) = elementary_symmetric_all(without(e, i), degree() - 1)(degree() - 1);
    }
    return g;
  }

  Mat hessian(const Vec& e) const {
    check(e);
    const int d = dim();
    const int k = degree();
    const double ek = elementary_symmetric_all(e, k)(k);
    const Vec g = partials(e);
    Mat second = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i) {
      const Vec rest = without(e, i);
      for (int j = i + 1; j < d; ++j) {
        // x without {i, j}: drop index j - 1 from `rest`.
        second(i, j) = second(j, i) =
            elementary_symmetric_all(without(rest, j - 1), k - 2)(k - 2);
      }
    }
    return -second / ek + g * g.transpose() / (ek * ek);
  }

  HpFamily family_;
};

Vec poly_mul_linear(const Vec& a, double c0, double c1) {
  Vec out = Vec::Zero(a.size() + 1);
  out.head(a.size()) += c0 * a;
  out.tail(a.size()) += c1 * a;
  return out;
}

// Parlett-Reinsch balancing by powers of two.
void balance(Mat& m) {
  const Eigen::Index n = m.rows();
  bool changed = true;
  for (int sweep = 0; changed && sweep < 100; ++sweep) {
    changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double col = m.col(i).cwiseAbs().sum() - std::abs(m(i, i));
      const double row = m.row(i).cwiseAbs().sum() - std::abs(m(i, i));
      if (col == 0.0 || row == 0.0) continue;
      int exponent = 0;
      std::frexp(row / col, &exponent);
      exponent /= 2;
      if (exponent == 0) continue;
      const double f = std::ldexp(1.0, exponent);
      if ((col * f + row / f) < 0.95 * (col + row)) {
        m.row(i) /= f;
        m.col(i) *= f;
        changed = true;
      }
    }
  }
}

}  // namespace

double eval_p(const HpFamily& family, const Vec& x) {
  require_dim(x.size(), family.dim, "eval_p");
  switch (family.tag) {
    case FamilyTag::Product:
      return x.prod();
    case FamilyTag::SecondOrder:
      return second_order_p(x);
    case FamilyTag::Determinant:
      return Eigen::PartialPivLU<Mat>(smat(x)).determinant();
    case FamilyTag::ElementarySymmetric:
      return elementary_symmetric_all(x, family.degree)(family.degree);
  }
  return 0.0;
}

bool native_cone_member(const HpFamily& family, const Vec& x, double tol) {
  require_dim(x.size(), family.dim, "native_cone_member");
  const double band = tol * (1.0 + x.norm());
  switch (family.tag) {
    case FamilyTag::Product:
      return x.minCoeff() >= -band;
    case FamilyTag::SecondOrder:
      return x(family.dim - 1) - x.head(family.dim - 1).norm() >= -band;
    case FamilyTag::Determinant: {
      Eigen::SelfAdjointEigenSolver<Mat> eig(smat(x), Eigen::EigenvaluesOnly);
      return eig.eigenvalues().minCoeff() >= -band;
    }
    case FamilyTag::ElementarySymmetric: {
      const Vec all = elementary_symmetric_all(x, family.degree);
      for (int j = 1; j <= family.degree; ++j) {
        if (all(j) < -tol * std::pow(1.0 + x.norm(), j)) return false;
      }
      return true;
    }
  }
  return false;
}

std::unique_ptr<BarrierOracle> hp_barrier_oracle(const HpFamily& family) {
  switch (family.tag) {
    case FamilyTag::Product: return std::make_unique<ProductOracle>(family.dim);
    case FamilyTag::SecondOrder: return std::make_unique<SecondOrderOracle>(family.dim);
    case FamilyTag::Determinant: return std::make_unique<DeterminantFamilyOracle>(family);
    case FamilyTag::ElementarySymmetric: return std::make_unique<ElementarySymmetricOracle>(family);
  }
  throw Error(ErrorKind::DomainError, "unknown family");
}

Vec restricted_coeffs(const HpFamily& family, const Vec& x, const Vec& e) {
  require_dim(x.size(), family.dim, "restricted_coeffs x");
  require_dim(e.size(), family.dim, "restricted_coeffs e");
  const int n = family.degree;

  if (family.tag == FamilyTag::Product) {
    Vec a = Vec::Ones(1);
    for (int i = 0; i < family.dim; ++i) a = poly_mul_linear(a, x(i), e(i));
    return a;
  }
  if (family.tag == FamilyTag::SecondOrder) {
    const int d = family.dim;
    Vec a(3);
    a(0) = second_order_p(x);
    a(1) = 2.0 * (x(d - 1) * e(d - 1) - x.head(d - 1).dot(e.head(d - 1)));
    a(2) = second_order_p(e);
    return a;
  }

  if (family.tag == FamilyTag::ElementarySymmetric) {
    // Prefix recurrence over polynomials in t: E_j <- E_j + (x_i + t e_i) E_{j-1}.
    std::vector<Vec> poly(n + 1, Vec::Zero(n + 1));
    poly[0](0) = 1.0;
    for (int i = 0; i < family.dim; ++i) {
      for (int j = std::min(n, i + 1); j >= 1; --j) {
        poly[j].head(j + 1) += x(i) * poly[j - 1].head(j + 1);
        poly[j].segment(1, j) += e(i) * poly[j - 1].head(j);
      }
    }
    return poly[n];
  }

  // Interpolate on Chebyshev nodes of [-R, R] in the scaled variable t / R.
  const double radius = 1.0 + x.norm() / e.norm();
  Mat vander(n + 1, n + 1);
  Vec values(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double tau = std::cos((2.0 * k + 1.0) * std::numbers::pi / (2.0 * (n + 1)));
    double pw = 1.0;
    for (int j = 0; j <= n; ++j) {
      vander(k, j) = pw;
      pw *= tau;
    }
    values(k) = eval_p(family, x + radius * tau * e);
  }
  Vec scaled = vander.colPivHouseholderQr().solve(values);
  const double residual = (vander * scaled - values).norm();
  if (!scaled.allFinite() || residual > 1e-6 * std::max(values.norm(), 1e-300)) {
    throw Error(ErrorKind::NumericalFailure, "Vandermonde interpolation residual too large");
  }
  double pw = 1.0;
  for (int j = 0; j <= n; ++j) {
    scaled(j) /= pw;
    pw *= radius;
  }
  return scaled;
}

Eigen::VectorXcd polynomial_roots(const Vec& coeffs) {
  const Eigen::Index n = coeffs.size() - 1;
  if (n < 1) return {};
  const double lead = coeffs(n);
  if (!(std::abs(lead) > 1e-300) || !std::isfinite(lead)) {
    throw Error(ErrorKind::DegenerateLeadingCoefficient, "leading coefficient vanishes");
  }
  if (n == 1) {
    Eigen::VectorXcd r(1);
    r(0) = -coeffs(0) / lead;
    return r;
  }
  Mat companion = Mat::Zero(n, n);
  companion.diagonal(-1).setOnes();
  companion.col(n - 1) = -coeffs.head(n) / lead;
  balance(companion);
  Eigen::EigenSolver<Mat> eig(companion, false);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorKind::NumericalFailure, "companion eigensolve failed");
  }
  return eig.eigenvalues();
}

namespace {

Eigen::VectorXcd direction_roots(const HpFamily& family, const Vec& x, const Vec& e) {
  return polynomial_roots(restricted_coeffs(family, -x, e));
}

double imag_residual(const Eigen::VectorXcd& roots) {
  double worst = 0.0;
  for (const auto& r : roots) worst = std::max(worst, std::abs(r.imag()) / (1.0 + std::abs(r.real())));
  return worst;
}

}  // namespace

Vec direction_eigs_hp(const HpFamily& family, const Vec& x, const Vec& e, double tol) {
  const Eigen::VectorXcd roots = direction_roots(family, x, e);
  if (imag_residual(roots) > tol) {
    throw Error(ErrorKind::NonRealEigenvalues,
                "imaginary residual " + std::to_string(imag_residual(roots)));
  }
  Vec lambda = roots.real();
  std::sort(lambda.begin(), lambda.end());
  return lambda;
}

PowerSums power_sums_from_coeffs(const Vec& coeffs) {
  const Eigen::Index n = coeffs.size() - 1;
  if (n < 1) throw Error(ErrorKind::DomainError, "need at least a linear polynomial");
  const double lead = coeffs(n);
  if (!(std::abs(lead) > 1e-300)) {
    throw Error(ErrorKind::DegenerateLeadingCoefficient, "leading coefficient vanishes");
  }
  auto elem = [&](Eigen::Index k) { return n - k >= 0 ? coeffs(n - k) / lead : 0.0; };
  const double e1 = elem(1), e2 = elem(2), e3 = elem(3), e4 = elem(4);
  PowerSums s;
  s.p1 = e1;
  s.p2 = e1 * e1 - 2.0 * e2;
  s.p3 = e1 * e1 * e1 - 3.0 * e1 * e2 + 3.0 * e3;
  s.p4 = e1 * e1 * e1 * e1 - 4.0 * e1 * e1 * e2 + 2.0 * e2 * e2 + 4.0 * e1 * e3 - 4.0 * e4;
  return s;
}

HyperbolicityReport hyperbolicity_sample_check(const HpFamily& family, const Vec& e, int trials,
                                               std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorKind::DomainError, "trials must be >= 1");
  std::vector<double> residual(trials, 0.0);
  std::vector<char> failed(trials, 0);
  kernels::parallel_for(trials, [&](int i) {
    auto rng = kernels::stream_rng(seed, static_cast<std::uint64_t>(i));
    std::normal_distribution<double> gauss;
    Vec x(family.dim);
    for (auto& v : x) v = gauss(rng);
    try {
      residual[i] = imag_residual(direction_roots(family, x, e));
      failed[i] = residual[i] > kImagTol;
    } catch (const Error&) {
      failed[i] = 1;
    }
  });
  HyperbolicityReport report;
  report.trials = trials;
  for (int i = 0; i < trials; ++i) {
    report.max_imag_residual = std::max(report.max_imag_residual, residual[i]);
    report.failures += failed[i];
  }
  return report;
}

void HpInstance::validate(const BarrierOracle& oracle) const {
  const int d = family.dim;
  require_dim(oracle.dim(), d, "oracle dimension");
  require_dim(objective.size(), d, "objective length");
  require_dim(constraints.cols(), d, "constraint columns");
  require_dim(rhs.size(), constraints.rows(), "rhs length");
  require_dim(start.size(), d, "start length");
  if (constraints.rows() < 1) throw Error(ErrorKind::InvariantViolation, "m must be >= 1");
  if (rhs.lpNorm<Eigen::Infinity>() == 0.0) throw Error(ErrorKind::InvariantViolation, "b must be nonzero");
  Eigen::ColPivHouseholderQR<Mat> qr(constraints.transpose());
  qr.setThreshold(1e-12);
  if (qr.rank() < constraints.rows()) throw Error(ErrorKind::InvariantViolation, "A is rank deficient");
  Mat with_c(constraints.rows() + 1, d);
  with_c << constraints, objective.transpose();
  Eigen::ColPivHouseholderQR<Mat> qrc(with_c.transpose());
  qrc.setThreshold(1e-12);
  if (qrc.rank() <= constraints.rows()) throw Error(ErrorKind::InvariantViolation, "c lies in the row space of A");
  if ((constraints * start - rhs).norm() > 1e-9 * (1.0 + rhs.norm())) {
    throw Error(ErrorKind::InvariantViolation, "A e0 != b");
  }
  if (!oracle.is_interior(start)) throw Error(ErrorKind::InvariantViolation, "e0 is not interior");
}

}  // namespace affscale
