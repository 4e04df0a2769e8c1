#include <doctest.h>

#include <cmath>
#include <random>

#include "affscale/hyperbolic.hpp"
#include "affscale/sdp.hpp"
#include "oracles.hpp"

using namespace affscale;

namespace {

template <class F>
void expect_kind(ErrorKind kind, F&& fn) {
  try {
    fn();
    FAIL("no error thrown");
  } catch (const Error& err) {
    CHECK(err.kind() == kind);
  }
}

Mat diag(double a, double b) {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("svec: trace inner product and round trip") {
  std::mt19937_64 rng(1);
  for (int n = 1; n <= 7; ++n) {
    CHECK(svec_dim(n) == n * (n + 1) / 2);
    CHECK(svec_order(svec_dim(n)) == n);
    const Mat u = oracle::random_sym(n, rng), v = oracle::random_sym(n, rng);
    CHECK(std::abs(svec(u).dot(svec(v)) - (u * v).trace()) <= 1e-12 * (1.0 + u.norm() * v.norm()));
    CHECK((smat(svec(u)) - u).norm() <= 1e-15 * u.norm());
  }
  expect_kind(ErrorKind::DimensionMismatch, [] { svec_order(4); });
}

TEST_CASE("det oracle: worked values") {
  DetBarrierOracle o(2);
  CHECK(o.dim() == 3);
  CHECK(o.degree() == 2);
  CHECK((smat(o.gradient(svec(Mat::Identity(2, 2)))) + Mat::Identity(2, 2)).norm() < 1e-15);
  CHECK((smat(o.hessian_apply(svec(diag(1, 2)), svec(Mat::Identity(2, 2)))) - diag(1, 0.25)).norm() < 1e-15);
  CHECK(o.value(svec(diag(1, 2))) == doctest::Approx(-std::log(2.0)).epsilon(1e-14));
  expect_kind(ErrorKind::NotInterior, [&] { o.value(svec(diag(1, 0))); });
  expect_kind(ErrorKind::NotInterior, [&] { o.gradient(svec(diag(-1, 2))); });
  CHECK_FALSE(o.is_interior(svec(diag(1, -1e-3))));
}

TEST_CASE("det oracle: gradient and Hessian against finite differences") {
  std::mt19937_64 rng(2);
  for (int n = 2; n <= 5; ++n) {
    DetBarrierOracle o(n);
    for (int trial = 0; trial < 5; ++trial) {
      const Vec e = svec(oracle::random_spd(n, rng));
      const double h = 1e-5 * (1.0 + e.norm());
      const Vec g = o.gradient(e);
      Vec fd(o.dim());
      for (int i = 0; i < o.dim(); ++i) {
        const Vec di = h * Vec::Unit(o.dim(), i);
        fd(i) = (o.value(e + di) - o.value(e - di)) / (2 * h);
      }
      CHECK(oracle::rel_err(fd, g) < 1e-6);
      const Vec v = oracle::random_vec(o.dim(), rng);
      const Vec hv_fd = (o.gradient(e + h * v) - o.gradient(e - h * v)) / (2 * h);
      CHECK(oracle::rel_err(hv_fd, o.hessian_apply(e, v)) < 1e-6);
    }
  }
}

TEST_CASE("det oracle: Hessian equals entrywise trace formula; solve inverts apply") {
  std::mt19937_64 rng(3);
  for (int n = 2; n <= 6; ++n) {
    DetBarrierOracle o(n);
    const Mat e = oracle::random_spd(n, rng);
    const Mat h_ref = oracle::sdp_hessian_by_traces(e);
    CHECK(oracle::rel_err(o.hessian_matrix(svec(e)), h_ref) < 1e-12);
    const Vec v = oracle::random_vec(o.dim(), rng);
    CHECK(oracle::rel_err(o.hessian_solve(svec(e), o.hessian_apply(svec(e), v)), v) < 1e-10);
  }
}

TEST_CASE("direction_eigs_sdp: examples") {
  const Vec l1 = direction_eigs_sdp(Mat::Identity(2, 2), diag(2, 0));
  CHECK(l1(0) == doctest::Approx(0.0));
  CHECK(l1(1) == doctest::Approx(2.0));
  const double r7 = std::sqrt(7.0);
  const Vec l2 = direction_eigs_sdp(Mat::Identity(2, 2), diag(1 + r7, 1 - r7));
  CHECK(l2(0) == doctest::Approx(1 - r7).epsilon(1e-14));
  CHECK(l2(1) == doctest::Approx(1 + r7).epsilon(1e-14));
  std::mt19937_64 rng(4);
  const Mat e = oracle::random_spd(5, rng);
  CHECK((direction_eigs_sdp(e, e) - Vec::Ones(5)).norm() < 1e-12);
  expect_kind(ErrorKind::NotInterior, [] { direction_eigs_sdp(diag(1, -1), diag(1, 1)); });
}

TEST_CASE("direction_eigs_sdp: power sums against trace and local norm; generalized eigen oracle") {
  std::mt19937_64 rng(5);
  for (int n = 2; n <= 8; ++n) {
    DetBarrierOracle o(n);
    const Mat e = oracle::random_spd(n, rng);
    const Mat x = oracle::random_sym(n, rng);
    const Vec lam = direction_eigs_sdp(e, x);
    CHECK(oracle::rel_err(lam.sum(), (e.inverse() * x).trace()) < 1e-9);
    CHECK(oracle::rel_err(lam.squaredNorm(), local_inner(o, svec(e), svec(x), svec(x))) < 1e-9);
    Eigen::GeneralizedSelfAdjointEigenSolver<Mat> ges(x, e);
    CHECK((lam - ges.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("direction_eigs_sdp agrees with the root-based determinant family") {
  std::mt19937_64 rng(6);
  for (int n = 2; n <= 6; ++n) {
    const Mat e = oracle::random_spd(n, rng);
    const Mat x = oracle::random_sym(n, rng);
    const Vec a = direction_eigs_sdp(e, x);
    const Vec b = direction_eigs_hp(HpFamily::determinant(n), svec(x), svec(e));
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-7);
  }
}

TEST_CASE("congruence frame") {
  std::mt19937_64 rng(7);
  const int n = 4;
  const Mat e = oracle::random_spd(n, rng);
  DetBarrierOracle o(n);
  const auto frame = o.local_frame(svec(e));
  const Vec x = svec(oracle::random_sym(n, rng)), y = svec(oracle::random_sym(n, rng));
  CHECK(std::abs(frame->to_local(x).dot(frame->to_local(y)) - local_inner(o, svec(e), x, y)) < 1e-10);
  CHECK(oracle::rel_err(frame->from_local(frame->to_local(x)), x) < 1e-12);
  CHECK(oracle::rel_err(frame->dual_from_local(frame->dual_to_local(y)), y) < 1e-12);
  CHECK(std::abs(frame->to_local(x).dot(frame->dual_to_local(y)) - x.dot(y)) < 1e-10);
  CHECK(oracle::rel_err(frame->center(), frame->to_local(svec(e))) < 1e-12);
  CHECK(frame->center().norm() == doctest::Approx(std::sqrt(n)).epsilon(1e-12));
}

TEST_CASE("SdpInstance: adjoint, apply and validation") {
  std::mt19937_64 rng(8);
  SdpInstance sdp = oracle::diag2_instance();
  CHECK_NOTHROW(sdp.validate());
  CHECK(sdp.apply(Mat::Identity(2, 2))(0) == doctest::Approx(2.0));
  CHECK((sdp.apply_adjoint(Vec::Constant(1, 3.0)) - 3.0 * Mat::Identity(2, 2)).norm() < 1e-15);
  const Vec y = oracle::random_vec(1, rng);
  const Mat x = oracle::random_sym(2, rng);
  CHECK(std::abs(sdp.apply(x).dot(y) - (sdp.apply_adjoint(y) * x).trace()) < 1e-12);
  CHECK((sdp.constraint_matrix() * svec(x) - sdp.apply(x)).norm() < 1e-12);

  SdpInstance zero_b = sdp;
  zero_b.rhs(0) = 0.0;
  expect_kind(ErrorKind::InvariantViolation, [&] { zero_b.validate(); });

  SdpInstance dependent = sdp;
  dependent.constraints.push_back(2.0 * Mat::Identity(2, 2));
  dependent.rhs = Vec::Constant(2, 2.0);
  expect_kind(ErrorKind::InvariantViolation, [&] { dependent.validate(); });

  SdpInstance in_span = sdp;
  in_span.objective = 5.0 * Mat::Identity(2, 2);
  expect_kind(ErrorKind::InvariantViolation, [&] { in_span.validate(); });

  SdpInstance bad_shape = sdp;
  bad_shape.rhs = Vec::Zero(2);
  expect_kind(ErrorKind::DimensionMismatch, [&] { bad_shape.validate(); });
}
