#include <doctest.h>

#include <cmath>
#include <random>

#include "affscale/driver.hpp"
#include "affscale/io.hpp"
#include "affscale/qcp.hpp"
#include "affscale/sdp.hpp"
#include "oracles.hpp"

using namespace affscale;

namespace {

struct Problem {
  SdpInstance sdp;
  Mat e;
  DetBarrierOracle oracle;
  Mat a;
  Vec b, c;

  explicit Problem(SdpInstance s, Mat start)
      : sdp(std::move(s)), e(std::move(start)), oracle(sdp.order()),
        a(sdp.constraint_matrix()), b(sdp.rhs), c(sdp.objective_vector()) {}

  SubproblemSolution solve(double alpha) const { return solve_qcp(oracle, a, b, c, svec(e), alpha); }
};

Problem diag2() { return Problem(oracle::diag2_instance(), Mat::Identity(2, 2)); }

Problem generated(int n, int m, std::uint64_t seed) {
  auto g = io::gen_central_path_sdp(n, m, 1.0, seed);
  return Problem(g.instance, g.start);
}

}  // namespace

TEST_CASE("solve_qcp: worked 2x2 instance") {
  const Problem p = diag2();
  const oracle::Diag2 want = oracle::diag2_oracle();
  const SubproblemSolution sol = p.solve(0.5);
  REQUIRE(sol.solved());
  const Mat x = smat(sol.x), s = smat(sol.s);
  CHECK(oracle::rel_err(x(0, 0), want.x1) < 1e-10);
  CHECK(oracle::rel_err(x(1, 1), want.x2) < 1e-10);
  CHECK(std::abs(x(0, 1)) < 1e-12);
  CHECK(oracle::rel_err(sol.gap, want.gap) < 1e-10);
  CHECK(oracle::rel_err(sol.gap, std::sqrt(7.0)) < 1e-10);
  CHECK(oracle::rel_err(sol.y(0), want.y) < 1e-10);
  CHECK(oracle::rel_err(s(0, 0), want.s1) < 1e-10);
  CHECK(oracle::rel_err(s(1, 1), want.s2) < 1e-10);
  CHECK(oracle::rel_err(sol.x_norm_e, 4.0) < 1e-10);
  CHECK(sol.lambda < 0.0);
  // Strong duality: b^T y = tr(C X).
  CHECK(oracle::rel_err(p.b.dot(sol.y), p.c.dot(sol.x)) < 1e-10);
  CHECK(oracle::rel_err(svec(p.e).dot(sol.s), sol.gap) < 1e-10);
  CHECK(in_swath(p.oracle, p.a, p.b, p.c, svec(p.e), 0.5));
}

TEST_CASE("assemble_first_order_system: nullity one, matches trace assembly") {
  const Problem p = diag2();
  const FirstOrderSystem sys = assemble_first_order_system(p.oracle, p.a, p.c, svec(p.e), 0.5);
  CHECK(sys.matrix.rows() == 1 + 3);
  CHECK(sys.matrix.cols() == 3 + 1 + 1);
  Eigen::FullPivLU<Mat> lu(sys.matrix);
  lu.setThreshold(1e-10);
  CHECK(lu.dimensionOfKernel() == 1);

  std::mt19937_64 rng(3);
  for (int n = 2; n <= 5; ++n) {
    const Problem q = generated(n, n, 100 + n);
    const FirstOrderSystem s = assemble_first_order_system(q.oracle, q.a, q.c, svec(q.e), 0.5);
    const int d = svec_dim(n), m = n;
    const Mat einv = q.e.inverse();
    const Vec g = -svec(einv);
    const Mat block = g * g.transpose() - 0.25 * oracle::sdp_hessian_by_traces(q.e);
    CHECK((s.matrix.bottomLeftCorner(d, d) - block).norm() < 1e-10 * block.norm());
    CHECK((s.matrix.topLeftCorner(m, d) - q.a).norm() == 0.0);
    CHECK((s.rhs.head(m) - q.b).norm() < 1e-10 * q.b.norm());
    Eigen::FullPivLU<Mat> l(s.matrix);
    l.setThreshold(1e-10);
    CHECK(l.dimensionOfKernel() == 1);
  }

  try {
    assemble_first_order_system(p.oracle, Mat(0, 3), p.c, svec(p.e), 0.5);
    FAIL("expected DimensionMismatch");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::DimensionMismatch);
  }
}

TEST_CASE("solve_qcp agrees with the ambient-coordinate oracle") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const int n = 3 + static_cast<int>(seed % 4);
    const Problem p = generated(n, n + 1, seed);
    for (const double alpha : {0.3, 0.5, 0.8}) {
      const SubproblemSolution sol = p.solve(alpha);
      const oracle::AmbientSolution ref = oracle::ambient_qcp(p.oracle, p.a, p.b, p.c, svec(p.e), alpha);
      REQUIRE(sol.solved());
      REQUIRE(ref.ok);
      CHECK(ref.nullity == 1);
      CHECK(oracle::rel_err(sol.x, ref.x) < 1e-7);
    }
  }
}

TEST_CASE("solve_qcp: KKT invariants on random instances") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<int> nd(3, 12);
    const int n = nd(rng);
    std::uniform_int_distribution<int> md(2, std::min(2 * n, svec_dim(n) - 1));
    const int m = md(rng);
    const Problem p = generated(n, m, 1000 + trial);
    const double alpha = 0.5;
    const SubproblemSolution sol = p.solve(alpha);
    REQUIRE(sol.solved());
    const Vec e = svec(p.e);
    const Vec g = p.oracle.gradient(e);
    CHECK(oracle::rel_err(p.a * sol.x, p.b) < 1e-8);
    const double lhs = std::pow(g.dot(sol.x), 2), rhs = alpha * alpha * local_inner(p.oracle, e, sol.x, sol.x);
    CHECK(std::abs(lhs - rhs) <= 1e-7 * rhs);
    CHECK(oracle::rel_err(p.a.transpose() * sol.y + sol.s, p.c) < 1e-8);
    CHECK(std::abs(sol.x.dot(sol.s)) <= 1e-8 * (1.0 + sol.x.norm() * sol.s.norm()));
    CHECK(oracle::rel_err(e.dot(sol.s), sol.gap) < 1e-8);
    CHECK(sol.gap > 0.0);
    CHECK(oracle::rel_err(duality_gap(p.c, e, sol.x), sol.gap) < 1e-8);
    const Mat es = p.e * smat(sol.s);
    CHECK(oracle::rel_err((es * es).trace() * (n - alpha * alpha), sol.gap * sol.gap) < 1e-7);
  }
}

TEST_CASE("solve_qcp: objective shift and scale invariance") {
  std::mt19937_64 rng(23);
  const Problem p = generated(5, 6, 23);
  const SubproblemSolution base = p.solve(0.5);
  REQUIRE(base.solved());
  const Vec w = oracle::random_vec(6, rng);
  const SubproblemSolution shifted = solve_qcp(p.oracle, p.a, p.b, p.c + p.a.transpose() * w, svec(p.e), 0.5);
  REQUIRE(shifted.solved());
  CHECK(oracle::rel_err(shifted.x, base.x) < 1e-9);
  CHECK(oracle::rel_err(shifted.gap, base.gap) < 1e-9);

  const double tau = 3.7;
  const SubproblemSolution scaled = solve_qcp(p.oracle, p.a, p.b, tau * p.c, svec(p.e), 0.5);
  REQUIRE(scaled.solved());
  CHECK(oracle::rel_err(scaled.x, base.x) < 1e-9);
  CHECK(oracle::rel_err(scaled.y, tau * base.y) < 1e-9);
  CHECK(oracle::rel_err(scaled.s, tau * base.s) < 1e-9);
  CHECK(oracle::rel_err(scaled.gap, tau * base.gap) < 1e-9);
}

TEST_CASE("in_swath: central-path starts, monotone in alpha") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Problem p = generated(4, 5, seed);
    for (const double alpha : {0.05, 0.3, 0.5, 0.9, 0.99}) {
      CHECK(in_swath(p.oracle, p.a, p.b, p.c, svec(p.e), alpha));
    }
  }
  const Problem p = generated(3, 3, 1);
  CHECK(in_swath(p.oracle, p.a, p.b, p.c, svec(p.e), 0.5));
}

TEST_CASE("solve_qcp: unbounded relaxation reports NotInSwath") {
  // E = diag(2,1), x11 - x22 = 1: the direction I keeps feasibility and lies in
  // K_E(alpha) for small alpha while tr(C I) < 0.
  SdpInstance sdp;
  sdp.objective = Mat::Zero(2, 2);
  sdp.objective(0, 0) = -1.0;
  Mat a1 = Mat::Zero(2, 2);
  a1(0, 0) = 1.0;
  a1(1, 1) = -1.0;
  sdp.constraints = {a1};
  sdp.rhs = Vec::Constant(1, 1.0);
  Mat e = Mat::Zero(2, 2);
  e(0, 0) = 2.0;
  e(1, 1) = 1.0;
  const Problem p(sdp, e);
  const SubproblemSolution sol = p.solve(0.5);
  CHECK(sol.status == SubproblemStatus::NotInSwath);
  CHECK_FALSE(in_swath(p.oracle, p.a, p.b, p.c, svec(e), 0.5));
}

TEST_CASE("solve_qcp: precondition errors") {
  const Problem p = diag2();
  auto kind_of = [&](auto&& fn) {
    try {
      fn();
    } catch (const Error& err) {
      return err.kind();
    }
    return ErrorKind::RetryExhausted;
  };
  CHECK(kind_of([&] { solve_qcp(p.oracle, p.a, p.b, p.c, svec(-Mat::Identity(2, 2)), 0.5); }) ==
        ErrorKind::NotInterior);
  CHECK(kind_of([&] { solve_qcp(p.oracle, p.a, p.b, p.c, svec(p.e), 0.0); }) == ErrorKind::DomainError);
  CHECK(kind_of([&] { solve_qcp(p.oracle, p.a, Vec::Ones(2), p.c, svec(p.e), 0.5); }) ==
        ErrorKind::DimensionMismatch);
  CHECK(to_string(SubproblemStatus::NotInSwath) == std::string("NotInSwath"));
}
