#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kpos/maps.hpp"
#include "kpos/norms.hpp"
#include "kpos/solver.hpp"

using namespace kpos;

namespace {

// minimize 2r+1 over r >= 0, -ar <= s <= br, -a(r+1) <= s+1 <= b(r+1)
double boundary_lp(double a, double b) {
  LinearProgram p = LinearProgram::make(2, 4);
  p.objective << 2, 0;
  p.lower(0) = 0.0;
  p.constraints.row(0) << a, 1;
  p.senses[0] = RowSense::GE;
  p.constraints.row(1) << -b, 1;
  p.senses[1] = RowSense::LE;
  p.constraints.row(2) << a, 1;
  p.senses[2] = RowSense::GE;
  p.rhs(2) = -1.0 - a;
  p.constraints.row(3) << -b, 1;
  p.senses[3] = RowSense::LE;
  p.rhs(3) = b - 1.0;
  SolverResult r = lp_solve(p);
  REQUIRE(r.status == SolveStatus::Optimal);
  return r.optimum + 1.0;
}

}  // namespace

TEST_CASE("boundary-line LP values") {
  CHECK(boundary_lp(1.0 / 8.0, 5.0 / 8.0) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(boundary_lp(1.0 / 15.0, 7.0 / 15.0) == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("lp basics") {
  // min x s.t. x >= 5
  LinearProgram p = LinearProgram::make(1, 0);
  p.objective << 1;
  p.lower(0) = 5.0;
  SolverResult r = lp_solve(p);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.optimum == doctest::Approx(5.0).epsilon(1e-9));

  // same as a GE row on a free variable
  LinearProgram q = LinearProgram::make(1, 1);
  q.objective << 1;
  q.constraints(0, 0) = 1.0;
  q.rhs(0) = 5.0;
  q.senses[0] = RowSense::GE;
  r = lp_solve(q);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.optimum == doctest::Approx(5.0).epsilon(1e-8));
  CHECK(r.primal(0) == doctest::Approx(5.0).epsilon(1e-6));
}

TEST_CASE("lp statuses") {
  // infeasible: x <= 0 and x >= 1 with x in [0, inf)
  LinearProgram p = LinearProgram::make(1, 2);
  p.objective << 1;
  p.lower(0) = 0.0;
  p.constraints(0, 0) = 1.0;
  p.senses[0] = RowSense::LE;
  p.rhs(0) = -1.0;
  p.constraints(1, 0) = 1.0;
  p.senses[1] = RowSense::GE;
  p.rhs(1) = 1.0;
  CHECK(lp_solve(p).status == SolveStatus::Infeasible);

  // unbounded: min -x over x >= 0
  LinearProgram q = LinearProgram::make(1, 0);
  q.objective << -1;
  q.lower(0) = 0.0;
  CHECK(lp_solve(q).status == SolveStatus::Unbounded);
}

TEST_CASE("lp row scaling invariance and maximize") {
  LinearProgram p = LinearProgram::make(2, 2);
  p.objective << 3, 2;
  p.maximize = true;
  p.lower << 0, 0;
  p.constraints << 1, 1, 1, 3;
  p.rhs << 4, 6;
  p.senses = {RowSense::LE, RowSense::LE};
  SolverResult r1 = lp_solve(p);
  REQUIRE(r1.status == SolveStatus::Optimal);

  p.constraints.row(0) *= 10.0;
  p.rhs(0) *= 10.0;
  SolverResult r2 = lp_solve(p);
  REQUIRE(r2.status == SolveStatus::Optimal);
  CHECK(r1.optimum == doctest::Approx(r2.optimum).epsilon(1e-8));
  CHECK(r1.optimum == doctest::Approx(12.0).epsilon(1e-8));  // at (4, 0)
}

TEST_CASE("sdp: trace-bounded maximization") {
  SemidefiniteProgram p;
  p.maximize = true;
  p.block_dims = {2};
  p.objective = {CMat::Identity(2, 2)};
  SdpConstraint tr;
  tr.entries.push_back({0, 0, 0, 1.0});
  tr.entries.push_back({0, 1, 1, 1.0});
  tr.rhs = 1.0;
  p.constraints.push_back(tr);
  SdpResult r = sdp_solve(p);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.optimum == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("sdp: complex off-diagonal objective") {
  // max Re tr(C X) with C = [[0, i], [-i, 0]], tr X = 1, X >= 0 -> 1
  SemidefiniteProgram p;
  p.maximize = true;
  p.block_dims = {2};
  CMat C = CMat::Zero(2, 2);
  C(0, 1) = cxd(0, 1);
  C(1, 0) = cxd(0, -1);
  p.objective = {C};
  SdpConstraint tr;
  tr.entries.push_back({0, 0, 0, 1.0});
  tr.entries.push_back({0, 1, 1, 1.0});
  tr.rhs = 1.0;
  p.constraints.push_back(tr);
  SdpResult r = sdp_solve(p);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.optimum == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("diamond-norm SDP sanity through the norms module") {
  CHECK(diamond_norm(identity_map(2)) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(diamond_norm(transpose_map(3)) == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("sdp optimum invariant under unitary conjugation") {
  SemidefiniteProgram p;
  p.maximize = true;
  p.block_dims = {2};
  CMat C(2, 2);
  C << 1.0, cxd(0.2, 0.1), cxd(0.2, -0.1), -0.5;
  p.objective = {C};
  SdpConstraint tr;
  tr.entries.push_back({0, 0, 0, 1.0});
  tr.entries.push_back({0, 1, 1, 1.0});
  tr.rhs = 1.0;
  p.constraints.push_back(tr);
  SdpResult r1 = sdp_solve(p);
  REQUIRE(r1.status == SolveStatus::Optimal);

  // conjugate all data by a fixed unitary (dense constraints)
  CMat U(2, 2);
  double th = 0.7;
  U << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  SemidefiniteProgram q;
  q.maximize = true;
  q.block_dims = {2};
  q.objective = {(U * C * U.adjoint()).eval()};
  SdpConstraint tr2;
  CMat A = U * CMat::Identity(2, 2) * U.adjoint();
  for (int i = 0; i < 2; ++i)
    for (int j = i; j < 2; ++j)
      if (std::abs(A(i, j)) > 1e-15) tr2.entries.push_back({0, i, j, A(i, j)});
  tr2.rhs = 1.0;
  q.constraints.push_back(tr2);
  SdpResult r2 = sdp_solve(q);
  REQUIRE(r2.status == SolveStatus::Optimal);
  CHECK(r1.optimum == doctest::Approx(r2.optimum).epsilon(1e-7));
}
