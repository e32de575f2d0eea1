#include <cmath>
#include <limits>

#include "kpos/solver.hpp"

namespace kpos {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::Unbounded: return "Unbounded";
    default: return "MaxIterations";
  }
}

LinearProgram LinearProgram::make(int nvars, int nrows) {
  LinearProgram p;
  p.objective = RVec::Zero(nvars);
  p.constraints = Eigen::MatrixXd::Zero(nrows, nvars);
  p.rhs = RVec::Zero(nrows);
  p.senses.assign(nrows, RowSense::EQ);
  p.lower = RVec::Constant(nvars, -std::numeric_limits<double>::infinity());
  p.upper = RVec::Constant(nvars, std::numeric_limits<double>::infinity());
  return p;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Standard form min c'z, Az = b, z >= 0 produced from the general program,
// with enough bookkeeping to map the solution back.
struct StandardForm {
  Eigen::MatrixXd A;
  RVec b, c;
  double obj_const = 0.0;
  double obj_sign = 1.0;  // -1 when the original problem maximizes
  // per original variable: column index of its (first) standard variable,
  // kind 0 = shift by lower, 1 = reflected around upper, 2 = free split
  std::vector<int> col;
  std::vector<int> kind;
  RVec shift;
  int n_orig_rows = 0;
};

StandardForm to_standard(const LinearProgram& p) {
  const int nv = int(p.objective.size());
  const int nr = int(p.rhs.size());
  StandardForm sf;
  sf.obj_sign = p.maximize ? -1.0 : 1.0;
  sf.col.resize(nv);
  sf.kind.resize(nv);
  sf.shift = RVec::Zero(nv);
  sf.n_orig_rows = nr;

  // Count standard columns and extra bound rows.
  int ncols = 0, nbound_rows = 0;
  for (int j = 0; j < nv; ++j) {
    bool lo = std::isfinite(p.lower(j)), up = std::isfinite(p.upper(j));
    sf.col[j] = ncols;
    if (lo) {
      sf.kind[j] = 0;
      sf.shift(j) = p.lower(j);
      ncols += 1;
      if (up) nbound_rows += 1;  // x' + slack = ub - lb
    } else if (up) {
      sf.kind[j] = 1;
      sf.shift(j) = p.upper(j);
      ncols += 1;
    } else {
      sf.kind[j] = 2;
      ncols += 2;
    }
  }
  int nslack = 0;
  for (auto s : p.senses)
    if (s != RowSense::EQ) ++nslack;
  const int rows = nr + nbound_rows;
  const int cols = ncols + nslack + nbound_rows;

  sf.A = Eigen::MatrixXd::Zero(rows, cols);
  sf.b = RVec::Zero(rows);
  sf.c = RVec::Zero(cols);

  for (int j = 0; j < nv; ++j) {
    double cj = sf.obj_sign * p.objective(j);
    int cj0 = sf.col[j];
    if (sf.kind[j] == 0) {
      sf.c(cj0) = cj;
      sf.obj_const += cj * sf.shift(j);
      for (int i = 0; i < nr; ++i) sf.A(i, cj0) = p.constraints(i, j);
    } else if (sf.kind[j] == 1) {
      sf.c(cj0) = -cj;
      sf.obj_const += cj * sf.shift(j);
      for (int i = 0; i < nr; ++i) sf.A(i, cj0) = -p.constraints(i, j);
    } else {
      sf.c(cj0) = cj;
      sf.c(cj0 + 1) = -cj;
      for (int i = 0; i < nr; ++i) {
        sf.A(i, cj0) = p.constraints(i, j);
        sf.A(i, cj0 + 1) = -p.constraints(i, j);
      }
    }
  }
  for (int i = 0; i < nr; ++i) {
    sf.b(i) = p.rhs(i);
    for (int j = 0; j < nv; ++j)
      if (sf.kind[j] != 2) sf.b(i) -= p.constraints(i, j) * (sf.kind[j] == 0 ? sf.shift(j) : 0.0);
    // reflected variables: x = ub - x' so A x = A*ub - A x'
    for (int j = 0; j < nv; ++j)
      if (sf.kind[j] == 1) sf.b(i) -= p.constraints(i, j) * sf.shift(j);
  }
  int sc = ncols;
  for (int i = 0; i < nr; ++i) {
    if (p.senses[i] == RowSense::LE) sf.A(i, sc++) = 1.0;
    else if (p.senses[i] == RowSense::GE) sf.A(i, sc++) = -1.0;
  }
  int br = nr;
  for (int j = 0; j < nv; ++j) {
    if (sf.kind[j] == 0 && std::isfinite(p.upper(j))) {
      sf.A(br, sf.col[j]) = 1.0;
      sf.A(br, sc) = 1.0;
      sf.b(br) = p.upper(j) - p.lower(j);
      ++sc;
      ++br;
    }
  }
  return sf;
}

RVec map_back(const StandardForm& sf, const RVec& z, int nv) {
  RVec x(nv);
  for (int j = 0; j < nv; ++j) {
    if (sf.kind[j] == 0) x(j) = sf.shift(j) + z(sf.col[j]);
    else if (sf.kind[j] == 1) x(j) = sf.shift(j) - z(sf.col[j]);
    else x(j) = z(sf.col[j]) - z(sf.col[j] + 1);
  }
  return x;
}

}  // namespace

SolverResult lp_solve(const LinearProgram& p, const LpOptions& opts) {
  const int nv = int(p.objective.size());
  StandardForm sf = to_standard(p);
  const int n = int(sf.c.size());
  const int m = int(sf.b.size());

  SolverResult res;

  if (m == 0) {
    // Pure bound problem: optimum at z = 0 when reduced costs are
    // nonnegative, otherwise unbounded below.
    if ((sf.c.array() >= -1e-15).all()) {
      res.status = SolveStatus::Optimal;
      res.optimum = sf.obj_sign * sf.obj_const;
      res.primal = map_back(sf, RVec::Zero(n), nv);
      res.dual = RVec::Zero(0);
    } else {
      res.status = SolveStatus::Unbounded;
    }
    return res;
  }

  double scale = std::max({1.0, sf.b.cwiseAbs().maxCoeff(),
                           sf.c.size() ? sf.c.cwiseAbs().maxCoeff() : 1.0});
  RVec x = RVec::Constant(n, scale);
  RVec s = RVec::Constant(n, scale);
  RVec y = RVec::Zero(m);

  auto solve_normal = [&](const RVec& d, const RVec& rhs) -> RVec {
    Eigen::MatrixXd M = sf.A * d.asDiagonal() * sf.A.transpose();
    double ridge = 1e-13 * (1.0 + M.diagonal().cwiseAbs().maxCoeff());
    M.diagonal().array() += ridge;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(M);
    return ldlt.solve(rhs);
  };

  auto max_step = [&](const RVec& v, const RVec& dv) {
    double a = kInf;
    for (int i = 0; i < n; ++i)
      if (dv(i) < 0) a = std::min(a, -v(i) / dv(i));
    return a;
  };

  for (int it = 1; it <= opts.max_iterations; ++it) {
    RVec rb = sf.b - sf.A * x;
    RVec rc = sf.c - sf.A.transpose() * y - s;
    double mu = x.dot(s) / n;
    double pobj = sf.c.dot(x), dobj = sf.b.dot(y);
    double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    double pinf = rb.norm() / (1.0 + sf.b.norm());
    double dinf = rc.norm() / (1.0 + sf.c.norm());

    if (gap <= opts.gap_tol && pinf <= opts.feas_tol && dinf <= opts.feas_tol) {
      res.status = SolveStatus::Optimal;
      res.optimum = sf.obj_sign * (pobj + sf.obj_const);
      res.primal = map_back(sf, x, nv);
      res.dual = sf.obj_sign * y.head(std::min(m, sf.n_orig_rows));
      res.gap = gap;
      res.iterations = it;
      return res;
    }
    if (mu < 1e-12 && pinf > 1e-6) {
      res.status = SolveStatus::Infeasible;
      res.iterations = it;
      return res;
    }
    if (mu < 1e-12 && dinf > 1e-6) {
      res.status = SolveStatus::Unbounded;
      res.iterations = it;
      return res;
    }
    if (!std::isfinite(mu) || mu > 1e18) break;

    RVec d = x.cwiseQuotient(s);

    // affine predictor
    RVec rhs_aff = rb + sf.A * (d.asDiagonal() * rc) + sf.A * x;
    RVec dy_a = solve_normal(d, rhs_aff);
    RVec ds_a = rc - sf.A.transpose() * dy_a;
    RVec dx_a = -x - d.cwiseProduct(ds_a);
    double ap = std::min(1.0, max_step(x, dx_a));
    double ad = std::min(1.0, max_step(s, ds_a));
    double mu_aff = (x + ap * dx_a).dot(s + ad * ds_a) / n;
    double sigma = std::pow(std::max(mu_aff, 0.0) / mu, 3.0);

    // corrector
    RVec v = RVec::Constant(n, sigma * mu) - x.cwiseProduct(s) - dx_a.cwiseProduct(ds_a);
    RVec rhs = rb + sf.A * (d.asDiagonal() * rc) - sf.A * v.cwiseQuotient(s);
    RVec dy = solve_normal(d, rhs);
    RVec ds = rc - sf.A.transpose() * dy;
    RVec dx = v.cwiseQuotient(s) - d.cwiseProduct(ds);

    double fp = std::min(1.0, 0.995 * max_step(x, dx));
    double fd = std::min(1.0, 0.995 * max_step(s, ds));
    x += fp * dx;
    y += fd * dy;
    s += fd * ds;
    res.iterations = it;
  }

  res.status = SolveStatus::MaxIterations;
  res.primal = map_back(sf, x, nv);
  res.optimum = sf.obj_sign * (sf.c.dot(x) + sf.obj_const);
  return res;
}

}  // namespace kpos
