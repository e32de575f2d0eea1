#include "kpos/norms.hpp"

#include <nlohmann/json.hpp>

#include "kpos/json_io.hpp"
#include "kpos/parallel.hpp"
#include "kpos/rng.hpp"

namespace kpos {

namespace {

// One corner of the arrow matrix: force Z_corner = rho (x) I_m entrywise.
void add_corner_constraints(SemidefiniteProgram& p, int offset, int rho_block, int n, int m) {
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < m; ++a)
      for (int j = 0; j < n; ++j)
        for (int b = 0; b < m; ++b) {
          int pidx = i * m + a, qidx = j * m + b;
          if (pidx > qidx) continue;
          if (pidx == qidx) {
            // diagonal: Z_pp - rho_ii = 0
            SdpConstraint c;
            c.entries.push_back({0, offset + pidx, offset + pidx, 1.0});
            c.entries.push_back({rho_block, i, i, -1.0});
            c.rhs = 0.0;
            p.constraints.push_back(std::move(c));
            continue;
          }
          if (a == b) {
            // Z_pq = rho_ij (i < j here since a == b and p < q)
            SdpConstraint cr, ci;
            cr.entries.push_back({0, offset + pidx, offset + qidx, 1.0});
            cr.entries.push_back({rho_block, i, j, -1.0});
            cr.rhs = 0.0;
            ci.entries.push_back({0, offset + pidx, offset + qidx, cxd(0, 1)});
            ci.entries.push_back({rho_block, i, j, cxd(0, -1)});
            ci.rhs = 0.0;
            p.constraints.push_back(std::move(cr));
            p.constraints.push_back(std::move(ci));
          } else {
            SdpConstraint cr, ci;
            cr.entries.push_back({0, offset + pidx, offset + qidx, 1.0});
            cr.rhs = 0.0;
            ci.entries.push_back({0, offset + pidx, offset + qidx, cxd(0, 1)});
            ci.rhs = 0.0;
            p.constraints.push_back(std::move(cr));
            p.constraints.push_back(std::move(ci));
          }
        }
}

}  // namespace

DiamondResult diamond_norm_full(const SuperOp& op) {
  const int n = op.n_in, m = op.n_out;
  const int D = n * m;

  SemidefiniteProgram p;
  p.maximize = true;
  p.block_dims = {2 * D, n, n};
  p.objective.resize(3);
  CMat C0 = CMat::Zero(2 * D, 2 * D);
  C0.block(0, D, D, D) = 0.5 * op.choi;
  C0.block(D, 0, D, D) = 0.5 * op.choi.adjoint();
  p.objective[0] = C0;
  p.objective[1] = CMat::Zero(n, n);
  p.objective[2] = CMat::Zero(n, n);

  add_corner_constraints(p, 0, 1, n, m);
  add_corner_constraints(p, D, 2, n, m);
  for (int rho = 1; rho <= 2; ++rho) {
    SdpConstraint tr1;
    for (int i = 0; i < n; ++i) tr1.entries.push_back({rho, i, i, 1.0});
    tr1.rhs = 1.0;
    p.constraints.push_back(std::move(tr1));
  }

  SdpResult r = sdp_solve(p);
  if (r.status != SolveStatus::Optimal)
    throw SolverError("diamond_norm: SDP " + to_string(r.status) + " (" + r.diagnostics + ")");
  double tl = trace_norm(op.choi) / n;
  if (r.optimum < tl - 1e-7)
    throw SolverError("diamond_norm: value below trace-norm lower bound");
  return {r.optimum, r.gap, r.iterations};
}

double diamond_norm(const SuperOp& op) { return diamond_norm_full(op).value; }

double cb_norm(const SuperOp& op) { return diamond_norm(adjoint(op)); }

double dec_norm_covariant(int n, int k, double s0, double t0) {
  if (k < 1 || k > n) throw std::invalid_argument("dec_norm_covariant: k must lie in [1, n]");
  const double nn = double(n) * n, nk = double(n) * k;
  // Gamma(n,k) is the cone spanned by the extreme rays r1 = (-1, n^2) and
  // r2 = (nk-1, n^2-nk); both have s+t = n^2-1. Writing (s_i, t_i) =
  // a_i r1 + b_i r2 with a_i, b_i >= 0 gives a four-variable nonnegative LP
  // with objective (n^2-1)(a1+b1+a2+b2).
  LinearProgram p = LinearProgram::make(4, 2);
  p.objective << 1, 1, 1, 1;
  p.objective *= nn - 1.0;
  for (int j = 0; j < 4; ++j) p.lower(j) = 0.0;
  // s1 - s2 = s0
  p.constraints.row(0) << -1.0, nk - 1.0, 1.0, -(nk - 1.0);
  p.rhs(0) = s0;
  // t1 - t2 = t0
  p.constraints.row(1) << nn, nn - nk, -nn, -(nn - nk);
  p.rhs(1) = t0;
  SolverResult res = lp_solve(p);
  if (res.status != SolveStatus::Optimal)
    throw SolverError("dec_norm_covariant: LP " + to_string(res.status));
  return res.optimum;
}

double omin_norm_estimate(const CMat& X, int n, int k, const OminConfig& cfg) {
  if (X.rows() != X.cols() || X.rows() % n != 0)
    throw ShapeError("omin_norm_estimate: side must be divisible by n");
  const int m = int(X.rows()) / n;
  if (k >= n) return operator_norm(X);  // P = I is forced

  const int nk = n * k;
  CMat Xt = kron(X, CMat::Identity(k, k));  // acts on C^m (x) C^n (x) C^k
  CMat Im = CMat::Identity(m, m);

  std::vector<double> vals(cfg.restarts, 0.0);
  parallel_for(cfg.restarts, [&](std::int64_t rr) {
    Rng rng(derive_seed(cfg.seed, std::uint64_t(rr)));
    CMat V = rng.haar_isometry(nk, k);
    double best = 0.0, prev = -1.0;
    for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
      CMat T = kron(Im, V);
      CMat M = T.adjoint() * Xt * T;
      Eigen::JacobiSVD<CMat> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
      double val = svd.singularValues()(0);
      best = std::max(best, val);
      if (val - prev < cfg.tol) break;
      prev = val;
      CVec w = svd.matrixU().col(0), z = svd.matrixV().col(0);
      CVec y = Xt * (T * z);
      CMat F = CMat::Zero(nk, k);
      for (int i = 0; i < m; ++i)
        F += y.segment(Eigen::Index(i) * nk, nk) * w.segment(Eigen::Index(i) * k, k).adjoint();
      Eigen::JacobiSVD<CMat> pol(F, Eigen::ComputeThinU | Eigen::ComputeThinV);
      V = pol.matrixU() * pol.matrixV().adjoint();
    }
    vals[rr] = best;
  });
  double best = 0.0;
  for (double v : vals) best = std::max(best, v);
  return best;
}

NormReport norm_bound_checks(const SuperOp& op, int samples, std::uint64_t seed) {
  if (op.n_in != op.n_out) throw ShapeError("norm_bound_checks: map must be square");
  const int n = op.n_in;
  NormReport rep;
  DiamondResult cbr = diamond_norm_full(adjoint(op));
  rep.cb = cbr.value;
  rep.solver_gap = cbr.gap;
  rep.diamond = diamond_norm(op);
  rep.trace_lower_bound = trace_norm(op.choi) / n;

  std::vector<double> vals(samples, 0.0);
  parallel_for(samples, [&](std::int64_t i) {
    Rng rng(derive_seed(seed, std::uint64_t(i)));
    CMat Y = rng.gaussian_matrix(n * n, n * n);
    Y /= operator_norm(Y);
    CMat Z(Eigen::Index(n) * n, Eigen::Index(n) * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        Z.block(Eigen::Index(a) * n, Eigen::Index(b) * n, n, n) =
            kpos::apply(op, Y.block(Eigen::Index(a) * n, Eigen::Index(b) * n, n, n));
    vals[i] = operator_norm(Z);
  });
  for (double v : vals) rep.sampled_operator_lower_bound = std::max(rep.sampled_operator_lower_bound, v);
  if (rep.sampled_operator_lower_bound > rep.cb + 1e-6)
    throw NumericalError("norm_bound_checks: sampled lower bound exceeds cb norm");
  return rep;
}

nlohmann::json report_to_json(const NormReport& r) {
  nlohmann::json j;
  j["schema"] = kSchemaTag;
  j["cb"] = r.cb;
  j["diamond"] = r.diamond;
  j["trace_lower_bound"] = r.trace_lower_bound;
  j["sampled_operator_lower_bound"] = r.sampled_operator_lower_bound;
  j["solver_gap"] = r.solver_gap;
  return j;
}

}  // namespace kpos
