#include <cmath>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "kpos/solver.hpp"

namespace kpos {

CMat sdp_coefficient_dense(const SdpConstraint& c, int block, int dim) {
  CMat A = CMat::Zero(dim, dim);
  for (const auto& e : c.entries) {
    if (e.block != block) continue;
    if (e.row == e.col) {
      A(e.row, e.col) += e.value.real();
    } else {
      A(e.row, e.col) += e.value;
      A(e.col, e.row) += std::conj(e.value);
    }
  }
  return A;
}

namespace {

using BlockMat = std::vector<CMat>;

double block_dot(const BlockMat& A, const BlockMat& B) {
  double s = 0.0;
  for (size_t b = 0; b < A.size(); ++b) s += (A[b].adjoint() * B[b]).trace().real();
  return s;
}

double block_fro(const BlockMat& A) {
  double s = 0.0;
  for (const auto& M : A) s += M.squaredNorm();
  return std::sqrt(s);
}

// Largest alpha with X + alpha*dX psd, via eigmin of L^-1 dX L^-H.
double psd_max_step(const BlockMat& X, const BlockMat& dX) {
  double alpha = std::numeric_limits<double>::infinity();
  for (size_t b = 0; b < X.size(); ++b) {
    Eigen::LLT<CMat> llt(X[b]);
    if (llt.info() != Eigen::Success) return 0.0;
    CMat L = llt.matrixL();
    CMat T = L.triangularView<Eigen::Lower>().solve(dX[b]);
    T = L.triangularView<Eigen::Lower>().solve(T.adjoint()).adjoint();
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (T + T.adjoint()), Eigen::EigenvaluesOnly);
    double lmin = es.eigenvalues().minCoeff();
    if (lmin < 0) alpha = std::min(alpha, -1.0 / lmin);
  }
  return alpha;
}

double constraint_eval(const SdpConstraint& c, const BlockMat& X) {
  double s = 0.0;
  for (const auto& e : c.entries) {
    if (e.row == e.col)
      s += e.value.real() * X[e.block](e.row, e.col).real();
    else
      s += 2.0 * std::real(std::conj(e.value) * X[e.block](e.row, e.col));
  }
  return s;
}

// tr(A_j W) for Hermitian A_j given sparsely and general (non-Hermitian) W.
double constraint_trace(const SdpConstraint& c, const BlockMat& W) {
  cxd s = 0.0;
  for (const auto& e : c.entries) {
    if (e.row == e.col)
      s += e.value.real() * W[e.block](e.row, e.col);
    else
      s += e.value * W[e.block](e.col, e.row) + std::conj(e.value) * W[e.block](e.row, e.col);
  }
  return s.real();
}

}  // namespace

SdpResult sdp_solve(const SemidefiniteProgram& p, const SdpOptions& opts) {
  const int nb = int(p.block_dims.size());
  const int m = int(p.constraints.size());
  int total_dim = 0;
  for (int d : p.block_dims) total_dim += d;

  // Internal convention: min <C,X>. A maximization negates C and flips back.
  double obj_sign = p.maximize ? -1.0 : 1.0;
  BlockMat C(nb);
  for (int b = 0; b < nb; ++b) {
    if (p.objective[b].rows() != p.block_dims[b])
      throw ShapeError("sdp_solve: objective block dimension mismatch");
    if (!is_hermitian(p.objective[b]))
      throw ShapeError("sdp_solve: objective block not Hermitian");
    C[b] = obj_sign * 0.5 * (p.objective[b] + p.objective[b].adjoint());
  }

  RVec b_vec(m);
  // Dense per-block coefficients, cached; only blocks actually touched.
  std::vector<std::vector<std::pair<int, CMat>>> Adense(m);
  for (int i = 0; i < m; ++i) {
    b_vec(i) = p.constraints[i].rhs;
    std::vector<bool> touched(nb, false);
    for (const auto& e : p.constraints[i].entries) touched[e.block] = true;
    for (int b = 0; b < nb; ++b)
      if (touched[b])
        Adense[i].emplace_back(b, sdp_coefficient_dense(p.constraints[i], b, p.block_dims[b]));
  }

  double data_scale = std::max(1.0, b_vec.size() ? b_vec.cwiseAbs().maxCoeff() : 1.0);
  data_scale = std::max(data_scale, block_fro(C));
  BlockMat X(nb), S(nb);
  for (int b = 0; b < nb; ++b) {
    X[b] = data_scale * CMat::Identity(p.block_dims[b], p.block_dims[b]);
    S[b] = data_scale * CMat::Identity(p.block_dims[b], p.block_dims[b]);
  }
  RVec y = RVec::Zero(m);

  SdpResult res;
  double b_norm = 1.0 + b_vec.norm();
  double c_norm = 1.0 + block_fro(C);

  // Near-optimal fallback: the best iterate inside loosened (but still well
  // below acceptance-level) tolerances, returned if the strict ones are never
  // met simultaneously.
  bool have_near = false;
  double near_score = std::numeric_limits<double>::infinity();
  SdpResult near;

  for (int it = 1; it <= opts.max_iterations; ++it) {
    RVec rp(m);
    for (int i = 0; i < m; ++i) rp(i) = b_vec(i) - constraint_eval(p.constraints[i], X);
    BlockMat Rd(nb);
    for (int b = 0; b < nb; ++b) {
      Rd[b] = C[b] - S[b];
      for (int i = 0; i < m; ++i)
        for (const auto& [blk, A] : Adense[i])
          if (blk == b) Rd[b] -= y(i) * A;
    }
    double mu = block_dot(X, S) / total_dim;
    double pobj = block_dot(C, X), dobj = b_vec.dot(y);
    double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    double pinf = rp.norm() / b_norm;
    double dinf = block_fro(Rd) / c_norm;

    res.gap = gap;
    res.iterations = it;
    if (gap <= opts.gap_tol && pinf <= opts.feas_tol && dinf <= 10 * opts.feas_tol) {
      res.status = SolveStatus::Optimal;
      res.optimum = obj_sign * pobj;
      res.primal = X;
      res.dual = obj_sign * y;
      return res;
    }
    if (gap <= opts.gap_tol && pinf <= 1e-8 && dinf <= 1e-6) {
      double score = gap + pinf + dinf;
      if (score < near_score) {
        near_score = score;
        have_near = true;
        near = res;
        near.status = SolveStatus::Optimal;
        near.optimum = obj_sign * pobj;
        near.primal = X;
        near.dual = obj_sign * y;
        near.gap = gap;
        near.iterations = it;
      }
    }
    if (!std::isfinite(mu) || mu > 1e18 * data_scale) break;
    if (mu < 1e-14 * data_scale && pinf > 1e-6) {
      res.status = SolveStatus::Infeasible;
      res.diagnostics = "complementarity vanished with primal residual " + std::to_string(pinf);
      return res;
    }

    // Per-block S^-1 and Cholesky of X.
    BlockMat Sinv(nb);
    for (int b = 0; b < nb; ++b) {
      Eigen::LLT<CMat> llt(S[b]);
      if (llt.info() != Eigen::Success) {
        if (have_near) return near;
        res.status = SolveStatus::MaxIterations;
        res.diagnostics = "dual iterate lost positive definiteness at iteration " + std::to_string(it);
        res.optimum = obj_sign * pobj;
        return res;
      }
      Sinv[b] = llt.solve(CMat::Identity(S[b].rows(), S[b].cols()));
    }

    // HKM Schur complement M_ij = Re tr(A_i Sinv A_j X), symmetrized.
    std::vector<BlockMat> W(m);  // W_i = Sinv A_i X per touched block
    for (int i = 0; i < m; ++i) {
      W[i].assign(nb, CMat());
      for (const auto& [blk, A] : Adense[i]) W[i][blk] = Sinv[blk] * A * X[blk];
    }
    Eigen::MatrixXd Ms = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        double v = 0.0;
        for (const auto& e : p.constraints[j].entries) {
          const CMat& Wi = W[i][e.block];
          if (Wi.size() == 0) continue;
          if (e.row == e.col)
            v += e.value.real() * Wi(e.row, e.col).real();
          else
            v += std::real(e.value * Wi(e.col, e.row) + std::conj(e.value) * Wi(e.row, e.col));
        }
        Ms(i, j) = v;
      }
    }
    Ms = 0.5 * (Ms + Ms.transpose()).eval();
    Ms.diagonal().array() += 1e-13 * (1.0 + Ms.diagonal().cwiseAbs().maxCoeff());
    Eigen::LDLT<Eigen::MatrixXd> schur(Ms);

    auto direction = [&](double sigma_mu, const BlockMat* K) {
      // Linearized S X complementarity: S dX + dS X = sigma_mu I - S X - K
      // with K = dS_aff dX_aff, giving
      // rhs_i = b_i - sigma_mu tr(A_i Sinv) + tr(A_i Sinv K) + tr(A_i Sinv Rd X).
      RVec rhs(m);
      BlockMat SinvRdX(nb), SinvK(nb);
      for (int b = 0; b < nb; ++b) {
        SinvRdX[b] = Sinv[b] * Rd[b] * X[b];
        if (K) SinvK[b] = Sinv[b] * (*K)[b];
      }
      for (int i = 0; i < m; ++i) {
        double v = b_vec(i);
        for (const auto& [blk, A] : Adense[i]) {
          v -= sigma_mu * (A * Sinv[blk]).trace().real();
          v += (A * SinvRdX[blk]).trace().real();
          if (K) v += (A * SinvK[blk]).trace().real();
        }
        rhs(i) = v;
      }
      RVec dy = schur.solve(rhs);
      BlockMat dS(nb), dX(nb);
      for (int b = 0; b < nb; ++b) {
        dS[b] = Rd[b];
        for (int i = 0; i < m; ++i)
          for (const auto& [blk, A] : Adense[i])
            if (blk == b) dS[b] -= dy(i) * A;
        CMat T = sigma_mu * Sinv[b] - X[b] - Sinv[b] * dS[b] * X[b];
        if (K) T -= Sinv[b] * (*K)[b];
        dX[b] = 0.5 * (T + T.adjoint());
      }
      return std::make_tuple(dX, dy, dS);
    };

    // predictor
    auto [dXa, dya, dSa] = direction(0.0, nullptr);
    double ap = std::min(1.0, 0.98 * psd_max_step(X, dXa));
    double ad = std::min(1.0, 0.98 * psd_max_step(S, dSa));
    BlockMat Xa(nb), Sa(nb);
    for (int b = 0; b < nb; ++b) {
      Xa[b] = X[b] + ap * dXa[b];
      Sa[b] = S[b] + ad * dSa[b];
    }
    double mu_aff = block_dot(Xa, Sa) / total_dim;
    double sigma = std::pow(std::clamp(mu_aff / mu, 0.0, 1.0), 3.0);

    // corrector with Mehrotra second-order term
    BlockMat K(nb);
    for (int b = 0; b < nb; ++b) K[b] = dSa[b] * dXa[b];
    auto [dX, dy, dS] = direction(sigma * mu, &K);
    double fp = std::min(1.0, 0.98 * psd_max_step(X, dX));
    double fd = std::min(1.0, 0.98 * psd_max_step(S, dS));
    if (fp <= 1e-10 && fd <= 1e-10) {
      if (have_near) return near;
      res.status = SolveStatus::MaxIterations;
      res.diagnostics = "step length collapsed at iteration " + std::to_string(it);
      res.optimum = obj_sign * pobj;
      res.primal = X;
      return res;
    }
    for (int b = 0; b < nb; ++b) {
      X[b] += fp * dX[b];
      S[b] += fd * dS[b];
    }
    y += fd * dy;
  }

  if (have_near) return near;
  res.status = SolveStatus::MaxIterations;
  res.primal = X;
  res.optimum = obj_sign * block_dot(C, X);
  std::ostringstream os;
  os << "no convergence within " << opts.max_iterations << " iterations, gap " << res.gap;
  res.diagnostics = os.str();
  return res;
}

}  // namespace kpos
