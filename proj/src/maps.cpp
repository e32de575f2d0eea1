#include "kpos/maps.hpp"

#include <nlohmann/json.hpp>

#include "kpos/json_io.hpp"

namespace kpos {

SuperOp from_apply(int n_in, int n_out, const std::function<CMat(const CMat&)>& f) {
  SuperOp op;
  op.n_in = n_in;
  op.n_out = n_out;
  op.choi = CMat::Zero(Eigen::Index(n_in) * n_out, Eigen::Index(n_in) * n_out);
  for (int i = 0; i < n_in; ++i)
    for (int j = 0; j < n_in; ++j) {
      CMat Eij = CMat::Zero(n_in, n_in);
      Eij(i, j) = 1.0;
      CMat img = f(Eij);
      if (img.rows() != n_out || img.cols() != n_out)
        throw ShapeError("from_apply: map image has wrong shape");
      op.choi.block(Eigen::Index(i) * n_out, Eigen::Index(j) * n_out, n_out, n_out) = img;
    }
  return op;
}

CMat apply(const SuperOp& op, const CMat& X) {
  if (X.rows() != op.n_in || X.cols() != op.n_in)
    throw ShapeError("apply: input must be n_in x n_in");
  // Phi(X) = Tr_first[(X^T (x) I) J] = sum_ij X_ij * block(i,j)
  CMat Y = CMat::Zero(op.n_out, op.n_out);
  for (int i = 0; i < op.n_in; ++i)
    for (int j = 0; j < op.n_in; ++j)
      Y += X(i, j) * op.choi.block(Eigen::Index(i) * op.n_out, Eigen::Index(j) * op.n_out,
                                   op.n_out, op.n_out);
  return Y;
}

SuperOp adjoint(const SuperOp& op) {
  // Phi*(A) = sum_kl <Phi(E_kl), A> E_kl under the Hilbert-Schmidt pairing.
  const SuperOp& src = op;
  return from_apply(op.n_out, op.n_in, [&src](const CMat& A) {
    CMat R = CMat::Zero(src.n_in, src.n_in);
    for (int k = 0; k < src.n_in; ++k)
      for (int l = 0; l < src.n_in; ++l) {
        CMat blk = src.choi.block(Eigen::Index(k) * src.n_out, Eigen::Index(l) * src.n_out,
                                  src.n_out, src.n_out);
        R(k, l) = (blk.adjoint() * A).trace();
      }
    return R;
  });
}

SuperOp compose(const SuperOp& phi, const SuperOp& psi) {
  if (psi.n_out != phi.n_in) throw ShapeError("compose: dimension mismatch");
  return from_apply(psi.n_in, phi.n_out,
                    [&](const CMat& X) { return kpos::apply(phi, kpos::apply(psi, X)); });
}

bool is_unital(const SuperOp& op, double tol) {
  CMat PhiI = partial_trace(op.choi, op.n_in, op.n_out, TensorFactor::First);
  return operator_norm(PhiI - CMat::Identity(op.n_out, op.n_out)) <= tol;
}

bool is_trace_preserving(const SuperOp& op, double tol) {
  CMat Tr = partial_trace(op.choi, op.n_in, op.n_out, TensorFactor::Second);
  return operator_norm(Tr - CMat::Identity(op.n_in, op.n_in)) <= tol;
}

SuperOp identity_map(int n) {
  SuperOp op;
  op.n_in = op.n_out = n;
  CVec chi = max_entangled(n);
  op.choi = chi * chi.adjoint();
  return op;
}

SuperOp transpose_map(int n) {
  return from_apply(n, n, [](const CMat& X) { return X.transpose().eval(); });
}

CovariantMap covariant(int n, double s, double t) { return {n, s, t}; }

CovariantMap tomiyama(int n, int k) {
  if (Eigen::Index(n) * k <= 1) throw std::invalid_argument("tomiyama: requires nk > 1");
  double d = double(n) * k - 1.0;
  return {n, -1.0 / d, 1.0 + 1.0 / d};
}

SuperOp to_superop(const CovariantMap& cm) {
  SuperOp op;
  op.n_in = op.n_out = cm.n;
  CVec chi = max_entangled(cm.n);
  op.choi = cm.s * (chi * chi.adjoint()).eval() +
            (cm.t / cm.n) * CMat::Identity(chi.size(), chi.size());
  return op;
}

CovariantMap project_covariant(const SuperOp& op) {
  if (op.n_in != op.n_out) throw ShapeError("project_covariant: map must be square");
  const int n = op.n_in;
  CVec chi = max_entangled(n);
  double a = (chi.adjoint() * op.choi * chi).value().real();  // s n^2 + t
  double tr = op.choi.trace().real();                          // n (s + t)
  double s = (a - tr / n) / (double(n) * n - 1.0);
  double t = tr / n - s;
  return {n, s, t};
}

bool is_covariant(const SuperOp& op, double tol) {
  if (op.n_in != op.n_out) return false;
  CovariantMap cm = project_covariant(op);
  CMat diff = op.choi - to_superop(cm).choi;
  double scale = 1.0 + op.choi.cwiseAbs().maxCoeff();
  return diff.cwiseAbs().maxCoeff() <= tol * scale;
}

nlohmann::json superop_to_json(const SuperOp& op) {
  nlohmann::json j;
  j["n_in"] = op.n_in;
  j["n_out"] = op.n_out;
  j["choi"] = matrix_to_json(op.choi);
  return j;
}

SuperOp superop_from_json(const nlohmann::json& j) {
  SuperOp op;
  op.n_in = j.at("n_in").get<int>();
  op.n_out = j.at("n_out").get<int>();
  op.choi = matrix_from_json(j.at("choi"));
  if (op.choi.rows() != Eigen::Index(op.n_in) * op.n_out)
    throw ShapeError("superop_from_json: choi side != n_in*n_out");
  return op;
}

}  // namespace kpos
