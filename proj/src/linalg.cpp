#include "kpos/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace kpos {

bool all_finite(const CMat& M) { return M.allFinite(); }

bool is_hermitian(const CMat& M, double tol) {
  if (M.rows() != M.cols()) return false;
  double scale = 1.0 + M.cwiseAbs().maxCoeff();
  return (M - M.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

CMat kron(const CMat& A, const CMat& B) {
  const auto r = A.rows() * B.rows();
  const auto c = A.cols() * B.cols();
  if (r > kMaxMatrixSide || c > kMaxMatrixSide)
    throw ShapeError("kron: result exceeds max matrix size");
  CMat K(r, c);
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return K;
}

CMat partial_trace(const CMat& M, int n, int m, TensorFactor factor) {
  if (M.rows() != M.cols() || M.rows() != Eigen::Index(n) * m)
    throw ShapeError("partial_trace: side must equal n*m");
  if (factor == TensorFactor::Second) {
    CMat R = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int a = 0; a < m; ++a) R(i, j) += M(i * m + a, j * m + a);
    return R;
  }
  CMat R = CMat::Zero(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int i = 0; i < n; ++i) R(a, b) += M(i * m + a, i * m + b);
  return R;
}

CMat partial_transpose(const CMat& M, int n, int m, TensorFactor factor) {
  if (M.rows() != M.cols() || M.rows() != Eigen::Index(n) * m)
    throw ShapeError("partial_transpose: side must equal n*m");
  CMat R(M.rows(), M.cols());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
          if (factor == TensorFactor::First)
            R(i * m + a, j * m + b) = M(j * m + a, i * m + b);
          else
            R(i * m + a, j * m + b) = M(i * m + b, j * m + a);
        }
  return R;
}

HermEig eig_hermitian(const CMat& M) {
  if (!is_hermitian(M)) throw ShapeError("eig_hermitian: input not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMat> es(M);
  if (es.info() != Eigen::Success)
    throw NumericalError("eig_hermitian: eigensolver failed to converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

double operator_norm(const CMat& M) {
  if (M.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(M);
  if (svd.info() != Eigen::Success) throw NumericalError("operator_norm: SVD failed");
  return svd.singularValues()(0);
}

double trace_norm(const CMat& M) {
  if (M.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(M);
  if (svd.info() != Eigen::Success) throw NumericalError("trace_norm: SVD failed");
  return svd.singularValues().sum();
}

CVec max_entangled(int n) {
  CVec chi = CVec::Zero(Eigen::Index(n) * n);
  for (int i = 0; i < n; ++i) chi(i * n + i) = 1.0;
  return chi;
}

RVec schmidt_coefficients(const CVec& xi, int n, int m) {
  if (xi.size() != Eigen::Index(n) * m)
    throw ShapeError("schmidt_coefficients: length must equal n*m");
  CMat R(n, m);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < m; ++a) R(i, a) = xi(i * m + a);
  Eigen::JacobiSVD<CMat> svd(R);
  return svd.singularValues();
}

int schmidt_rank(const CVec& xi, int n, int m, double tol) {
  RVec sv = schmidt_coefficients(xi, n, m);
  if (sv.size() == 0) return 0;
  double cutoff = tol * std::max(1.0, sv(0));
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++r;
  return r;
}

}  // namespace kpos
