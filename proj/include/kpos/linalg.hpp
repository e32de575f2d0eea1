#ifndef KPOS_LINALG_HPP
#define KPOS_LINALG_HPP

#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace kpos {

using cxd = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

inline constexpr int kMaxMatrixSide = 4096;

struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class TensorFactor { First, Second };

// True when max_ij |M_ij - conj(M_ji)| <= tol * (1 + max entry magnitude).
bool is_hermitian(const CMat& M, double tol = 1e-12);

bool all_finite(const CMat& M);

CMat kron(const CMat& A, const CMat& B);

// Trace over one tensor factor of an operator on C^n (x) C^m.
CMat partial_trace(const CMat& M, int n, int m, TensorFactor factor);

// Transpose of the indicated factor's indices; involutive.
CMat partial_transpose(const CMat& M, int n, int m, TensorFactor factor);

struct HermEig {
  RVec eigenvalues;   // ascending
  CMat eigenvectors;  // columns, unitary
};

HermEig eig_hermitian(const CMat& M);

double operator_norm(const CMat& M);
double trace_norm(const CMat& M);

// Unnormalized maximally entangled vector chi = sum_i e_i (x) e_i on C^n (x) C^n.
CVec max_entangled(int n);

// Singular values of the n x m reshaping of a bipartite vector, descending.
RVec schmidt_coefficients(const CVec& xi, int n, int m);

int schmidt_rank(const CVec& xi, int n, int m, double tol = 1e-9);

}  // namespace kpos

#endif
