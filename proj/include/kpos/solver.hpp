#ifndef KPOS_SOLVER_HPP
#define KPOS_SOLVER_HPP

#include <string>
#include <vector>

#include "kpos/linalg.hpp"

namespace kpos {

enum class SolveStatus { Optimal, Infeasible, Unbounded, MaxIterations };

std::string to_string(SolveStatus s);

struct SolverResult {
  SolveStatus status = SolveStatus::MaxIterations;
  double optimum = 0.0;
  RVec primal;
  RVec dual;
  double gap = 0.0;  // relative duality gap at termination
  int iterations = 0;
};

// ---------------------------------------------------------------------------
// Linear programs
// ---------------------------------------------------------------------------

enum class RowSense { LE, EQ, GE };

struct LinearProgram {
  RVec objective;                 // c
  Eigen::MatrixXd constraints;    // A, rows match senses/rhs
  RVec rhs;                       // b
  std::vector<RowSense> senses;
  RVec lower;                     // per-variable, -inf allowed
  RVec upper;                     // per-variable, +inf allowed
  bool maximize = false;

  static LinearProgram make(int nvars, int nrows);
};

struct LpOptions {
  int max_iterations = 200;
  double gap_tol = 1e-9;
  double feas_tol = 1e-9;
};

SolverResult lp_solve(const LinearProgram& p, const LpOptions& opts = {});

// ---------------------------------------------------------------------------
// Semidefinite programs
// ---------------------------------------------------------------------------

// A constraint/objective coefficient is a Hermitian block-diagonal matrix,
// stored sparsely: each entry contributes value*E_rc + conj(value)*E_cr for
// r < c, or Re(value)*E_rr on the diagonal, inside the given block.
struct SdpEntry {
  int block;
  int row;
  int col;
  cxd value;
};

struct SdpConstraint {
  std::vector<SdpEntry> entries;
  double rhs;
};

struct SemidefiniteProgram {
  std::vector<int> block_dims;
  std::vector<CMat> objective;  // one Hermitian matrix per block
  std::vector<SdpConstraint> constraints;
  bool maximize = false;
};

struct SdpOptions {
  int max_iterations = 200;
  double gap_tol = 1e-8;
  double feas_tol = 1e-9;
};

struct SdpResult {
  SolveStatus status = SolveStatus::MaxIterations;
  double optimum = 0.0;
  std::vector<CMat> primal;  // X blocks
  RVec dual;                 // y
  double gap = 0.0;
  int iterations = 0;
  std::string diagnostics;
};

SdpResult sdp_solve(const SemidefiniteProgram& p, const SdpOptions& opts = {});

// Dense Hermitian view of one constraint's coefficient in a given block.
CMat sdp_coefficient_dense(const SdpConstraint& c, int block, int dim);

}  // namespace kpos

#endif
