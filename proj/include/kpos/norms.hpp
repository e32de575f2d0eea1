#ifndef KPOS_NORMS_HPP
#define KPOS_NORMS_HPP

#include <cstdint>

#include <nlohmann/json_fwd.hpp>

#include "kpos/maps.hpp"
#include "kpos/solver.hpp"

namespace kpos {

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DiamondResult {
  double value = 0.0;
  double gap = 0.0;
  int iterations = 0;
};

// Completely bounded trace norm via the SDP
//   max Re tr(X^dag J)  s.t.  [[rho0 (x) I, X], [X^dag, rho1 (x) I]] >= 0,
//   tr rho0 = tr rho1 = 1, rho_i >= 0 on the input space.
DiamondResult diamond_norm_full(const SuperOp& op);
double diamond_norm(const SuperOp& op);

// cb norm through the adjoint's diamond SDP (||Phi||_cb = ||Phi*||_diamond).
double cb_norm(const SuperOp& op);

// Decomposition norm of phi_{s0,t0} : OMIN_k(M_n) -> M_n via the covariant LP
//   min (s1+t1)+(s2+t2)  s.t.  s1-s2 = s0, t1-t2 = t0, (si,ti) in Gamma(n,k).
// For k = n this is the cb/dec norm of phi_{s0,t0} on M_n.
double dec_norm_covariant(int n, int k, double s0, double t0);

struct OminConfig {
  int restarts = 50;
  int max_sweeps = 100;
  double tol = 1e-10;
  std::uint64_t seed = 1;
};

// Lower bound on max_P ||(I_m (x) P)(X (x) I_k)(I_m (x) P)|| over rank-k
// projections P on C^{nk}, by see-saw over isometries with QR retraction.
double omin_norm_estimate(const CMat& X, int n, int k, const OminConfig& cfg = {});

struct NormReport {
  double cb = 0.0;
  double diamond = 0.0;
  double trace_lower_bound = 0.0;            // (1/n) ||J||_1
  double sampled_operator_lower_bound = 0.0; // sampled lower bound on ||id_n (x) Phi||
  double solver_gap = 0.0;
};

NormReport norm_bound_checks(const SuperOp& op, int samples = 25, std::uint64_t seed = 1);

nlohmann::json report_to_json(const NormReport& r);

}  // namespace kpos

#endif
