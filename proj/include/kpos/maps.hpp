#ifndef KPOS_MAPS_HPP
#define KPOS_MAPS_HPP

#include <functional>

#include <nlohmann/json_fwd.hpp>

#include "kpos/linalg.hpp"

namespace kpos {

// Linear map M_{n_in} -> M_{n_out} stored by its Choi matrix with the input
// factor first: block (i,j) of choi is Phi(E_ij), i.e. the image of the
// unnormalized maximally entangled state under id (x) Phi.
struct SuperOp {
  int n_in = 0;
  int n_out = 0;
  CMat choi;

  bool hermitian_preserving(double tol = 1e-10) const { return is_hermitian(choi, tol); }
};

// phi_{s,t}(X) = s X + t tr(X)/n I_n; Choi matrix s|chi><chi| + (t/n) I.
struct CovariantMap {
  int n = 0;
  double s = 0.0;
  double t = 0.0;
};

SuperOp from_apply(int n_in, int n_out, const std::function<CMat(const CMat&)>& f);
CMat apply(const SuperOp& op, const CMat& X);
SuperOp adjoint(const SuperOp& op);
SuperOp compose(const SuperOp& phi, const SuperOp& psi);  // phi after psi

bool is_unital(const SuperOp& op, double tol = 1e-9);
bool is_trace_preserving(const SuperOp& op, double tol = 1e-9);

SuperOp identity_map(int n);
SuperOp transpose_map(int n);
CovariantMap covariant(int n, double s, double t);
CovariantMap tomiyama(int n, int k);  // s = -1/(nk-1), t = 1 + 1/(nk-1)
SuperOp to_superop(const CovariantMap& cm);

// Covariant component of a square map: the twirl over Ad_U, recovered from
// tr(J |chi><chi|) = s n^2 + t and tr(J) = n (s + t).
CovariantMap project_covariant(const SuperOp& op);

// True when the map equals its covariant projection within tol (relative).
bool is_covariant(const SuperOp& op, double tol = 1e-10);

nlohmann::json superop_to_json(const SuperOp& op);
SuperOp superop_from_json(const nlohmann::json& j);

}  // namespace kpos

#endif
