#ifndef KPOS_CONES_HPP
#define KPOS_CONES_HPP

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "kpos/maps.hpp"
#include "kpos/rational.hpp"

namespace kpos {

enum class Verdict { Certified, Refuted, Inconclusive };
enum class VerdictMethod { CovariantExact, ChoiPSD, SeeSawWitness, SeeSawExhausted };

std::string to_string(Verdict v);
std::string to_string(VerdictMethod m);

struct ConeVerdict {
  Verdict verdict = Verdict::Inconclusive;
  VerdictMethod method = VerdictMethod::SeeSawExhausted;
  std::optional<CVec> witness;      // unit vector on C^n (x) C^m
  std::optional<CMat> witness_op;   // k-block-positive test operator (PEB refutations)
  std::optional<double> value;      // <xi|W|xi> or tr(J W)
  int schmidt_rank = 0;
};

struct SeeSawConfig {
  int restarts = 20;
  int max_sweeps = 200;
  double improvement_tol = 1e-10;
  std::uint64_t seed = 1;
};

// Gamma region of covariant k-PEB maps:
//   s + t >= 0,  -(s+t)/(n^2-1) <= s <= (s+t)(nk-1)/(n^2-1).
bool covariant_kpeb_contains(int n, int k, const Rational& s, const Rational& t);
bool covariant_kpeb_contains(int n, int k, double s, double t, double slack = 1e-12);

// Dual region of covariant k-positive maps: t >= 0 and s*n*k + t >= 0.
bool covariant_kpos_contains(int n, int k, const Rational& s, const Rational& t);
bool covariant_kpos_contains(int n, int k, double s, double t, double slack = 1e-12);

// Alternating minimization of <xi|W|xi> over unit vectors of Schmidt rank <= k
// on C^n (x) C^m. Returns the best witness found with value < -1e-10, or
// nullopt. Sound for refutation only.
struct WitnessResult {
  CVec witness;
  double value;
  int schmidt_rank;
};
std::optional<WitnessResult> schmidt_witness_search(const CMat& W, int n, int m, int k,
                                                    const SeeSawConfig& cfg);

// Best (lowest) value found by the see-saw regardless of sign; used for
// consistency checks where the minimum is expected to be nonnegative.
double schmidt_min_value(const CMat& W, int n, int m, int k, const SeeSawConfig& cfg);

ConeVerdict is_k_positive(const SuperOp& op, int k, const SeeSawConfig& cfg = {});
ConeVerdict is_k_peb(const SuperOp& op, int k, const SeeSawConfig& cfg = {});

nlohmann::json verdict_to_json(const ConeVerdict& v);

}  // namespace kpos

#endif
