#ifndef KPOS_RANDGEN_HPP
#define KPOS_RANDGEN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "kpos/cones.hpp"
#include "kpos/maps.hpp"

namespace kpos {

// p x p GUE matrix: real N(0,1) diagonal, (g + ih)/sqrt(2) off-diagonal,
// exactly Hermitian by construction; reproducible from the seed.
CMat gue(int p, std::uint64_t seed);

struct WidthEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  int samples = 0;
};

// Monte-Carlo mean of the operator norm of GUE samples; equals the Gaussian
// mean width of the trace-norm unit ball of M_p^{sa}.
WidthEstimate mean_width_trace_ball(int p, int samples, std::uint64_t seed);

struct DiamondWidthReport {
  int n = 0;
  int samples = 0;
  double lower_estimate = 0.0;  // mean of per-sample maxima over the family
  double standard_error = 0.0;
  double upper_bound = 0.0;     // 2 n^2
};

// Lower estimate of the mean width of the diamond-norm unit ball from a
// family of named and covariant maps rescaled to diamond norm one.
DiamondWidthReport diamond_ball_width_check(int n, int samples, std::uint64_t seed);

enum class CertFlag { CertifiedCovariant, CertifiedPsd, Heuristic };
std::string to_string(CertFlag f);

struct RandomMapResult {
  SuperOp map;
  double epsilon = 0.0;
  CertFlag flag = CertFlag::Heuristic;
};

// Random map on the boundary of the k-positive trace-preserving family:
// J(eps) = I/n + eps E for a traceless GUE direction E with Tr_out E = 0,
// eps pushed to the cone boundary by bisection.
RandomMapResult random_k_positive_tp_map(int n, int k, std::uint64_t seed,
                                         const SeeSawConfig& cfg = {});

struct SampleRecord {
  std::uint64_t seed = 0;
  double epsilon = 0.0;
  double diamond = 0.0;
  CertFlag flag = CertFlag::Heuristic;
  bool discarded = false;
};

struct SampleReport {
  int n = 0;
  int k = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  double best = 0.0;
  SuperOp best_map;
  std::string best_source;  // "tomiyama-adjoint", "transpose", "sample:<i>"
  double mean = 0.0;
  double max = 0.0;
  double standard_error = 0.0;
  int discarded = 0;
  std::vector<SampleRecord> records;
};

// Empirical lower bound on d_k(M_n): diamond norms of random k-positive
// trace-preserving maps plus the named candidates (tomiyama adjoint; the
// transpose when k = 1).
SampleReport empirical_d_lower(int n, int k, int samples, std::uint64_t seed,
                               const SeeSawConfig& cfg = {});

nlohmann::json sample_report_to_json(const SampleReport& r);
std::string sample_report_to_csv(const SampleReport& r);

}  // namespace kpos

#endif
