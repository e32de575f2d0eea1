#include "kpos/randgen.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kpos/json_io.hpp"
#include "kpos/norms.hpp"
#include "kpos/parallel.hpp"
#include "kpos/rng.hpp"

namespace kpos {

std::string to_string(CertFlag f) {
  switch (f) {
    case CertFlag::CertifiedCovariant: return "certified-covariant";
    case CertFlag::CertifiedPsd: return "certified-psd";
    default: return "heuristic";
  }
}

CMat gue(int p, std::uint64_t seed) {
  if (p < 1) throw std::invalid_argument("gue: p must be >= 1");
  Rng rng(seed);
  CMat G(p, p);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < p; ++i) {
    G(i, i) = rng.normal();
    for (int j = i + 1; j < p; ++j) {
      cxd z = rng.cnormal() * inv_sqrt2;
      G(i, j) = z;
      G(j, i) = std::conj(z);
    }
  }
  return G;
}

namespace {

WidthEstimate summarize(const std::vector<double>& vals) {
  WidthEstimate w;
  w.samples = int(vals.size());
  double sum = 0.0;
  for (double v : vals) sum += v;
  w.estimate = sum / w.samples;
  double var = 0.0;
  for (double v : vals) var += (v - w.estimate) * (v - w.estimate);
  if (w.samples > 1) var /= (w.samples - 1);
  w.standard_error = std::sqrt(var / w.samples);
  return w;
}

}  // namespace

WidthEstimate mean_width_trace_ball(int p, int samples, std::uint64_t seed) {
  if (samples < 2) throw std::invalid_argument("mean_width_trace_ball: samples must be >= 2");
  std::vector<double> vals(samples);
  parallel_for(samples, [&](std::int64_t i) {
    CMat G = gue(p, derive_seed(seed, std::uint64_t(i)));
    vals[i] = std::abs(eig_hermitian(G).eigenvalues.cwiseAbs().maxCoeff());
  });
  return summarize(vals);
}

DiamondWidthReport diamond_ball_width_check(int n, int samples, std::uint64_t seed) {
  if (n > 4) throw std::invalid_argument("diamond_ball_width_check: n must be <= 4");
  // Named family members with known diamond norms; covariant norms come from
  // the decomposition LP (equal to the diamond norm for self-adjoint
  // covariant maps).
  struct Member {
    CMat J;
    double dnorm;
  };
  std::vector<Member> family;
  family.push_back({identity_map(n).choi, 1.0});
  family.push_back({transpose_map(n).choi, double(n)});
  for (int k = 2; k < n; ++k) {
    SuperOp t = to_superop(tomiyama(n, k));
    family.push_back({t.choi, dec_norm_covariant(n, n, project_covariant(t).s,
                                                 project_covariant(t).t)});
  }

  std::vector<double> vals(samples);
  parallel_for(samples, [&](std::int64_t i) {
    CMat G = gue(n * n, derive_seed(seed, std::uint64_t(i)));
    double best = 0.0;
    for (const auto& mem : family) {
      double ip = (G * mem.J).trace().real() / mem.dnorm;
      best = std::max(best, std::abs(ip));
    }
    // best covariant direction: project G onto the covariant plane and scale
    // to the boundary of the covariant diamond ball
    try {
      SuperOp gop{n, n, G};
      CovariantMap cm = project_covariant(gop);
      if (std::abs(cm.s) + std::abs(cm.t) > 1e-14) {
        double nrm = dec_norm_covariant(n, n, cm.s, cm.t);
        CVec chi = max_entangled(n);
        double ip =
            cm.s * (chi.adjoint() * G * chi).value().real() + (cm.t / n) * G.trace().real();
        if (nrm > 1e-14) best = std::max(best, std::abs(ip) / nrm);
      }
    } catch (const std::exception&) {
      // a failed covariant direction only weakens the lower estimate; it must
      // not propagate out of the parallel region
    }
    vals[i] = best;
  });
  WidthEstimate w = summarize(vals);
  DiamondWidthReport rep;
  rep.n = n;
  rep.samples = samples;
  rep.lower_estimate = w.estimate;
  rep.standard_error = w.standard_error;
  rep.upper_bound = 2.0 * n * n;
  if (rep.lower_estimate > rep.upper_bound + 3.0 * rep.standard_error)
    throw NumericalError("diamond_ball_width_check: lower estimate exceeds 2n^2 bound");
  return rep;
}

RandomMapResult random_k_positive_tp_map(int n, int k, std::uint64_t seed,
                                         const SeeSawConfig& cfg) {
  if (k < 1 || k > n) throw std::invalid_argument("random_k_positive_tp_map: k in [1, n]");
  CMat E = gue(n * n, seed);
  // project to Tr_out E = 0 (which also forces tr E = 0)
  CMat R = partial_trace(E, n, n, TensorFactor::Second);
  E -= kron(R, CMat::Identity(n, n)) / double(n);

  const Eigen::Index d2 = Eigen::Index(n) * n;
  auto choi_at = [&](double eps) {
    return (CMat::Identity(d2, d2) / double(n) + eps * E).eval();
  };
  auto inside = [&](double eps) {
    SuperOp op{n, n, choi_at(eps)};
    if (k >= n) {
      return eig_hermitian(op.choi).eigenvalues(0) >= -1e-12;
    }
    return is_k_positive(op, k, cfg).verdict != Verdict::Refuted;
  };

  double lmin = eig_hermitian(E).eigenvalues(0);
  if (lmin >= -1e-14) throw NumericalError("random_k_positive_tp_map: degenerate direction");
  double lo = 1.0 / (double(n) * (-lmin));  // exact boundary of the CP cone
  double hi = lo;
  int doublings = 0;
  while (inside(2.0 * hi) && doublings < 60) {
    hi *= 2.0;
    ++doublings;
  }
  if (doublings >= 60)
    throw NumericalError("random_k_positive_tp_map: bisection bracket did not close");
  hi *= 2.0;
  while (hi - lo > 1e-6 * lo) {
    double mid = 0.5 * (lo + hi);
    if (inside(mid)) lo = mid;
    else hi = mid;
  }

  RandomMapResult res;
  res.epsilon = lo;
  res.map = SuperOp{n, n, choi_at(lo)};
  if (k >= n) res.flag = CertFlag::CertifiedPsd;
  else if (is_covariant(res.map)) res.flag = CertFlag::CertifiedCovariant;
  else res.flag = CertFlag::Heuristic;
  return res;
}

SampleReport empirical_d_lower(int n, int k, int samples, std::uint64_t seed,
                               const SeeSawConfig& cfg) {
  SampleReport rep;
  rep.n = n;
  rep.k = k;
  rep.samples = samples;
  rep.seed = seed;

  rep.records.resize(samples);
  parallel_for(samples, [&](std::int64_t i) {
    SampleRecord rec;
    rec.seed = derive_seed(seed ^ 0x5a5a5a5aULL, std::uint64_t(i));
    try {
      RandomMapResult rm = random_k_positive_tp_map(n, k, rec.seed, cfg);
      rec.epsilon = rm.epsilon;
      rec.flag = rm.flag;
      // validity gate: the map must not be refuted at verdict tolerances
      if (is_k_positive(rm.map, k, cfg).verdict == Verdict::Refuted) {
        rec.discarded = true;
      } else {
        rec.diamond = diamond_norm(rm.map);
      }
    } catch (const std::exception&) {
      rec.discarded = true;  // exceptions must not cross the parallel region
    }
    rep.records[i] = rec;
  });

  double sum = 0.0;
  int kept = 0;
  for (int i = 0; i < samples; ++i) {
    const auto& rec = rep.records[i];
    if (rec.discarded) {
      ++rep.discarded;
      continue;
    }
    ++kept;
    sum += rec.diamond;
    if (rec.diamond > rep.best) {
      rep.best = rec.diamond;
      rep.best_source = "sample:" + std::to_string(i);
      rep.best_map = SuperOp{};  // filled below if still best
    }
  }
  rep.max = rep.best;
  rep.mean = kept ? sum / kept : 0.0;
  if (kept > 1) {
    double var = 0.0;
    for (const auto& rec : rep.records)
      if (!rec.discarded) var += (rec.diamond - rep.mean) * (rec.diamond - rep.mean);
    rep.standard_error = std::sqrt(var / (kept - 1) / kept);
  }

  // named candidates: adjoint of tomiyama(n,k); adjoint of the transpose at k=1
  if (std::int64_t(n) * k > 1) {
    SuperOp cand = adjoint(to_superop(tomiyama(n, k)));
    double d = diamond_norm(cand);
    if (d > rep.best) {
      rep.best = d;
      rep.best_map = cand;
      rep.best_source = "tomiyama-adjoint";
    }
    rep.max = std::max(rep.max, d);
  }
  if (k == 1) {
    SuperOp cand = adjoint(transpose_map(n));
    double d = diamond_norm(cand);
    if (d > rep.best) {
      rep.best = d;
      rep.best_map = cand;
      rep.best_source = "transpose";
    }
    rep.max = std::max(rep.max, d);
  }
  // rebuild the best map when it came from a sample
  if (rep.best_source.rfind("sample:", 0) == 0) {
    int idx = std::stoi(rep.best_source.substr(7));
    rep.best_map = random_k_positive_tp_map(n, k, rep.records[idx].seed, cfg).map;
  }
  return rep;
}

nlohmann::json sample_report_to_json(const SampleReport& r) {
  nlohmann::json j;
  j["schema"] = kSchemaTag;
  j["n"] = r.n;
  j["k"] = r.k;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["best"] = r.best;
  j["best_source"] = r.best_source;
  j["mean"] = r.mean;
  j["max"] = r.max;
  j["standard_error"] = r.standard_error;
  j["discarded"] = r.discarded;
  if (r.best_map.n_in > 0) j["best_map"] = superop_to_json(r.best_map);
  auto recs = nlohmann::json::array();
  for (const auto& rec : r.records) {
    recs.push_back({{"seed", rec.seed},
                    {"epsilon", rec.epsilon},
                    {"diamond", rec.diamond},
                    {"flag", to_string(rec.flag)},
                    {"discarded", rec.discarded}});
  }
  j["records"] = std::move(recs);
  j["note"] = "lower bounds only; no quantitative claim about the constant in the "
              "probabilistic sqrt(n/k) bound is made";
  return j;
}

std::string sample_report_to_csv(const SampleReport& r) {
  std::ostringstream os;
  os << "seed,epsilon,diamond,flag,discarded\n";
  os.precision(9);
  for (const auto& rec : r.records)
    os << rec.seed << "," << rec.epsilon << "," << rec.diamond << "," << to_string(rec.flag)
       << "," << (rec.discarded ? 1 : 0) << "\n";
  return os.str();
}

}  // namespace kpos
