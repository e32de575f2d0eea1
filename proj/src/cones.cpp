#include "kpos/cones.hpp"

#include <nlohmann/json.hpp>

#include "kpos/json_io.hpp"
#include "kpos/parallel.hpp"
#include "kpos/rng.hpp"

namespace kpos {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Certified: return "Certified";
    case Verdict::Refuted: return "Refuted";
    default: return "Inconclusive";
  }
}

std::string to_string(VerdictMethod m) {
  switch (m) {
    case VerdictMethod::CovariantExact: return "CovariantExact";
    case VerdictMethod::ChoiPSD: return "ChoiPSD";
    case VerdictMethod::SeeSawWitness: return "SeeSawWitness";
    default: return "SeeSawExhausted";
  }
}

static void check_k(int n, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("k must lie in [1, n]");
}

bool covariant_kpeb_contains(int n, int k, const Rational& s, const Rational& t) {
  check_k(n, k);
  Rational r = s + t;
  if (r < Rational(0)) return false;
  // -(s+t)/(n^2-1) <= s  <=>  s n^2 + t >= 0
  if (s * Rational(Eigen::Index(n) * n) + t < Rational(0)) return false;
  // s <= (s+t)(nk-1)/(n^2-1)  <=>  s (n^2 - nk) <= t (nk - 1)
  Eigen::Index nk = Eigen::Index(n) * k;
  if (s * Rational(Eigen::Index(n) * n - nk) > t * Rational(nk - 1)) return false;
  return true;
}

bool covariant_kpeb_contains(int n, int k, double s, double t, double slack) {
  check_k(n, k);
  double scale = 1.0 + std::abs(s) + std::abs(t);
  double nn = double(n) * n, nk = double(n) * k;
  return s + t >= -slack * scale && s * nn + t >= -slack * scale &&
         s * (nn - nk) - t * (nk - 1.0) <= slack * scale;
}

bool covariant_kpos_contains(int n, int k, const Rational& s, const Rational& t) {
  check_k(n, k);
  if (t < Rational(0)) return false;
  return s * Rational(Eigen::Index(n) * k) + t >= Rational(0);
}

bool covariant_kpos_contains(int n, int k, double s, double t, double slack) {
  check_k(n, k);
  double scale = 1.0 + std::abs(s) + std::abs(t);
  return t >= -slack * scale && s * double(n) * k + t >= -slack * scale;
}

namespace {

CVec pair_to_vector(const CMat& U, const CMat& V, int n, int m) {
  const int k = int(U.cols());
  CVec xi = CVec::Zero(Eigen::Index(n) * m);
  for (int a = 0; a < k; ++a)
    for (int i = 0; i < n; ++i)
      for (int p = 0; p < m; ++p) xi(Eigen::Index(i) * m + p) += U(i, a) * V(p, a);
  return xi;
}

// One see-saw run: alternately minimize the Rayleigh quotient of W over
// xi = sum_a u_a (x) v_a, each half-step an exact generalized eigenproblem.
struct SeeSawOutcome {
  double value;
  CVec xi;  // normalized
};

SeeSawOutcome seesaw_once(const CMat& W, int n, int m, int k, std::uint64_t seed,
                          int max_sweeps, double tol) {
  Rng rng(seed);
  CMat U = rng.gaussian_matrix(n, k);
  CMat V = rng.gaussian_matrix(m, k);
  const Eigen::Index dm = Eigen::Index(n) * m;

  double value = std::numeric_limits<double>::infinity();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    // u-side: xi = B u with B[(i,p),(i,a)] = V(p,a)
    CMat B = CMat::Zero(dm, Eigen::Index(n) * k);
    for (int i = 0; i < n; ++i)
      for (int p = 0; p < m; ++p)
        for (int a = 0; a < k; ++a) B(Eigen::Index(i) * m + p, Eigen::Index(i) * k + a) = V(p, a);
    CMat M = B.adjoint() * W * B;
    CMat N = B.adjoint() * B;
    N.diagonal().array() += 1e-12 * (1.0 + N.trace().real());
    Eigen::GeneralizedSelfAdjointEigenSolver<CMat> gesU(0.5 * (M + M.adjoint()), N);
    CVec u = gesU.eigenvectors().col(0);
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < k; ++a) U(i, a) = u(Eigen::Index(i) * k + a);

    // v-side: xi = B v with B[(i,p),(p,a)] = U(i,a)
    B = CMat::Zero(dm, Eigen::Index(m) * k);
    for (int i = 0; i < n; ++i)
      for (int p = 0; p < m; ++p)
        for (int a = 0; a < k; ++a) B(Eigen::Index(i) * m + p, Eigen::Index(p) * k + a) = U(i, a);
    M = B.adjoint() * W * B;
    N = B.adjoint() * B;
    N.diagonal().array() += 1e-12 * (1.0 + N.trace().real());
    Eigen::GeneralizedSelfAdjointEigenSolver<CMat> gesV(0.5 * (M + M.adjoint()), N);
    CVec v = gesV.eigenvectors().col(0);
    for (int p = 0; p < m; ++p)
      for (int a = 0; a < k; ++a) V(p, a) = v(Eigen::Index(p) * k + a);

    double next = gesV.eigenvalues()(0);
    if (value - next < tol) {
      value = std::min(value, next);
      break;
    }
    value = next;
  }

  CVec xi = pair_to_vector(U, V, n, m);
  double nrm = xi.norm();
  if (nrm < 1e-14) {
    xi = CVec::Zero(dm);
    xi(0) = 1.0;
  } else {
    xi /= nrm;
  }
  return {(xi.adjoint() * W * xi).value().real(), xi};
}

SeeSawOutcome seesaw_best(const CMat& W, int n, int m, int k, const SeeSawConfig& cfg) {
  std::vector<SeeSawOutcome> outs(cfg.restarts);
  parallel_for(cfg.restarts, [&](std::int64_t r) {
    outs[r] = seesaw_once(W, n, m, k, derive_seed(cfg.seed, std::uint64_t(r)),
                          cfg.max_sweeps, cfg.improvement_tol);
  });
  int best = 0;
  for (int r = 1; r < cfg.restarts; ++r)
    if (outs[r].value < outs[best].value) best = r;
  return outs[best];
}

}  // namespace

std::optional<WitnessResult> schmidt_witness_search(const CMat& W, int n, int m, int k,
                                                    const SeeSawConfig& cfg) {
  if (W.rows() != Eigen::Index(n) * m || W.rows() != W.cols())
    throw ShapeError("schmidt_witness_search: W side must equal n*m");
  int kk = std::min({k, n, m});
  SeeSawOutcome out = seesaw_best(W, n, m, kk, cfg);
  if (out.value < -1e-10)
    return WitnessResult{out.xi, out.value, schmidt_rank(out.xi, n, m)};
  return std::nullopt;
}

double schmidt_min_value(const CMat& W, int n, int m, int k, const SeeSawConfig& cfg) {
  int kk = std::min({k, n, m});
  return seesaw_best(W, n, m, kk, cfg).value;
}

ConeVerdict is_k_positive(const SuperOp& op, int k, const SeeSawConfig& cfg) {
  if (op.n_in != op.n_out) throw ShapeError("is_k_positive: map must be square");
  if (!op.hermitian_preserving())
    throw std::invalid_argument("is_k_positive: Choi matrix not Hermitian");
  const int n = op.n_in;
  if (k < 1) throw std::invalid_argument("is_k_positive: k must be >= 1");

  ConeVerdict cv;
  if (k >= n) {
    // n-positivity is complete positivity: exact PSD test on the Choi matrix.
    HermEig eig = eig_hermitian(0.5 * (op.choi + op.choi.adjoint()));
    double lmin = eig.eigenvalues(0);
    if (lmin >= -1e-9) {
      cv.verdict = Verdict::Certified;
      cv.method = VerdictMethod::ChoiPSD;
      cv.value = lmin;
    } else {
      cv.verdict = Verdict::Refuted;
      cv.method = VerdictMethod::ChoiPSD;
      CVec xi = eig.eigenvectors.col(0);
      cv.witness = xi;
      cv.value = lmin;
      cv.schmidt_rank = schmidt_rank(xi, n, n);
    }
    return cv;
  }

  if (is_covariant(op)) {
    CovariantMap cm = project_covariant(op);
    double scale = 1.0 + std::abs(cm.s) + std::abs(cm.t);
    if (covariant_kpos_contains(n, k, cm.s, cm.t, 1e-10 * n * scale)) {
      cv.verdict = Verdict::Certified;
      cv.method = VerdictMethod::CovariantExact;
      return cv;
    }
    cv.verdict = Verdict::Refuted;
    cv.method = VerdictMethod::CovariantExact;
    // closed-form extremal witnesses: e_1 (x) e_2 when t < 0, else the
    // rank-k maximally entangled vector (value (s n k + t)/n).
    double v_prod = cm.t / n;
    double v_ent = (cm.s * n * k + cm.t) / n;
    CVec xi = CVec::Zero(Eigen::Index(n) * n);
    if (v_prod < v_ent && n >= 2) {
      xi(1) = 1.0;  // e_1 (x) e_2
      cv.value = v_prod;
    } else {
      for (int i = 0; i < k; ++i) xi(Eigen::Index(i) * n + i) = 1.0 / std::sqrt(double(k));
      cv.value = v_ent;
    }
    cv.witness = xi;
    cv.schmidt_rank = schmidt_rank(xi, n, n);
    return cv;
  }

  auto wr = schmidt_witness_search(op.choi, n, n, k, cfg);
  if (wr) {
    cv.verdict = Verdict::Refuted;
    cv.method = VerdictMethod::SeeSawWitness;
    cv.witness = wr->witness;
    cv.value = wr->value;
    cv.schmidt_rank = wr->schmidt_rank;
  } else {
    cv.verdict = Verdict::Inconclusive;
    cv.method = VerdictMethod::SeeSawExhausted;
  }
  return cv;
}

ConeVerdict is_k_peb(const SuperOp& op, int k, const SeeSawConfig& cfg) {
  if (op.n_in != op.n_out) throw ShapeError("is_k_peb: map must be square");
  if (!op.hermitian_preserving())
    throw std::invalid_argument("is_k_peb: Choi matrix not Hermitian");
  const int n = op.n_in;
  if (k < 1) throw std::invalid_argument("is_k_peb: k must be >= 1");
  const int kk = std::min(k, n);
  CVec chi = max_entangled(n);
  const Eigen::Index d2 = chi.size();

  ConeVerdict cv;
  if (is_covariant(op)) {
    CovariantMap cm = project_covariant(op);
    double scale = 1.0 + std::abs(cm.s) + std::abs(cm.t);
    if (covariant_kpeb_contains(n, kk, cm.s, cm.t, 1e-10 * n * n * scale)) {
      cv.verdict = Verdict::Certified;
      cv.method = VerdictMethod::CovariantExact;
      return cv;
    }
    cv.verdict = Verdict::Refuted;
    cv.method = VerdictMethod::CovariantExact;
    // pick the covariant k-block-positive witness with the most negative pairing
    CMat I = CMat::Identity(d2, d2);
    CMat cc = chi * chi.adjoint();
    std::vector<CMat> cands = {I, cc, double(kk) * I - cc};
    double best = 0.0;
    for (auto& W : cands) {
      double v = (op.choi * W).trace().real();
      if (v < best) {
        best = v;
        cv.witness_op = W;
      }
    }
    cv.value = best;
    return cv;
  }

  // A k-PEB Choi matrix is PSD; a negative eigenvector is a witness.
  HermEig eig = eig_hermitian(0.5 * (op.choi + op.choi.adjoint()));
  if (eig.eigenvalues(0) < -1e-10) {
    cv.verdict = Verdict::Refuted;
    cv.method = VerdictMethod::ChoiPSD;
    CVec xi = eig.eigenvectors.col(0);
    cv.witness = xi;
    cv.witness_op = (xi * xi.adjoint()).eval();
    cv.value = eig.eigenvalues(0);
    cv.schmidt_rank = schmidt_rank(xi, n, n);
    return cv;
  }
  if (kk >= n) {  // PSD Choi always has Schmidt number <= n
    cv.verdict = Verdict::Certified;
    cv.method = VerdictMethod::ChoiPSD;
    cv.value = eig.eigenvalues(0);
    return cv;
  }

  // Covariant k-block-positive witnesses and their local-unitary rotations;
  // Schmidt rank is invariant under U (x) V so block positivity is certified.
  CMat base = double(kk) * CMat::Identity(d2, d2) - chi * chi.adjoint();
  double best = 0.0;
  CMat best_W;
  for (int r = 0; r <= cfg.restarts; ++r) {
    CMat W;
    if (r == 0) {
      W = base;
    } else {
      Rng rng(derive_seed(cfg.seed ^ 0x9e37u, std::uint64_t(r)));
      CMat U = rng.haar_unitary(n), V = rng.haar_unitary(n);
      CMat L = kron(U, V);
      W = L * base * L.adjoint();
    }
    double v = (op.choi * W).trace().real();
    if (v < best) {
      best = v;
      best_W = W;
    }
  }
  if (best < -1e-10) {
    cv.verdict = Verdict::Refuted;
    cv.method = VerdictMethod::SeeSawWitness;
    cv.witness_op = best_W;
    cv.value = best;
    return cv;
  }
  cv.verdict = Verdict::Inconclusive;
  cv.method = VerdictMethod::SeeSawExhausted;
  return cv;
}

nlohmann::json verdict_to_json(const ConeVerdict& v) {
  nlohmann::json j;
  j["schema"] = kSchemaTag;
  j["verdict"] = to_string(v.verdict);
  j["method"] = to_string(v.method);
  if (v.value) j["value"] = *v.value;
  if (v.witness) {
    auto w = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.witness->size(); ++i)
      w.push_back({(*v.witness)(i).real(), (*v.witness)(i).imag()});
    j["witness"] = std::move(w);
    j["schmidt_rank"] = v.schmidt_rank;
  }
  if (v.witness_op) j["witness_op"] = matrix_to_json(*v.witness_op);
  return j;
}

}  // namespace kpos
