#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "kpos/maps.hpp"
#include "kpos/rng.hpp"

using namespace kpos;

namespace {

SuperOp random_hp_map(Rng& rng, int n) {
  CMat G = rng.gaussian_matrix(n * n, n * n);
  return {n, n, (G + G.adjoint()) / 2.0};
}

}  // namespace

TEST_CASE("from_apply conventions") {
  SuperOp id2 = identity_map(2);
  CVec chi = max_entangled(2);
  CHECK((id2.choi - chi * chi.adjoint()).cwiseAbs().maxCoeff() < 1e-14);

  SuperOp id2b = from_apply(2, 2, [](const CMat& X) { return X; });
  CHECK((id2b.choi - id2.choi).cwiseAbs().maxCoeff() < 1e-14);

  // transpose Choi is the swap
  SuperOp T = transpose_map(2);
  Rng rng(1);
  CVec u = rng.gaussian_vector(2), v = rng.gaussian_vector(2);
  CHECK((T.choi * kron(u, v) - kron(v, u)).cwiseAbs().maxCoeff() < 1e-12);

  // covariant Choi = s |chi><chi| + (t/n) I, built from the definition
  double s = 0.3, t = -0.7;
  int n = 3;
  SuperOp cov = from_apply(n, n, [&](const CMat& X) {
    return (s * X + (t / n) * X.trace() * CMat::Identity(n, n)).eval();
  });
  CHECK((cov.choi - to_superop(covariant(n, s, t)).choi).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("apply") {
  CMat E12 = CMat::Zero(2, 2);
  E12(0, 1) = 1.0;
  CHECK(std::abs(kpos::apply(transpose_map(2), E12)(1, 0) - cxd(1)) < 1e-14);

  SuperOp t32 = to_superop(tomiyama(3, 2));
  CHECK((kpos::apply(t32, CMat::Identity(3, 3)) - CMat::Identity(3, 3)).cwiseAbs().maxCoeff() <
        1e-12);

  Rng rng(2);
  CMat X = rng.gaussian_matrix(3, 3);
  CMat dep = kpos::apply(to_superop(covariant(3, 0.0, 1.0)), X);
  CHECK((dep - (X.trace() / 3.0) * CMat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(kpos::apply(t32, CMat::Identity(2, 2)), ShapeError);
}

TEST_CASE("adjoint") {
  SuperOp T = transpose_map(3);
  CHECK((adjoint(T).choi - T.choi).cwiseAbs().maxCoeff() < 1e-12);

  // Hilbert-Schmidt pairing on a basis
  Rng rng(3);
  SuperOp op = random_hp_map(rng, 3);
  SuperOp adj = adjoint(op);
  for (int trial = 0; trial < 10; ++trial) {
    CMat A = rng.gaussian_matrix(3, 3), B = rng.gaussian_matrix(3, 3);
    cxd lhs = (kpos::apply(op, B).adjoint() * A).trace();   // <Phi(B), A>
    cxd rhs = (kpos::apply(adj, A).adjoint() * B).trace();  // <Phi*(A), B>
    CHECK(std::abs(lhs - std::conj(rhs)) < 1e-9);
  }
  CHECK((adjoint(adjoint(op)).choi - op.choi).cwiseAbs().maxCoeff() < 1e-12);

  SuperOp cov = to_superop(covariant(3, 0.4, -0.2));
  CHECK((adjoint(cov).choi - cov.choi).cwiseAbs().maxCoeff() < 1e-10);

  SuperOp tom = to_superop(tomiyama(4, 2));
  CHECK(is_unital(tom));
  CHECK(is_trace_preserving(adjoint(tom)));
}

TEST_CASE("compose") {
  Rng rng(4);
  SuperOp op = random_hp_map(rng, 3);
  SuperOp c = compose(identity_map(3), op);
  CHECK((c.choi - op.choi).cwiseAbs().maxCoeff() < 1e-12);

  // covariant composition rule
  SuperOp c2 = compose(to_superop(covariant(2, 1, 1)), to_superop(covariant(2, 1, 1)));
  CHECK((c2.choi - to_superop(covariant(2, 1, 3)).choi).cwiseAbs().maxCoeff() < 1e-10);

  // basis-wise application agreement
  SuperOp a = random_hp_map(rng, 2), b = random_hp_map(rng, 2);
  SuperOp ab = compose(a, b);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CMat E = CMat::Zero(2, 2);
      E(i, j) = 1.0;
      CHECK((kpos::apply(ab, E) - kpos::apply(a, kpos::apply(b, E))).cwiseAbs().maxCoeff() < 1e-10);
    }

  CHECK_THROWS_AS(compose(identity_map(2), identity_map(3)), ShapeError);
}

TEST_CASE("unital / trace-preserving predicates") {
  CHECK(is_unital(identity_map(3)));
  CHECK(is_trace_preserving(identity_map(3)));
  for (auto [n, k] : {std::pair{3, 2}, {4, 2}, {5, 3}})
    CHECK(is_unital(to_superop(tomiyama(n, k))));

  SuperOp toE11 = from_apply(2, 2, [](const CMat& X) {
    CMat Y = CMat::Zero(2, 2);
    Y(0, 0) = X.trace();
    return Y;
  });
  CHECK(is_trace_preserving(toE11));
  CHECK(!is_unital(toE11));
}

TEST_CASE("named constructors") {
  CovariantMap t32 = tomiyama(3, 2);
  CHECK(t32.s == doctest::Approx(-0.2).epsilon(1e-15));
  CHECK(t32.t == doctest::Approx(1.2).epsilon(1e-15));
  CHECK(t32.s + t32.t == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS(tomiyama(1, 1));

  CHECK((to_superop(covariant(4, 1, 0)).choi - identity_map(4).choi).cwiseAbs().maxCoeff() <
        1e-14);
}

TEST_CASE("project_covariant") {
  CovariantMap cm = project_covariant(to_superop(covariant(3, 0.25, -0.5)));
  CHECK(cm.s == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(cm.t == doctest::Approx(-0.5).epsilon(1e-12));

  CovariantMap idp = project_covariant(identity_map(4));
  CHECK(idp.s == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(idp.t == doctest::Approx(0.0).epsilon(1e-12));

  // Monte-Carlo twirl oracle
  Rng rng(5);
  SuperOp op = random_hp_map(rng, 2);
  CMat avg = CMat::Zero(4, 4);
  const int trials = 8000;
  for (int trial = 0; trial < trials; ++trial) {
    CMat U = rng.haar_unitary(2);
    SuperOp tw = from_apply(2, 2, [&](const CMat& X) {
      return (U * kpos::apply(op, U.adjoint() * X * U) * U.adjoint()).eval();
    });
    avg += tw.choi;
  }
  avg /= trials;
  CMat proj = to_superop(project_covariant(op)).choi;
  CHECK((avg - proj).cwiseAbs().maxCoeff() < 2e-2);
}

TEST_CASE("covariance property under unitary conjugation") {
  Rng rng(6);
  SuperOp cov = to_superop(covariant(3, -0.3, 0.9));
  for (int trial = 0; trial < 20; ++trial) {
    CMat U = rng.haar_unitary(3);
    CMat X = rng.gaussian_matrix(3, 3);
    CMat lhs = kpos::apply(cov, U.adjoint() * X * U);
    CMat rhs = U.adjoint() * kpos::apply(cov, X) * U;
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("choi linearity") {
  auto f = [](const CMat& X) { return X.transpose().eval(); };
  auto g = [](const CMat& X) { return (X.trace() * CMat::Identity(2, 2)).eval(); };
  SuperOp combo = from_apply(2, 2, [&](const CMat& X) { return (2.0 * f(X) - 0.5 * g(X)).eval(); });
  CMat expect = 2.0 * from_apply(2, 2, f).choi - 0.5 * from_apply(2, 2, g).choi;
  CHECK((combo.choi - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("duality pair on random maps") {
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    SuperOp op = random_hp_map(rng, 3);
    CHECK(is_unital(op) == is_trace_preserving(adjoint(op)));
  }
}

TEST_CASE("superop json round-trip") {
  SuperOp op = to_superop(tomiyama(3, 2));
  SuperOp back = superop_from_json(superop_to_json(op));
  CHECK(back.n_in == 3);
  CHECK((back.choi - op.choi).cwiseAbs().maxCoeff() == 0.0);
}
