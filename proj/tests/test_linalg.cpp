#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kpos/linalg.hpp"
#include "kpos/maps.hpp"
#include "kpos/randgen.hpp"
#include "kpos/rng.hpp"

using namespace kpos;

namespace {
CMat pauli_x() {
  CMat X(2, 2);
  X << 0, 1, 1, 0;
  return X;
}
}  // namespace

TEST_CASE("kron basics") {
  CMat I2 = CMat::Identity(2, 2);
  CMat K = kron(I2, pauli_x());
  CHECK(K.rows() == 4);
  CHECK(std::abs(K(0, 1) - cxd(1)) < 1e-15);
  CHECK(std::abs(K(2, 3) - cxd(1)) < 1e-15);
  CHECK(std::abs(K(0, 2)) < 1e-15);

  CMat E11 = CMat::Zero(2, 2);
  E11(0, 0) = 1.0;
  CMat K2 = kron(E11, E11);
  CHECK(std::abs(K2(0, 0) - cxd(1)) < 1e-15);
  CHECK(std::abs(K2.sum() - cxd(1)) < 1e-15);

  CMat d2 = CMat::Zero(1, 1), d3 = CMat::Zero(1, 1);
  d2(0, 0) = 2.0;
  d3(0, 0) = 3.0;
  CHECK(operator_norm(kron(d2, d3)) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("kron associativity and norm multiplicativity on random inputs") {
  Rng rng(3);
  for (int t = 0; t < 5; ++t) {
    CMat A = rng.gaussian_matrix(3, 3), B = rng.gaussian_matrix(2, 2),
         C = rng.gaussian_matrix(2, 2);
    CHECK((kron(kron(A, B), C) - kron(A, kron(B, C))).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(operator_norm(kron(A, B)) ==
          doctest::Approx(operator_norm(A) * operator_norm(B)).epsilon(1e-10));
  }
}

TEST_CASE("partial trace") {
  CVec chi = max_entangled(2);
  CMat P = chi * chi.adjoint();
  CHECK((partial_trace(P, 2, 2, TensorFactor::Second) - CMat::Identity(2, 2))
            .cwiseAbs().maxCoeff() < 1e-12);

  CMat D = CMat::Zero(2, 2);
  D(0, 0) = 1.0;
  D(1, 1) = 2.0;
  CMat M = kron(CMat::Identity(2, 2), D);
  CHECK((partial_trace(M, 2, 2, TensorFactor::Second) - 3.0 * CMat::Identity(2, 2))
            .cwiseAbs().maxCoeff() < 1e-12);

  // Choi marginal of the transpose map: sum of diagonal blocks is I
  SuperOp T = transpose_map(2);
  CHECK((partial_trace(T.choi, 2, 2, TensorFactor::First) - CMat::Identity(2, 2))
            .cwiseAbs().maxCoeff() < 1e-12);

  Rng rng(4);
  CMat A = rng.gaussian_matrix(3, 3), B = rng.gaussian_matrix(4, 4);
  CHECK((partial_trace(kron(A, B), 3, 4, TensorFactor::Second) - A * B.trace())
            .cwiseAbs().maxCoeff() < 1e-10);
  CHECK_THROWS_AS(partial_trace(A, 2, 2, TensorFactor::First), ShapeError);
}

TEST_CASE("hermitian eigendecomposition") {
  CMat D = CMat::Zero(2, 2);
  D(0, 0) = 1.0;
  D(1, 1) = 2.0;
  HermEig e = eig_hermitian(D);
  CHECK(e.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(e.eigenvalues(1) == doctest::Approx(2.0));

  HermEig x = eig_hermitian(pauli_x());
  CHECK(x.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(x.eigenvalues(1) == doctest::Approx(1.0));

  CMat G = gue(16, 11);
  HermEig g = eig_hermitian(G);
  CMat rec = g.eigenvectors * g.eigenvalues.asDiagonal().toDenseMatrix().cast<cxd>() *
             g.eigenvectors.adjoint();
  CHECK((rec - G).cwiseAbs().maxCoeff() < 1e-10 * (1.0 + operator_norm(G)));
  CHECK((g.eigenvectors.adjoint() * g.eigenvectors - CMat::Identity(16, 16))
            .cwiseAbs().maxCoeff() < 1e-10);
  CHECK(g.eigenvalues.sum() == doctest::Approx(G.trace().real()).epsilon(1e-10));
}

TEST_CASE("operator and trace norms") {
  CVec chi = max_entangled(3);
  CHECK(trace_norm(chi * chi.adjoint()) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(operator_norm(pauli_x()) == doctest::Approx(1.0).epsilon(1e-12));

  // J(tau_{3,2}) has eigenvalues -1/5 (x1) and 2/5 (x8)
  SuperOp t32 = to_superop(tomiyama(3, 2));
  RVec ev = eig_hermitian(t32.choi).eigenvalues;
  CHECK(ev(0) == doctest::Approx(-0.2).epsilon(1e-10));
  CHECK(ev(1) == doctest::Approx(0.4).epsilon(1e-10));
  CHECK(ev(8) == doctest::Approx(0.4).epsilon(1e-10));
  CHECK(trace_norm(t32.choi) == doctest::Approx(17.0 / 5.0).epsilon(1e-10));

  Rng rng(5);
  for (int t = 0; t < 5; ++t) {
    CMat A = rng.gaussian_matrix(4, 4);
    CHECK(trace_norm(A) >= operator_norm(A) - 1e-12);
  }
}

TEST_CASE("partial transpose") {
  CMat E12 = CMat::Zero(2, 2), E21 = CMat::Zero(2, 2);
  E12(0, 1) = 1.0;
  E21(1, 0) = 1.0;
  CMat M = kron(CMat::Identity(2, 2), E12);
  CHECK((partial_transpose(M, 2, 2, TensorFactor::Second) - kron(CMat::Identity(2, 2), E21))
            .cwiseAbs().maxCoeff() < 1e-15);

  Rng rng(6);
  CMat R = rng.gaussian_matrix(6, 6);
  CHECK((partial_transpose(partial_transpose(R, 2, 3, TensorFactor::First), 2, 3,
                           TensorFactor::First) -
         R).cwiseAbs().maxCoeff() == 0.0);

  // PT of the maximally entangled projector is the swap
  CVec chi = max_entangled(2);
  CMat S = partial_transpose(chi * chi.adjoint(), 2, 2, TensorFactor::Second);
  CVec u = rng.gaussian_vector(2), v = rng.gaussian_vector(2);
  CHECK((S * kron(u, v) - kron(v, u)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("schmidt coefficients and rank") {
  CVec e11 = CVec::Zero(4);
  e11(0) = 1.0;
  RVec sc = schmidt_coefficients(e11, 2, 2);
  CHECK(sc(0) == doctest::Approx(1.0));
  CHECK(sc(1) == doctest::Approx(0.0));
  CHECK(schmidt_rank(e11, 2, 2) == 1);

  CVec chi = max_entangled(3);
  RVec sc2 = schmidt_coefficients(chi / chi.norm(), 3, 3);
  for (int i = 0; i < 3; ++i) CHECK(sc2(i) == doctest::Approx(1.0 / std::sqrt(3.0)));

  CVec singlet = CVec::Zero(4);
  singlet(1) = 1.0 / std::sqrt(2.0);
  singlet(2) = -1.0 / std::sqrt(2.0);
  RVec sc3 = schmidt_coefficients(singlet, 2, 2);
  CHECK(sc3(0) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(sc3(1) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(schmidt_rank(singlet, 2, 2) == 2);
}
