#include <doctest.h>

#include "cmcsep/observables.hpp"
#include "test_util.hpp"

using namespace cmcsep;
using namespace testutil;

TEST_CASE("standard basis") {
  CHECK(standard_basis(2).size() == 4);
  CHECK(standard_basis(2).orthonormality_error() < 1e-14);
  CHECK(standard_basis(3).size() == 9);
  const auto b = standard_basis(4);
  for (int k = 0; k < b.size(); ++k) {
    CHECK(max_asymmetry(b[k]) < 1e-15);
    if (k >= 4) CHECK(std::abs(b[k].trace()) < 1e-15);
  }
}

TEST_CASE("pauli basis") {
  const auto p = pauli_basis();
  CHECK(p.orthonormality_error() < 1e-14);
  CHECK(p[0].trace().real() == doctest::Approx(std::sqrt(2.0)));
  const CMatrix comm = p[1] * p[2] - p[2] * p[1];
  CHECK((comm - cplx(0, std::sqrt(2.0)) * p[3]).norm() < 1e-14);
}

TEST_CASE("gell-mann basis") {
  const auto g2 = gellmann_basis(2);
  const auto p = pauli_basis();
  for (int k = 0; k < 4; ++k) CHECK((g2[k] - p[k]).norm() < 1e-14);

  const auto g3 = gellmann_basis(3);
  CHECK(g3.size() == 9);
  CHECK(g3.orthonormality_error() < 1e-14);
  CHECK(g3.identity_first());
  for (int k = 1; k < g3.size(); ++k) CHECK(std::abs(g3[k].trace()) < 1e-14);
}

TEST_CASE("weyl parity basis") {
  const auto w = weyl_parity_basis(3);
  CHECK(w.size() == 9);
  CHECK(w.orthonormality_error() < 1e-12);
  const CMatrix p00 = parity_operator(3);
  for (int x = 0; x < 3; ++x) {
    CVector e = CVector::Zero(3);
    e(x) = 1.0;
    const CVector out = p00 * e;
    CHECK(std::abs(out((3 - x) % 3) - 1.0) < 1e-14);
  }
  for (int k = 0; k < w.size(); ++k) {
    const CMatrix op = w[k] * std::sqrt(3.0);
    CHECK((op * op - CMatrix::Identity(3, 3)).norm() < 1e-12);
  }
  CHECK_THROWS_AS(weyl_parity_basis(4), InputError);
}

TEST_CASE("unitary_to_orthogonal") {
  const auto p = pauli_basis();
  CHECK((unitary_to_orthogonal(CMatrix::Identity(2, 2), p) - RMatrix::Identity(4, 4)).norm() < 1e-14);

  const double th = 0.7;
  CMatrix u = CMatrix::Zero(2, 2);
  u(0, 0) = std::exp(cplx(0, -th / 2));
  u(1, 1) = std::exp(cplx(0, th / 2));
  const RMatrix o = unitary_to_orthogonal(u, p);
  CHECK(std::abs(o(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(o(3, 3) - 1.0) < 1e-14);
  CHECK(std::abs(std::abs(o(1, 1)) - std::cos(th)) < 1e-14);
  CHECK(std::abs(std::abs(o(1, 2)) - std::sin(th)) < 1e-14);
  for (int k : {0, 3})
    for (int j : {1, 2}) {
      CHECK(std::abs(o(k, j)) < 1e-14);
      CHECK(std::abs(o(j, k)) < 1e-14);
    }

  Rng rng(21);
  const auto g3 = gellmann_basis(3);
  for (int s = 0; s < 50; ++s) {
    const CMatrix u1 = random_unitary(3, rng), u2 = random_unitary(3, rng);
    const RMatrix o1 = unitary_to_orthogonal(u1, g3);
    CHECK((o1.transpose() * o1 - RMatrix::Identity(9, 9)).norm() < 1e-9);
    // Row convention: conjugating by U1 U2 applies O(U2) first.
    CHECK((unitary_to_orthogonal(u1 * u2, g3) - unitary_to_orthogonal(u2, g3) * o1).norm() < 1e-9);
    for (int i = 0; i < 9; ++i) {
      const CMatrix conj = u1 * g3[i] * u1.adjoint();
      CMatrix sum = CMatrix::Zero(3, 3);
      for (int j = 0; j < 9; ++j) sum += o1(i, j) * g3[j];
      CHECK((conj - sum).norm() < 1e-10);
    }
  }
  CHECK_THROWS_AS(unitary_to_orthogonal(CMatrix(2.0 * CMatrix::Identity(2, 2)), p), InputError);
}

TEST_CASE("gamma isometry is unitary") {
  for (const auto& b : {standard_basis(3), gellmann_basis(3), weyl_parity_basis(3), pauli_basis()}) {
    const CMatrix g = b.gamma();
    const int n = static_cast<int>(g.rows());
    CHECK((g.adjoint() * g - CMatrix::Identity(n, n)).norm() < 1e-12);
    CHECK((g * g.adjoint() - CMatrix::Identity(n, n)).norm() < 1e-12);
  }
}

TEST_CASE("expectations round trip") {
  Rng rng(1);
  const auto b = gellmann_basis(3);
  const CMatrix rho = random_density(3, 3, rng);
  CHECK((b.synthesize(b.expectations(rho)) - rho).norm() < 1e-12);
}

TEST_CASE("basis names") {
  CHECK(parse_basis_kind("gellmann") == BasisKind::GellMann);
  CHECK(parse_basis_kind("weyl") == BasisKind::WeylParity);
  CHECK_THROWS_AS(parse_basis_kind("fourier"), InputError);
}
