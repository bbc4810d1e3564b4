#include <doctest.h>

#include "cmcsep/matlin.hpp"
#include "test_util.hpp"

using namespace cmcsep;
using namespace testutil;

TEST_CASE("hermitian_eig small cases") {
  auto s = hermitian_eig(CMatrix::Identity(2, 2));
  CHECK(s.values(0) == doctest::Approx(1.0));
  CHECK(s.values(1) == doctest::Approx(1.0));

  CMatrix z(2, 2);
  z << 1, 0, 0, -1;
  s = hermitian_eig(z);
  CHECK(s.values(0) == doctest::Approx(1.0));
  CHECK(s.values(1) == doctest::Approx(-1.0));
}

TEST_CASE("hermitian_eig trace equals eigenvalue sum") {
  Rng rng(11);
  const CMatrix h = random_hermitian(9, rng);
  const auto s = hermitian_eig(h);
  CHECK(std::abs(s.values.sum() - h.trace().real()) < 1e-10);
  for (int i = 0; i + 1 < s.values.size(); ++i) CHECK(s.values(i) >= s.values(i + 1));
  CHECK((s.vectors * s.values.cast<cplx>().asDiagonal() * s.vectors.adjoint() - h).norm() < 1e-10);
}

TEST_CASE("non-Hermitian input is rejected") {
  CMatrix m(2, 2);
  m << 1, 2, 0, 1;
  CHECK_THROWS_AS(hermitian_eig(m), InputError);
  CHECK_THROWS_AS(hermitian_eig(CMatrix(2, 3)), InputError);
}

TEST_CASE("svd basics") {
  const RVector s0 = singular_values(CMatrix(CMatrix::Zero(3, 3)));
  CHECK(s0.cwiseAbs().maxCoeff() == 0.0);

  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = -2.0;
  const RVector s = singular_values(d);
  CHECK(s(0) == doctest::Approx(3.0));
  CHECK(s(1) == doctest::Approx(2.0));

  Rng rng(5);
  const CMatrix m = random_cmatrix(4, 9, rng);
  const auto dec = svd(m);
  CHECK((dec.u * dec.sigma.cast<cplx>().asDiagonal() * dec.v.adjoint() - m).norm() < 1e-10);
  const auto ev = hermitian_eig(CMatrix(m * m.adjoint()));
  double brute = 0.0;
  for (int i = 0; i < ev.values.size(); ++i) brute += std::sqrt(std::max(0.0, ev.values(i)));
  CHECK(std::abs(trace_norm(m) - brute) < 1e-10);
}

TEST_CASE("norms") {
  CHECK(trace_norm(CMatrix(CMatrix::Identity(4, 4) / 2.0)) == doctest::Approx(2.0));
  RMatrix d = RMatrix::Zero(3, 3);
  d.diagonal() << 3, 2, 1;
  CHECK(ky_fan_norm(d, 2) == doctest::Approx(5.0));
  CHECK(operator_norm(d) == doctest::Approx(3.0));
  CHECK_THROWS_AS(ky_fan_norm(d, 4), InputError);

  Rng rng(3);
  for (int seed = 0; seed < 100; ++seed) {
    const CMatrix m = random_cmatrix(6, 6, rng);
    for (int k = 1; k < 6; ++k) CHECK(ky_fan_norm(m, k) <= ky_fan_norm(m, k + 1) + 1e-12);
  }
}

TEST_CASE("partial trace") {
  Rng rng(2);
  const CMatrix ra = random_density(3, 3, rng), rb = random_density(2, 2, rng);
  CHECK((partial_trace(kron(ra, rb), {3, 2}, Side::A) - ra).norm() < 1e-12);
  CHECK((partial_trace(kron(ra, rb), {3, 2}, Side::B) - rb).norm() < 1e-12);
  CHECK((partial_trace(phi_plus(), {2, 2}, Side::A) - maximally_mixed(2)).norm() < 1e-14);

  const CMatrix rho = random_density(9, 9, rng);
  CHECK(std::abs(partial_trace(rho, {3, 3}, Side::A).trace().real() - 1.0) < 1e-12);
  CHECK_THROWS_AS(partial_trace(rho, {2, 2}, Side::A), InputError);
}

TEST_CASE("partial transpose") {
  Rng rng(8);
  const CMatrix prod = kron(random_density(2, 2, rng), random_density(3, 3, rng));
  CHECK(min_eigenvalue(partial_transpose(prod, {2, 3})) > -1e-12);
  CHECK(min_eigenvalue(partial_transpose(phi_plus(), {2, 2})) == doctest::Approx(-0.5));

  const CMatrix rho = random_density(6, 6, rng);
  CHECK((partial_transpose(partial_transpose(rho, {2, 3}), {2, 3}) - rho).norm() < 1e-14);
  CHECK((partial_transpose(partial_transpose(rho, {2, 3}, Side::A), {2, 3}, Side::A) - rho).norm() < 1e-14);
}

TEST_CASE("realignment") {
  Rng rng(4);
  const CMatrix prod = kron(random_density(3, 3, rng), random_density(2, 2, rng));
  const RVector s = singular_values(realign(prod, {3, 2}));
  CHECK(s(0) > 1e-3);
  CHECK(s.tail(s.size() - 1).maxCoeff() < 1e-12);

  CHECK(trace_norm(realign(phi_plus(), {2, 2})) == doctest::Approx(2.0));

  for (int k = 0; k < 100; ++k) {
    const CMatrix m = random_cmatrix(6, 6, rng);
    CHECK(std::abs(realign(m, {2, 3}).norm() - m.norm()) < 1e-10);
  }
}

TEST_CASE("validated_density") {
  CHECK_NOTHROW(validated_density(maximally_mixed(4)));
  CHECK_THROWS_AS(validated_density(CMatrix(CMatrix::Identity(2, 2))), InputError);
  CMatrix neg = CMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(validated_density(neg), InputError);
  CMatrix nan = maximally_mixed(2);
  nan(0, 0) = std::nan("");
  CHECK_THROWS_AS(validated_density(nan), InputError);
}

TEST_CASE("hermitian_power") {
  Rng rng(9);
  const CMatrix rho = random_density(4, 4, rng);
  const CMatrix half = hermitian_power(rho, 0.5);
  CHECK((half * half - rho).norm() < 1e-10);
  CHECK((hermitian_power(rho, -1.0) * rho - CMatrix::Identity(4, 4)).norm() < 1e-8);
}
