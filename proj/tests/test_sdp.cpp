#include <doctest.h>

#include "cmcsep/criteria.hpp"
#include "cmcsep/sdp.hpp"
#include "test_util.hpp"

using namespace cmcsep;
using namespace testutil;

TEST_CASE("trivially feasible program") {
  SdpProblem p;
  p.c = RVector::Zero(1);
  p.f0 = RMatrix::Identity(2, 2);
  p.f = {RMatrix::Identity(2, 2)};
  p.blocks = {1, 1};
  const auto s = solve_sdp(p);
  CHECK(s.status == SdpStatus::Optimal);
  CHECK(std::abs(s.gap) < 1e-8);
  CHECK(min_eigenvalue(p.evaluate(s.x)) > -1e-8);
}

TEST_CASE("one-dimensional LP") {
  SdpProblem p;
  p.c = RVector::Ones(1);
  p.f0 = RMatrix::Constant(1, 1, -2.0);
  p.f = {RMatrix::Ones(1, 1)};
  p.blocks = {1};
  const auto s = solve_sdp(p);
  CHECK(s.status == SdpStatus::Optimal);
  CHECK(std::abs(s.x(0) - 2.0) < 1e-7);
  CHECK(std::abs(s.gap) < 1e-8);
}

TEST_CASE("small semidefinite program") {
  // min x s.t. [[x, 1], [1, x]] >= 0  ->  x* = 1.
  SdpProblem p;
  p.c = RVector::Ones(1);
  p.f0 = RMatrix::Zero(2, 2);
  p.f0(0, 1) = p.f0(1, 0) = 1.0;
  p.f = {RMatrix::Identity(2, 2)};
  p.blocks = {2};
  const auto s = solve_sdp(p);
  CHECK(s.status == SdpStatus::Optimal);
  CHECK(std::abs(s.x(0) - 1.0) < 1e-7);
}

TEST_CASE("malformed programs are rejected") {
  SdpProblem p;
  p.c = RVector::Ones(1);
  p.f0 = RMatrix::Zero(2, 2);
  p.f = {RMatrix::Identity(2, 2)};
  p.blocks = {1, 1};
  p.f0(0, 1) = p.f0(1, 0) = 1.0;
  CHECK_THROWS_AS(solve_sdp(p), InputError);
  p.f0.setZero();
  p.f0(0, 1) = 1.0;
  p.blocks = {2};
  CHECK_THROWS_AS(solve_sdp(p), InputError);
}

TEST_CASE("two-qubit CMC program") {
  const auto singlet = cmc_sdp_2q(werner_2q(1.0));
  CHECK(singlet.solution.status == SdpStatus::Optimal);
  CHECK(singlet.solution.x(0) < 0.0);
  CHECK(singlet.verdict.detected);
  CHECK(singlet.witness.value < 1.0);

  const auto mixed = cmc_sdp_2q(maximally_mixed(4));
  CHECK(mixed.solution.x(0) >= -1e-8);
  CHECK_FALSE(mixed.verdict.detected);

  for (double p : {0.1, 0.3, 0.5, 0.9}) {
    const auto v = cmc_sdp_2q(werner_2q(p));
    CHECK(v.solution.status == SdpStatus::Optimal);
    CHECK(std::abs(v.solution.x(0) - (1.0 - 3.0 * p) / 2.0) < 1e-6);
  }
}
