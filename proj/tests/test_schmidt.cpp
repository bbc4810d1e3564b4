#include <doctest.h>

#include "cmcsep/schmidt.hpp"
#include "test_util.hpp"

using namespace cmcsep;
using namespace testutil;

TEST_CASE("product state has rank one") {
  Rng rng(41);
  const CMatrix ra = random_density(2, 2, rng), rb = random_density(3, 3, rng);
  const auto dec = operator_schmidt(kron(ra, rb), {2, 3});
  CHECK(dec.lambdas(0) == doctest::Approx(ra.norm() * rb.norm()));
  CHECK(dec.lambdas.tail(dec.lambdas.size() - 1).maxCoeff() < 1e-12);
}

TEST_CASE("Bell state coefficients") {
  const auto dec = operator_schmidt(phi_plus(), {2, 2});
  for (int k = 0; k < 4; ++k) CHECK(dec.lambdas(k) == doctest::Approx(0.5));
  CHECK(dec.lambdas.sum() == doctest::Approx(2.0));
}

TEST_CASE("purity identity, reconstruction and realignment") {
  Rng rng(43);
  for (Dims d : {Dims{3, 3}, Dims{2, 3}, Dims{3, 2}}) {
    const CMatrix rho = random_density(d.total(), d.total(), rng);
    const auto dec = operator_schmidt(rho, d);
    CHECK(std::abs(dec.lambdas.squaredNorm() - (rho * rho).trace().real()) < 1e-10);
    CHECK((dec.reconstruct() - rho).norm() < 1e-10);
    const RVector sv = singular_values(realign(rho, d));
    CHECK((sv.head(dec.lambdas.size()) - dec.lambdas).cwiseAbs().maxCoeff() < 1e-10);
    for (std::size_t k = 0; k < dec.ops_a.size(); ++k) {
      CHECK(max_asymmetry(dec.ops_a[k]) < 1e-12);
      CHECK(max_asymmetry(dec.ops_b[k]) < 1e-12);
      CHECK(std::abs(dec.ops_a[k].trace().real() - dec.g_a(static_cast<int>(k))) < 1e-12);
    }
  }
}
