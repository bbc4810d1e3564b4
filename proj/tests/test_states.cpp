#include <doctest.h>

#include "cmcsep/criteria.hpp"
#include "cmcsep/states.hpp"
#include "test_util.hpp"

using namespace cmcsep;
using namespace testutil;

namespace {

void check_state(const CMatrix& rho) {
  CHECK(std::abs(rho.trace().real() - 1.0) < 1e-12);
  CHECK(max_asymmetry(rho) < 1e-12);
  CHECK(min_eigenvalue(rho) > -1e-12);
}

}  // namespace

TEST_CASE("chessboard") {
  check_state(chessboard(1, 1, 1, 1, 1, 1));
  check_state(chessboard(1, 1, 0, 1, 1, 1));
  CHECK_THROWS_AS(chessboard(0, 0, 1, 1, 1, 1), InputError);
  Rng rng(71);
  for (int s = 0; s < 100; ++s) {
    const CMatrix rho = sample_chessboard(rng);
    check_state(rho);
    CHECK_FALSE(ppt(rho, {3, 3}).detected);
  }
}

TEST_CASE("seeded streams are reproducible") {
  CHECK((sample_chessboard(std::uint64_t{5}) - sample_chessboard(std::uint64_t{5})).norm() == 0.0);
  CHECK((sample_chessboard(std::uint64_t{5}) - sample_chessboard(std::uint64_t{6})).norm() > 0.0);
  Rng a(3), b(3);
  for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());
  CHECK(sample_seed(42, 0) != sample_seed(42, 1));
  // The standard fixes mt19937_64; uniform() keeps its top 53 bits.
  Rng z(0);
  std::mt19937_64 e(0);
  for (int i = 0; i < 10; ++i) CHECK(z.uniform() == static_cast<double>(e() >> 11) * 0x1.0p-53);
  std::mt19937_64 d;
  d.discard(9999);
  CHECK(d() == 9981545732273789042ull);
}

TEST_CASE("Rng distributions") {
  Rng rng(73);
  double sum = 0.0, sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    sum += x;
    sq += x * x;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(std::abs(sq / n - 1.0) < 0.02);
  for (int i = 0; i < 1000; ++i) {
    const int k = rng.uniform_int(2, 5);
    CHECK(k >= 2);
    CHECK(k <= 5);
  }
}

TEST_CASE("UPB tiles family") {
  check_state(upb_tiles(0.5));
  CHECK((upb_tiles(0.0) - maximally_mixed(9)).norm() < 1e-14);
  // rho_BE = (1 - P)/4 with P the projector on the five tiles.
  const CMatrix proj = CMatrix::Identity(9, 9) - 4.0 * upb_tiles(1.0);
  CHECK(std::abs(proj.trace().real() - 5.0) < 1e-12);
  CHECK((proj * proj - proj).norm() < 1e-12);
  CHECK_THROWS_AS(upb_tiles(1.5), InputError);
}

TEST_CASE("rho_epsilon family") {
  check_state(rho_epsilon(1.0, 0.2, 0.45, 0.0));
  CHECK_FALSE(ppt(rho_epsilon(1.0, 0.2, 0.45, 0.0), {2, 2}).detected);
  const CMatrix e0 = rho_epsilon(0.0, 0.3, 0.45, 1.0 / 16.0);
  CHECK((e0 * e0 - e0).norm() < 1e-12);
  CHECK_THROWS_AS(rho_epsilon(1.0, 1.0, 0.45, 1.0), InputError);
}

TEST_CASE("random generators") {
  Rng rng(79);
  for (int s = 0; s < 50; ++s) {
    check_state(random_density(6, 3, rng));
    const CMatrix sep = random_separable(2, 3, rng.uniform_int(1, 12), rng);
    check_state(sep);
    CHECK_FALSE(ppt(sep, {2, 3}).detected);
  }
  const CMatrix low = random_density(6, 2, rng);
  const RVector ev = hermitian_eig(low).values;
  CHECK(ev(2) < 1e-12);
  CHECK_THROWS_AS(random_density(4, 5, rng), InputError);
}

TEST_CASE("Werner and Bell-diagonal states") {
  CVector psi = CVector::Zero(4);
  psi(1) = 1.0 / std::sqrt(2.0);
  psi(2) = -1.0 / std::sqrt(2.0);
  CHECK((werner_2q(1.0) - psi * psi.adjoint()).norm() < 1e-14);
  check_state(werner_2q(-1.0 / 3.0));
  CHECK_THROWS_AS(werner_2q(-0.5), InputError);

  Rng rng(83);
  for (int s = 0; s < 50; ++s) {
    double c[3];
    double tot = 0.0;
    for (double& x : c) {
      x = rng.uniform() * 2.0 - 1.0;
      tot += std::abs(x);
    }
    const double scale = rng.uniform() / tot;
    const CMatrix rho = bell_diagonal(c[0] * scale, c[1] * scale, c[2] * scale);
    check_state(rho);
    CHECK_FALSE(cmc_filter(rho, {2, 2}).detected);
  }
}
