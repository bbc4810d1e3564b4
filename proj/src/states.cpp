#include "cmcsep/states.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "cmcsep/matlin.hpp"

namespace cmcsep {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

int Rng::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ index);
}

CMatrix clip_to_state(const CMatrix& m, const char* what) {
  const CMatrix h = (m + m.adjoint()) / 2.0;
  Spectrum s = hermitian_eig(h);
  const double lo = s.values.minCoeff();
  if (lo <= -1e-12) {
    std::ostringstream os;
    os << what << ": generated matrix is not PSD (min eigenvalue " << lo << ")";
    throw InputError(os.str());
  }
  if (lo >= 0.0) return h / h.trace().real();
  s.values = s.values.cwiseMax(0.0);
  CMatrix out = s.vectors * s.values.cast<cplx>().asDiagonal() * s.vectors.adjoint();
  out = (out + out.adjoint()).eval() / 2.0;
  return out / out.trace().real();
}

CMatrix chessboard(double m, double n, double a, double b, double c, double d) {
  if (n == 0.0 || m == 0.0) throw InputError("chessboard: m and n must be nonzero");
  using V = std::array<double, 9>;
  const std::array<V, 4> vs = {{
      {m, 0, a * c / n, 0, n, 0, 0, 0, 0},
      {0, a, 0, b, 0, c, 0, 0, 0},
      {n, 0, 0, 0, -m, 0, a * d / m, 0, 0},
      {0, b, 0, -a, 0, 0, 0, d, 0},
  }};
  CMatrix rho = CMatrix::Zero(9, 9);
  for (const auto& v : vs) {
    CVector x(9);
    for (int i = 0; i < 9; ++i) x(i) = v[static_cast<std::size_t>(i)];
    rho += x * x.adjoint();
  }
  const double tr = rho.trace().real();
  if (!(tr > 0.0) || !std::isfinite(tr)) throw InputError("chessboard: degenerate parameters");
  return clip_to_state(rho / tr, "chessboard");
}

CMatrix sample_chessboard(Rng& rng) {
  double p[6];
  for (double& x : p) x = rng.normal(0.0, 2.0);
  return chessboard(p[0], p[1], p[2], p[3], p[4], p[5]);
}

CMatrix sample_chessboard(std::uint64_t seed) {
  Rng rng(seed);
  return sample_chessboard(rng);
}

CMatrix upb_tiles(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("upb_tiles: p must lie in [0, 1]");
  auto ket = [](std::array<double, 3> a, std::array<double, 3> b) {
    CVector v(9);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) v(3 * i + j) = a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    return v;
  };
  const double h = 1.0 / std::sqrt(2.0);
  const double t = 1.0 / std::sqrt(3.0);
  const std::array<CVector, 5> psi = {
      ket({1, 0, 0}, {h, -h, 0}), ket({h, -h, 0}, {0, 0, 1}), ket({0, 0, 1}, {0, h, -h}),
      ket({0, h, -h}, {1, 0, 0}), ket({t, t, t}, {t, t, t}),
  };
  CMatrix proj = CMatrix::Zero(9, 9);
  for (const auto& v : psi) proj += v * v.adjoint();
  const CMatrix id = CMatrix::Identity(9, 9);
  const CMatrix be = (id - proj) / 4.0;
  return clip_to_state(p * be + (1.0 - p) * id / 9.0, "upb_tiles");
}

CMatrix rho_epsilon_raw(double eps, double r, double s, double t) {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = 1.0 + r;
  m(0, 3) = t;
  m(3, 0) = t;
  m(2, 2) = s - r;
  m(3, 3) = 1.0 - s;
  m *= eps / 2.0;
  m(1, 1) += 1.0 - eps;
  return m;
}

CMatrix rho_epsilon(double eps, double r, double s, double t) {
  return clip_to_state(rho_epsilon_raw(eps, r, s, t), "rho_epsilon");
}

CMatrix random_density(int d, int rank, Rng& rng) {
  if (d < 1 || rank < 1 || rank > d) throw InputError("random_density: need 1 <= rank <= d");
  CMatrix g(d, rank);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < rank; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
  const CMatrix rho = g * g.adjoint();
  return clip_to_state(rho / rho.trace().real(), "random_density");
}

CMatrix random_pure_vector_state(int d, Rng& rng) { return random_density(d, 1, rng); }

CMatrix random_separable(int da, int db, int n_terms, Rng& rng) {
  if (n_terms < 1) throw InputError("random_separable: need at least one term");
  CMatrix rho = CMatrix::Zero(da * db, da * db);
  double total = 0.0;
  for (int k = 0; k < n_terms; ++k) {
    const double w = rng.uniform() + 1e-3;
    rho += w * kron(random_pure_vector_state(da, rng), random_pure_vector_state(db, rng));
    total += w;
  }
  return clip_to_state(rho / total, "random_separable");
}

CMatrix werner_2q(double p) {
  if (!(p >= -1.0 / 3.0 && p <= 1.0)) throw InputError("werner_2q: p must lie in [-1/3, 1]");
  CVector psi = CVector::Zero(4);
  psi(1) = 1.0 / std::sqrt(2.0);
  psi(2) = -1.0 / std::sqrt(2.0);
  return clip_to_state(p * psi * psi.adjoint() + (1.0 - p) * CMatrix::Identity(4, 4) / 4.0,
                       "werner_2q");
}

CMatrix bell_diagonal(double c1, double c2, double c3) {
  CMatrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, cplx(0, -1), cplx(0, 1), 0;
  sz << 1, 0, 0, -1;
  const CMatrix m = (CMatrix::Identity(4, 4) + c1 * kron(sx, sx) + c2 * kron(sy, sy) +
                     c3 * kron(sz, sz)) /
                    4.0;
  return clip_to_state(m, "bell_diagonal");
}

}  // namespace cmcsep
