#pragma once

#include <cstdint>
#include <random>

#include "cmcsep/types.hpp"

namespace cmcsep {

/// Seedable generator with a fixed output stream on every platform: the
/// engine is mt19937_64 (bit-exact by the standard) and the uniform/normal
/// transforms are implemented here rather than taken from <random>, whose
/// distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal, Marsaglia polar method.
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// SplitMix64 finalizer; used to derive independent per-sample seeds.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index);

/// Eigenvalues in (-1e-12, 0) are set to zero and the trace renormalized;
/// anything more negative throws InputError.
CMatrix clip_to_state(const CMatrix& m, const char* what);

/// 3x3 chessboard state N sum_j |V_j><V_j|.
CMatrix chessboard(double m, double n, double a, double b, double c, double d);
/// Chessboard state with all six parameters drawn from normal(0, 2).
CMatrix sample_chessboard(Rng& rng);
CMatrix sample_chessboard(std::uint64_t seed);

/// p rho_BE + (1 - p) 1/9, with rho_BE built from the five-tile UPB.
CMatrix upb_tiles(double p);

/// Two-qubit family
///   (eps/2) [[1+r,0,0,t],[0,0,0,0],[0,0,s-r,0],[t,0,0,1-s]] + (1-eps)|01><01|.
/// Throws InputError when the parameters do not give a state.
CMatrix rho_epsilon(double eps, double r, double s, double t);
/// Same matrix without the PSD check (used for region scans).
CMatrix rho_epsilon_raw(double eps, double r, double s, double t);

/// G G^dagger / tr with G a d x rank complex Gaussian matrix.
CMatrix random_density(int d, int rank, Rng& rng);
CMatrix random_pure_vector_state(int d, Rng& rng);
/// Convex mixture of n_terms random pure product states with random weights.
CMatrix random_separable(int da, int db, int n_terms, Rng& rng);

/// p |psi-><psi-| + (1 - p) 1/4.
CMatrix werner_2q(double p);
/// (1/4)(1 + sum_k c_k s_k (x) s_k).
CMatrix bell_diagonal(double c1, double c2, double c3);

}  // namespace cmcsep
