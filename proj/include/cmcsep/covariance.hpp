#pragma once

#include <vector>

#include "cmcsep/matlin.hpp"
#include "cmcsep/observables.hpp"
#include "cmcsep/types.hpp"

namespace cmcsep {

/// Symmetric: gamma^S_ij = <{M_i,M_j}>/2 - <M_i><M_j> (real symmetric).
/// Nonsymmetric: gamma_ij = <M_i M_j> - <M_i><M_j> (complex Hermitian).
enum class CmKind { Symmetric, Nonsymmetric };

/// Eigenvalues below -kCmPsdTolerance make a covariance matrix invalid.
inline constexpr double kCmPsdTolerance = 1e-9;

struct CovarianceMatrix {
  CmKind kind = CmKind::Symmetric;
  BasisKind basis = BasisKind::Custom;
  int dim = 0;
  CMatrix matrix;         // real-valued for the symmetric kind
  CMatrix linear;         // g_ij = <M_i M_j> (or its symmetrization)
  RVector first_moments;  // <M_k>

  RMatrix real() const { return matrix.real(); }
};

/// Block CM over {A_k (x) 1, 1 (x) B_k}: [[A, C], [C^T, B]].
struct BlockCovarianceMatrix {
  CmKind kind = CmKind::Symmetric;
  Dims dims;
  BasisKind basis_a = BasisKind::Custom;
  BasisKind basis_b = BasisKind::Custom;
  CMatrix a;  // d_A^2 x d_A^2
  CMatrix b;  // d_B^2 x d_B^2
  RMatrix c;  // d_A^2 x d_B^2, C_ij = <A_i (x) B_j> - <A_i><B_j>
  RVector moments_a;
  RVector moments_b;
  double purity_a = 0.0;  // tr(rho_A^2)
  double purity_b = 0.0;

  CMatrix assembled() const;
  /// Linear part of C: <A_i (x) B_j>.
  RMatrix linear_c() const { return c + moments_a * moments_b.transpose(); }
};

CovarianceMatrix build_cm(const CMatrix& rho, const ObservableBasis& basis, CmKind kind);

BlockCovarianceMatrix build_block_cm(const CMatrix& rho, Dims dims, const ObservableBasis& basis_a,
                                     const ObservableBasis& basis_b, CmKind kind);

/// O gamma O^T; for a real orthogonal O the spectrum is preserved.
CovarianceMatrix transform_cm(const CovarianceMatrix& gamma, const RMatrix& o);

/// Local change of observables O = O_A (+) O_B.
BlockCovarianceMatrix transform_block_cm(const BlockCovarianceMatrix& gamma, const RMatrix& o_a,
                                         const RMatrix& o_b);

/// Reconstructs rho from a nonsymmetric CM in the standard basis using the
/// commutator relations gamma_ij - gamma_ji = <[M_i, M_j]>. Throws InputError
/// if the CM is symmetric, in another basis, or no state reproduces it to
/// `residual_tol`.
CMatrix reconstruct_state(const CovarianceMatrix& gamma, double residual_tol = 1e-8);

/// Reconstructs a bipartite rho from a nonsymmetric block CM built over
/// standard local bases: first moments from the diagonal blocks, then
/// <A_k (x) B_l> = C_kl + <A_k><B_l>.
CMatrix reconstruct_state(const BlockCovarianceMatrix& gamma, double residual_tol = 1e-8);

struct PureCmReport {
  int rank = 0;
  int expected_rank = 0;
  double expected_eigenvalue = 0.0;
  double max_eigenvalue_deviation = 0.0;  // over the nonzero eigenvalues
  double idempotence_residual = 0.0;      // ||g^2 - g||_F with g = gamma / expected_eigenvalue
  double trace = 0.0;
  bool consistent = false;
};

/// Checks the pure-state structure: rank d-1 with eigenvalues 1 (nonsymmetric)
/// or rank 2(d-1) with eigenvalues 1/2 (symmetric).
PureCmReport check_pure_cm_structure(const CovarianceMatrix& gamma, double tol = 1e-8);

/// Minimal eigenvalue of gamma(sum_k p_k rho_k) - sum_k p_k gamma(rho_k).
double concavity_check(const std::vector<CMatrix>& states, const std::vector<double>& weights,
                       const ObservableBasis& basis, CmKind kind = CmKind::Nonsymmetric);

enum class BlochFlip { A, B, Both };

struct BlochInversion {
  CMatrix rho;  // may fail to be PSD
  double min_eigenvalue = 0.0;
  bool is_state = false;
};

/// Two-qubit Bloch-vector inversion. A single-side flip sends
/// <s_i^A> -> -<s_i^A> and <s_i^A s_j^B> -> <s_i^A s_j^B> - 2<s_i^A><s_j^B>,
/// which leaves the symmetric block CM unchanged. Both flips both local
/// Bloch vectors and keeps the correlations.
BlochInversion bloch_invert(const CMatrix& rho, BlochFlip flip = BlochFlip::A);

}  // namespace cmcsep
