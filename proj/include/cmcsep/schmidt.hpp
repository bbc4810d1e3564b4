#pragma once

#include <vector>

#include "cmcsep/types.hpp"

namespace cmcsep {

/// rho = sum_k lambda_k G_k^A (x) G_k^B with orthonormal Hermitian G's.
/// When d_A > d_B the roles are swapped internally; `swapped` records it and
/// ops_a/ops_b always refer to the original A and B.
struct SchmidtOperatorDecomposition {
  Dims dims;
  bool swapped = false;
  RVector lambdas;  // non-increasing, length min(d_A, d_B)^2
  std::vector<CMatrix> ops_a;
  std::vector<CMatrix> ops_b;
  RVector g_a;  // tr(G_k^A)
  RVector g_b;  // tr(G_k^B)

  CMatrix reconstruct() const;
};

/// Operator Schmidt decomposition via the SVD of the real coefficient matrix
/// xi_kl = tr(rho (G~_k (x) G~_l)) over Gell-Mann-type bases.
SchmidtOperatorDecomposition operator_schmidt(const CMatrix& rho, Dims dims);

}  // namespace cmcsep
