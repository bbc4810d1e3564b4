#pragma once

#include <string>
#include <vector>

#include "cmcsep/types.hpp"

namespace cmcsep {

enum class BasisKind { Standard, Pauli, GellMann, WeylParity, Custom };

std::string to_string(BasisKind kind);
/// Accepts the CLI spellings: standard, pauli, gellmann, weyl.
BasisKind parse_basis_kind(const std::string& name);

/// Ordered Hilbert-Schmidt orthonormal Hermitian operator basis on C^d.
///
/// Orderings are frozen per kind:
///  - Standard:   D_0..D_{d-1}, then X_{ij} for i<j lexicographic, then Y_{ij}.
///  - Pauli:      {1, sx, sy, sz} / sqrt(2).
///  - GellMann:   1/sqrt(d), then for each pair i<j the symmetric and the
///                antisymmetric (sigma_y-like) element, then the d-1 diagonal
///                traceless elements. For d = 2 this coincides with Pauli.
///  - WeylParity: P(q,p)/sqrt(d) for (q,p) lexicographic, d odd.
struct ObservableBasis {
  int dim = 0;
  BasisKind kind = BasisKind::Custom;
  std::vector<CMatrix> ops;

  int size() const { return static_cast<int>(ops.size()); }
  const CMatrix& operator[](int i) const { return ops[static_cast<std::size_t>(i)]; }

  /// Gram matrix tr(M_i M_j).
  CMatrix gram() const;
  /// Largest deviation of the Gram matrix from the identity.
  double orthonormality_error() const;
  /// Whether ops[0] is the identity over sqrt(d) (to 1e-12).
  bool identity_first() const;

  /// Gamma isometry: column i is the row-major vectorization of ops[i].
  CMatrix gamma() const;

  /// Coefficients <M_k> = tr(rho M_k); rho = sum_k <M_k> M_k.
  RVector expectations(const CMatrix& rho) const;
  /// Inverse of expectations(): sum_k coeffs_k M_k.
  CMatrix synthesize(const RVector& coeffs) const;
};

ObservableBasis standard_basis(int d);
ObservableBasis pauli_basis();
ObservableBasis gellmann_basis(int d);
ObservableBasis weyl_parity_basis(int d);
ObservableBasis make_basis(BasisKind kind, int d);

/// Validates that `ops` is an orthonormal Hermitian basis of C^d (to 1e-10)
/// and wraps it as a Custom basis.
ObservableBasis custom_basis(int d, std::vector<CMatrix> ops);

/// Real orthogonal O with U M_i U^dagger = sum_j O_ij M_j, computed as
/// Gamma^T (U^T (x) U^dagger) Gamma^*. Throws InputError if U is not unitary
/// to 1e-10.
RMatrix unitary_to_orthogonal(const CMatrix& u, const ObservableBasis& basis);

/// Parity operator P(0,0): |x> -> |-x mod d>.
CMatrix parity_operator(int d);
/// Discrete Weyl operator W(q,p) = X^q Z^p with X|x> = |x+1>, Z|x> = w^x |x>.
CMatrix weyl_operator(int d, int q, int p);

}  // namespace cmcsep
