#pragma once

// Dense linear-algebra kernel. Everything here is a pure function of its
// arguments; no state is shared between calls.

#include "cmcsep/types.hpp"

namespace cmcsep {

enum class Side { A, B };

/// Eigen-decomposition of a Hermitian matrix, eigenvalues non-increasing.
struct Spectrum {
  RVector values;
  CMatrix vectors;  // columns, orthonormal
};

struct RealSpectrum {
  RVector values;
  RMatrix vectors;
};

struct Svd {
  CMatrix u;
  RVector sigma;  // non-increasing, non-negative
  CMatrix v;      // m = u * diag(sigma) * v^dagger
};

struct RealSvd {
  RMatrix u;
  RVector sigma;
  RMatrix v;
};

/// Largest |m_ij - conj(m_ji)|.
double max_asymmetry(const CMatrix& m);

/// Checks Hermiticity to `rel_tol` relative to the largest entry and returns
/// (m + m^dagger)/2. Throws InputError on non-square, non-finite or
/// non-Hermitian input.
CMatrix hermitize_checked(const CMatrix& m, double rel_tol = 1e-12);

Spectrum hermitian_eig(const CMatrix& m);
RealSpectrum symmetric_eig(const RMatrix& m);

double min_eigenvalue(const CMatrix& hermitian);
double min_eigenvalue(const RMatrix& symmetric);

Svd svd(const CMatrix& m);
RealSvd svd(const RMatrix& m);

RVector singular_values(const CMatrix& m);
RVector singular_values(const RMatrix& m);

/// Sum of the k largest singular values, 1 <= k <= min(rows, cols).
double ky_fan_norm(const CMatrix& m, int k);
double ky_fan_norm(const RMatrix& m, int k);
double trace_norm(const CMatrix& m);
double trace_norm(const RMatrix& m);
double operator_norm(const CMatrix& m);
double operator_norm(const RMatrix& m);

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Reduced matrix of subsystem `keep`. Row-major pair indexing: the basis
/// vector |i>|j> has index i * d_B + j.
CMatrix partial_trace(const CMatrix& rho, Dims dims, Side keep);

/// Partial transpose on `side` (B by default).
CMatrix partial_transpose(const CMatrix& rho, Dims dims, Side side = Side::B);

/// Realignment R(m)_{(i,k),(j,l)} = m_{(i,j),(k,l)}; the result is
/// d_A^2 x d_B^2 and its singular values are the operator Schmidt
/// coefficients of m.
CMatrix realign(const CMatrix& m, Dims dims);

/// Checks that rho is a density matrix: square, Hermitian, unit trace to
/// `tol`, and eigenvalues >= -tol. Returns the Hermitized copy.
CMatrix validated_density(const CMatrix& rho, double tol = 1e-9);

/// Hermitian matrix power via the spectral decomposition. Eigenvalues must be
/// strictly positive when `power` is negative.
CMatrix hermitian_power(const CMatrix& m, double power);

}  // namespace cmcsep
