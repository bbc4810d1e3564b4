#pragma once

#include <cmath>

#include "cmcsep/matlin.hpp"
#include "cmcsep/states.hpp"

namespace testutil {

using namespace cmcsep;

inline CMatrix random_cmatrix(int rows, int cols, Rng& rng) {
  CMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = cplx(rng.normal(), rng.normal());
  return m;
}

inline CMatrix random_hermitian(int d, Rng& rng) {
  const CMatrix g = random_cmatrix(d, d, rng);
  return (g + g.adjoint()) / 2.0;
}

inline CMatrix random_unitary(int d, Rng& rng) {
  Eigen::HouseholderQR<CMatrix> qr(random_cmatrix(d, d, rng));
  return qr.householderQ() * CMatrix::Identity(d, d);
}

inline CMatrix projector(const CVector& v) { return v * v.adjoint() / v.squaredNorm(); }

inline CMatrix phi_plus() {
  CVector v = CVector::Zero(4);
  v(0) = v(3) = 1.0;
  return projector(v);
}

inline CMatrix ket(int d, int k) {
  CVector v = CVector::Zero(d);
  v(k) = 1.0;
  return projector(v);
}

inline CMatrix maximally_mixed(int d) { return CMatrix::Identity(d, d) / static_cast<double>(d); }

}  // namespace testutil
