#include "cmcsep/schmidt.hpp"

#include "cmcsep/matlin.hpp"
#include "cmcsep/observables.hpp"

namespace cmcsep {

CMatrix SchmidtOperatorDecomposition::reconstruct() const {
  CMatrix out = CMatrix::Zero(dims.total(), dims.total());
  for (Eigen::Index k = 0; k < lambdas.size(); ++k) {
    out += lambdas(k) * kron(ops_a[static_cast<std::size_t>(k)], ops_b[static_cast<std::size_t>(k)]);
  }
  return out;
}

SchmidtOperatorDecomposition operator_schmidt(const CMatrix& rho, Dims dims) {
  if (rho.rows() != rho.cols() || rho.rows() != dims.total() || dims.a < 2 || dims.b < 2) {
    throw InputError("operator_schmidt: state size does not match dims");
  }
  const CMatrix h = hermitize_checked(rho, 1e-10);

  const ObservableBasis ba = gellmann_basis(dims.a);
  const ObservableBasis bb = gellmann_basis(dims.b);
  const CMatrix id_b = CMatrix::Identity(dims.b, dims.b);

  RMatrix xi(ba.size(), bb.size());
  for (int k = 0; k < ba.size(); ++k) {
    const CMatrix y = partial_trace(h * kron(ba[k], id_b), dims, Side::B);
    for (int l = 0; l < bb.size(); ++l) xi(k, l) = (y * bb[l]).trace().real();
  }

  SchmidtOperatorDecomposition out;
  out.dims = dims;
  out.swapped = dims.a > dims.b;
  // Singular vectors of the small side span the full operator space there.
  const RealSvd s = svd(out.swapped ? RMatrix(xi.transpose()) : xi);
  const int n = static_cast<int>(s.sigma.size());
  const RMatrix& small = s.u;
  const RMatrix& large = s.v;
  const RMatrix& left = out.swapped ? large : small;
  const RMatrix& right = out.swapped ? small : large;

  out.lambdas = s.sigma;
  out.g_a = RVector(n);
  out.g_b = RVector(n);
  for (int k = 0; k < n; ++k) {
    CMatrix ga = CMatrix::Zero(dims.a, dims.a);
    CMatrix gb = CMatrix::Zero(dims.b, dims.b);
    for (int i = 0; i < ba.size(); ++i) ga += left(i, k) * ba[i];
    for (int j = 0; j < bb.size(); ++j) gb += right(j, k) * bb[j];
    out.g_a(k) = ga.trace().real();
    out.g_b(k) = gb.trace().real();
    out.ops_a.push_back(std::move(ga));
    out.ops_b.push_back(std::move(gb));
  }
  return out;
}

}  // namespace cmcsep
