#include "cmcsep/observables.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cmcsep/matlin.hpp"

namespace cmcsep {

namespace {

const cplx I(0.0, 1.0);

CMatrix unit(int d, int i, int j) {
  CMatrix e = CMatrix::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

void require_dim(int d, int min, const char* what) {
  if (d < min) {
    std::ostringstream os;
    os << what << ": dimension " << d << " below minimum " << min;
    throw InputError(os.str());
  }
}

}  // namespace

std::string to_string(BasisKind kind) {
  switch (kind) {
    case BasisKind::Standard: return "standard";
    case BasisKind::Pauli: return "pauli";
    case BasisKind::GellMann: return "gellmann";
    case BasisKind::WeylParity: return "weyl";
    case BasisKind::Custom: return "custom";
  }
  return "custom";
}

BasisKind parse_basis_kind(const std::string& name) {
  if (name == "standard") return BasisKind::Standard;
  if (name == "pauli") return BasisKind::Pauli;
  if (name == "gellmann") return BasisKind::GellMann;
  if (name == "weyl") return BasisKind::WeylParity;
  throw InputError("unknown basis kind '" + name + "' (expected standard|pauli|gellmann|weyl)");
}

CMatrix ObservableBasis::gram() const {
  const int n = size();
  CMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = (ops[i] * ops[j]).trace();
  return g;
}

double ObservableBasis::orthonormality_error() const {
  return (gram() - CMatrix::Identity(size(), size())).cwiseAbs().maxCoeff();
}

bool ObservableBasis::identity_first() const {
  if (ops.empty()) return false;
  const CMatrix id = CMatrix::Identity(dim, dim) / std::sqrt(static_cast<double>(dim));
  return (ops[0] - id).cwiseAbs().maxCoeff() < 1e-12;
}

CMatrix ObservableBasis::gamma() const {
  const int n = size();
  CMatrix g(dim * dim, n);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) g(a * dim + b, i) = ops[i](a, b);
  return g;
}

RVector ObservableBasis::expectations(const CMatrix& rho) const {
  if (rho.rows() != dim || rho.cols() != dim) {
    throw InputError("expectations: state dimension does not match basis");
  }
  RVector m(size());
  for (int k = 0; k < size(); ++k) m(k) = (rho * ops[k]).trace().real();
  return m;
}

CMatrix ObservableBasis::synthesize(const RVector& coeffs) const {
  if (coeffs.size() != size()) throw InputError("synthesize: coefficient count mismatch");
  CMatrix out = CMatrix::Zero(dim, dim);
  for (int k = 0; k < size(); ++k) out += coeffs(k) * ops[k];
  return out;
}

ObservableBasis standard_basis(int d) {
  require_dim(d, 2, "standard_basis");
  ObservableBasis b{d, BasisKind::Standard, {}};
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i) b.ops.push_back(unit(d, i, i));
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) b.ops.push_back(r * (unit(d, i, j) + unit(d, j, i)));
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) b.ops.push_back(I * r * (unit(d, i, j) - unit(d, j, i)));
  return b;
}

ObservableBasis pauli_basis() { return gellmann_basis(2); }

ObservableBasis gellmann_basis(int d) {
  require_dim(d, 2, "gellmann_basis");
  ObservableBasis b{d, d == 2 ? BasisKind::Pauli : BasisKind::GellMann, {}};
  const double r = 1.0 / std::sqrt(2.0);
  b.ops.push_back(CMatrix::Identity(d, d) / std::sqrt(static_cast<double>(d)));
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      b.ops.push_back(r * (unit(d, i, j) + unit(d, j, i)));
      b.ops.push_back(-I * r * (unit(d, i, j) - unit(d, j, i)));
    }
  for (int l = 1; l < d; ++l) {
    CMatrix h = CMatrix::Zero(d, d);
    for (int j = 0; j < l; ++j) h(j, j) = 1.0;
    h(l, l) = -static_cast<double>(l);
    b.ops.push_back(h / std::sqrt(static_cast<double>(l * (l + 1))));
  }
  if (d > 2) b.kind = BasisKind::GellMann;
  return b;
}

CMatrix parity_operator(int d) {
  CMatrix p = CMatrix::Zero(d, d);
  for (int x = 0; x < d; ++x) p(((d - x) % d), x) = 1.0;
  return p;
}

CMatrix weyl_operator(int d, int q, int p) {
  CMatrix shift = CMatrix::Zero(d, d);
  CMatrix clock = CMatrix::Zero(d, d);
  const double w = 2.0 * std::numbers::pi / d;
  for (int x = 0; x < d; ++x) {
    shift((x + q) % d, x) = 1.0;
    clock(x, x) = std::polar(1.0, w * p * x);
  }
  return shift * clock;
}

ObservableBasis weyl_parity_basis(int d) {
  require_dim(d, 3, "weyl_parity_basis");
  if (d % 2 == 0) throw InputError("weyl_parity_basis: dimension must be odd");
  ObservableBasis b{d, BasisKind::WeylParity, {}};
  const CMatrix p0 = parity_operator(d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int q = 0; q < d; ++q)
    for (int p = 0; p < d; ++p) {
      const CMatrix w = weyl_operator(d, q, p);
      CMatrix pqp = w * p0 * w.adjoint();
      b.ops.push_back(norm * (pqp + pqp.adjoint()) / 2.0);
    }
  return b;
}

ObservableBasis make_basis(BasisKind kind, int d) {
  switch (kind) {
    case BasisKind::Standard: return standard_basis(d);
    case BasisKind::Pauli:
      if (d != 2) throw InputError("pauli basis requires d = 2");
      return pauli_basis();
    case BasisKind::GellMann: return gellmann_basis(d);
    case BasisKind::WeylParity: return weyl_parity_basis(d);
    case BasisKind::Custom: break;
  }
  throw InputError("make_basis: custom bases must be supplied explicitly");
}

ObservableBasis custom_basis(int d, std::vector<CMatrix> ops) {
  ObservableBasis b{d, BasisKind::Custom, std::move(ops)};
  if (b.size() != d * d) throw InputError("custom_basis: need d^2 operators");
  for (const auto& op : b.ops) {
    if (op.rows() != d || op.cols() != d) throw InputError("custom_basis: operator shape mismatch");
    if (max_asymmetry(op) > 1e-10) throw InputError("custom_basis: operator not Hermitian");
  }
  if (b.orthonormality_error() > 1e-10) throw InputError("custom_basis: not orthonormal");
  return b;
}

RMatrix unitary_to_orthogonal(const CMatrix& u, const ObservableBasis& basis) {
  const int d = basis.dim;
  if (u.rows() != d || u.cols() != d) throw InputError("unitary_to_orthogonal: shape mismatch");
  const double unitarity = (u.adjoint() * u - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (unitarity > 1e-10) {
    std::ostringstream os;
    os << "unitary_to_orthogonal: matrix is not unitary (deviation " << unitarity << ")";
    throw InputError(os.str());
  }
  const CMatrix g = basis.gamma();
  const CMatrix o = g.transpose() * kron(u.transpose(), u.adjoint()) * g.conjugate();
  const double imag = o.imag().cwiseAbs().maxCoeff();
  if (imag > 1e-8) {
    throw NumericalError("unitary_to_orthogonal: representation is not real; basis not Hermitian?");
  }
  return o.real();
}

}  // namespace cmcsep
