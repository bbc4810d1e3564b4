#include "cmcsep/matlin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

namespace cmcsep {

namespace {

void require_finite(const CMatrix& m, const char* what) {
  if (!m.allFinite()) {
    throw InputError(std::string(what) + ": matrix has non-finite entries");
  }
}

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << ": expected a square matrix, got " << m.rows() << "x" << m.cols();
    throw InputError(os.str());
  }
}

void require_bipartite(const CMatrix& m, Dims dims, const char* what) {
  require_square(m, what);
  if (dims.a < 1 || dims.b < 1 || m.rows() != dims.total()) {
    std::ostringstream os;
    os << what << ": matrix of size " << m.rows() << " does not match dims " << dims.a << "x"
       << dims.b;
    throw InputError(os.str());
  }
}

void check_ky_fan_k(Eigen::Index rows, Eigen::Index cols, int k) {
  if (k < 1 || k > std::min(rows, cols)) {
    std::ostringstream os;
    os << "ky_fan_norm: k = " << k << " outside [1, " << std::min(rows, cols) << "]";
    throw InputError(os.str());
  }
}

}  // namespace

double max_asymmetry(const CMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

CMatrix hermitize_checked(const CMatrix& m, double rel_tol) {
  require_square(m, "hermitian check");
  require_finite(m, "hermitian check");
  if (m.size() == 0) return m;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = max_asymmetry(m);
  if (asym > rel_tol * scale) {
    std::ostringstream os;
    os << "matrix is not Hermitian: max |m - m^dagger| = " << asym;
    throw InputError(os.str());
  }
  return (m + m.adjoint()) / 2.0;
}

Spectrum hermitian_eig(const CMatrix& m) {
  const CMatrix h = hermitize_checked(m);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() != Eigen::Success) throw NumericalError("hermitian_eig: no convergence");
  // Eigen returns ascending order.
  Spectrum s;
  s.values = es.eigenvalues().reverse();
  s.vectors = es.eigenvectors().rowwise().reverse();
  return s;
}

RealSpectrum symmetric_eig(const RMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("symmetric_eig: matrix not square");
  if (!m.allFinite()) throw InputError("symmetric_eig: non-finite entries");
  const RMatrix h = (m + m.transpose()) / 2.0;
  Eigen::SelfAdjointEigenSolver<RMatrix> es(h);
  if (es.info() != Eigen::Success) throw NumericalError("symmetric_eig: no convergence");
  RealSpectrum s;
  s.values = es.eigenvalues().reverse();
  s.vectors = es.eigenvectors().rowwise().reverse();
  return s;
}

double min_eigenvalue(const CMatrix& hermitian) {
  const CMatrix h = hermitize_checked(hermitian, 1e-9);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double min_eigenvalue(const RMatrix& symmetric) {
  const RMatrix h = (symmetric + symmetric.transpose()) / 2.0;
  Eigen::SelfAdjointEigenSolver<RMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

Svd svd(const CMatrix& m) {
  require_finite(m, "svd");
  Eigen::JacobiSVD<CMatrix> js(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {js.matrixU(), js.singularValues(), js.matrixV()};
}

RealSvd svd(const RMatrix& m) {
  if (!m.allFinite()) throw InputError("svd: non-finite entries");
  Eigen::JacobiSVD<RMatrix> js(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {js.matrixU(), js.singularValues(), js.matrixV()};
}

RVector singular_values(const CMatrix& m) {
  require_finite(m, "singular_values");
  return Eigen::JacobiSVD<CMatrix>(m).singularValues();
}

RVector singular_values(const RMatrix& m) {
  if (!m.allFinite()) throw InputError("singular_values: non-finite entries");
  return Eigen::JacobiSVD<RMatrix>(m).singularValues();
}

double ky_fan_norm(const CMatrix& m, int k) {
  check_ky_fan_k(m.rows(), m.cols(), k);
  return singular_values(m).head(k).sum();
}

double ky_fan_norm(const RMatrix& m, int k) {
  check_ky_fan_k(m.rows(), m.cols(), k);
  return singular_values(m).head(k).sum();
}

double trace_norm(const CMatrix& m) { return m.size() == 0 ? 0.0 : singular_values(m).sum(); }
double trace_norm(const RMatrix& m) { return m.size() == 0 ? 0.0 : singular_values(m).sum(); }

double operator_norm(const CMatrix& m) { return m.size() == 0 ? 0.0 : singular_values(m)(0); }
double operator_norm(const RMatrix& m) { return m.size() == 0 ? 0.0 : singular_values(m)(0); }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

CMatrix partial_trace(const CMatrix& rho, Dims dims, Side keep) {
  require_bipartite(rho, dims, "partial_trace");
  const int da = dims.a, db = dims.b;
  if (keep == Side::A) {
    CMatrix out = CMatrix::Zero(da, da);
    for (int i = 0; i < da; ++i)
      for (int k = 0; k < da; ++k)
        for (int j = 0; j < db; ++j) out(i, k) += rho(i * db + j, k * db + j);
    return out;
  }
  CMatrix out = CMatrix::Zero(db, db);
  for (int j = 0; j < db; ++j)
    for (int l = 0; l < db; ++l)
      for (int i = 0; i < da; ++i) out(j, l) += rho(i * db + j, i * db + l);
  return out;
}

CMatrix partial_transpose(const CMatrix& rho, Dims dims, Side side) {
  require_bipartite(rho, dims, "partial_transpose");
  const int da = dims.a, db = dims.b;
  CMatrix out(rho.rows(), rho.cols());
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k)
        for (int l = 0; l < db; ++l) {
          if (side == Side::B)
            out(i * db + j, k * db + l) = rho(i * db + l, k * db + j);
          else
            out(i * db + j, k * db + l) = rho(k * db + j, i * db + l);
        }
  return out;
}

CMatrix realign(const CMatrix& m, Dims dims) {
  require_bipartite(m, dims, "realign");
  const int da = dims.a, db = dims.b;
  CMatrix out(da * da, db * db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k)
        for (int l = 0; l < db; ++l) out(i * da + k, j * db + l) = m(i * db + j, k * db + l);
  return out;
}

CMatrix validated_density(const CMatrix& rho, double tol) {
  const CMatrix h = hermitize_checked(rho, 1e-10);
  const double tr = h.trace().real();
  if (std::abs(tr - 1.0) > tol) {
    std::ostringstream os;
    os << "not a density matrix: trace = " << tr;
    throw InputError(os.str());
  }
  const double lo = min_eigenvalue(h);
  if (lo < -tol) {
    std::ostringstream os;
    os << "not a density matrix: minimal eigenvalue " << lo;
    throw InputError(os.str());
  }
  return h;
}

CMatrix hermitian_power(const CMatrix& m, double power) {
  const Spectrum s = hermitian_eig(m);
  RVector f(s.values.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const double v = s.values(i);
    if (power < 0.0 && v <= 0.0) {
      throw NumericalError("hermitian_power: non-positive eigenvalue with negative power");
    }
    f(i) = v <= 0.0 ? 0.0 : std::pow(v, power);
  }
  return s.vectors * f.asDiagonal() * s.vectors.adjoint();
}

}  // namespace cmcsep
