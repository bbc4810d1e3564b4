#include "cmcsep/covariance.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace cmcsep {

namespace {

// CM entries without validating rho; shared by the builders and the
// reconstruction residual checks.
CovarianceMatrix raw_cm(const CMatrix& rho, const ObservableBasis& basis, CmKind kind) {
  const int n = basis.size();
  CovarianceMatrix out;
  out.kind = kind;
  out.basis = basis.kind;
  out.dim = basis.dim;
  out.first_moments = basis.expectations(rho);

  std::vector<CMatrix> rho_m;
  rho_m.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) rho_m.push_back(rho * basis[i]);

  out.linear = CMatrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.linear(i, j) = (rho_m[i] * basis[j]).trace();
  // tr(rho M_i M_j) = conj(tr(rho M_j M_i)); enforce it exactly.
  out.linear = (out.linear + out.linear.adjoint()).eval() / 2.0;
  if (kind == CmKind::Symmetric) out.linear = out.linear.real().cast<cplx>();

  const RMatrix outer = out.first_moments * out.first_moments.transpose();
  out.matrix = out.linear - outer.cast<cplx>();
  return out;
}

RMatrix raw_c_block(const CMatrix& rho, Dims dims, const ObservableBasis& ba,
                    const ObservableBasis& bb, const RVector& ma, const RVector& mb) {
  const CMatrix id_b = CMatrix::Identity(dims.b, dims.b);
  RMatrix c(ba.size(), bb.size());
  for (int i = 0; i < ba.size(); ++i) {
    const CMatrix y = partial_trace(rho * kron(ba[i], id_b), dims, Side::B);
    for (int j = 0; j < bb.size(); ++j) c(i, j) = (y * bb[j]).trace().real() - ma(i) * mb(j);
  }
  return c;
}

void require_psd(const CMatrix& gamma, const char* what) {
  const double lo = min_eigenvalue(gamma);
  if (lo < -kCmPsdTolerance) {
    std::ostringstream os;
    os << what << ": covariance matrix not PSD (min eigenvalue " << lo
       << "); input state is numerically invalid";
    throw InputError(os.str());
  }
}

// Solves for the first moments of a single-system standard-basis CM using
// the commutators [D_k, X_kl], [D_k, Y_kl], [X_kl, Y_kl] and tr(rho) = 1.
RVector moments_from_commutators(const CMatrix& gamma, const ObservableBasis& basis) {
  const int d = basis.dim;
  const int n = basis.size();
  const int pairs = d * (d - 1) / 2;
  std::vector<std::array<int, 2>> rows;
  int p = 0;
  for (int k = 0; k < d; ++k)
    for (int l = k + 1; l < d; ++l, ++p) {
      const int x = d + p;
      const int y = d + pairs + p;
      rows.push_back({k, x});
      rows.push_back({k, y});
      rows.push_back({x, y});
    }

  const int m = static_cast<int>(rows.size());
  RMatrix lhs = RMatrix::Zero(2 * m + 1, n);
  RVector rhs = RVector::Zero(2 * m + 1);
  for (int r = 0; r < m; ++r) {
    const int i = rows[r][0], j = rows[r][1];
    const CMatrix comm = basis[i] * basis[j] - basis[j] * basis[i];
    for (int k = 0; k < n; ++k) {
      const cplx c = (basis[k] * comm).trace();
      lhs(2 * r, k) = c.real();
      lhs(2 * r + 1, k) = c.imag();
    }
    const cplx g = gamma(i, j) - gamma(j, i);
    rhs(2 * r) = g.real();
    rhs(2 * r + 1) = g.imag();
  }
  for (int k = 0; k < n; ++k) lhs(2 * m, k) = basis[k].trace().real();
  rhs(2 * m) = 1.0;
  return lhs.colPivHouseholderQr().solve(rhs);
}

void require_reconstructible(CmKind kind, BasisKind basis, const char* what) {
  if (kind != CmKind::Nonsymmetric) {
    throw InputError(std::string(what) +
                     ": a symmetric CM does not determine the state; nonsymmetric CM required");
  }
  if (basis != BasisKind::Standard) {
    throw InputError(std::string(what) +
                     ": reconstruction needs the standard basis; transform the CM first");
  }
}

void check_residual(double residual, double tol, double min_eig, const char* what) {
  if (residual > tol || min_eig < -kCmPsdTolerance) {
    std::ostringstream os;
    os << what << ": CM is inconsistent with any state (residual " << residual
       << ", min eigenvalue " << min_eig << ")";
    throw InputError(os.str());
  }
}

const std::array<CMatrix, 4>& pauli_matrices() {
  static const std::array<CMatrix, 4> sigma = [] {
    std::array<CMatrix, 4> s;
    for (auto& m : s) m = CMatrix::Zero(2, 2);
    s[0] << 1, 0, 0, 1;
    s[1] << 0, 1, 1, 0;
    s[2] << 0, cplx(0, -1), cplx(0, 1), 0;
    s[3] << 1, 0, 0, -1;
    return s;
  }();
  return sigma;
}

}  // namespace

CMatrix BlockCovarianceMatrix::assembled() const {
  const Eigen::Index na = a.rows(), nb = b.rows();
  CMatrix out(na + nb, na + nb);
  out.topLeftCorner(na, na) = a;
  out.topRightCorner(na, nb) = c.cast<cplx>();
  out.bottomLeftCorner(nb, na) = c.transpose().cast<cplx>();
  out.bottomRightCorner(nb, nb) = b;
  return out;
}

CovarianceMatrix build_cm(const CMatrix& rho, const ObservableBasis& basis, CmKind kind) {
  if (rho.rows() != basis.dim) throw InputError("build_cm: state dimension does not match basis");
  const CMatrix h = validated_density(rho);
  CovarianceMatrix out = raw_cm(h, basis, kind);
  require_psd(out.matrix, "build_cm");
  return out;
}

BlockCovarianceMatrix build_block_cm(const CMatrix& rho, Dims dims, const ObservableBasis& basis_a,
                                     const ObservableBasis& basis_b, CmKind kind) {
  if (basis_a.dim != dims.a || basis_b.dim != dims.b) {
    throw InputError("build_block_cm: basis dimensions do not match dims");
  }
  if (rho.rows() != dims.total()) throw InputError("build_block_cm: state size does not match dims");
  const CMatrix h = validated_density(rho);
  const CMatrix rho_a = partial_trace(h, dims, Side::A);
  const CMatrix rho_b = partial_trace(h, dims, Side::B);

  const CovarianceMatrix ga = raw_cm(rho_a, basis_a, kind);
  const CovarianceMatrix gb = raw_cm(rho_b, basis_b, kind);

  BlockCovarianceMatrix out;
  out.kind = kind;
  out.dims = dims;
  out.basis_a = basis_a.kind;
  out.basis_b = basis_b.kind;
  out.a = ga.matrix;
  out.b = gb.matrix;
  out.moments_a = ga.first_moments;
  out.moments_b = gb.first_moments;
  out.c = raw_c_block(h, dims, basis_a, basis_b, out.moments_a, out.moments_b);
  out.purity_a = (rho_a * rho_a).trace().real();
  out.purity_b = (rho_b * rho_b).trace().real();
  require_psd(out.assembled(), "build_block_cm");
  return out;
}

CovarianceMatrix transform_cm(const CovarianceMatrix& gamma, const RMatrix& o) {
  if (o.rows() != gamma.matrix.rows() || o.cols() != gamma.matrix.cols()) {
    throw InputError("transform_cm: shape mismatch");
  }
  const CMatrix oc = o.cast<cplx>();
  CovarianceMatrix out = gamma;
  out.basis = BasisKind::Custom;
  out.matrix = oc * gamma.matrix * oc.transpose();
  out.linear = oc * gamma.linear * oc.transpose();
  out.first_moments = o * gamma.first_moments;
  return out;
}

BlockCovarianceMatrix transform_block_cm(const BlockCovarianceMatrix& gamma, const RMatrix& o_a,
                                         const RMatrix& o_b) {
  if (o_a.rows() != gamma.a.rows() || o_a.cols() != gamma.a.cols() ||
      o_b.rows() != gamma.b.rows() || o_b.cols() != gamma.b.cols()) {
    throw InputError("transform_block_cm: shape mismatch");
  }
  BlockCovarianceMatrix out = gamma;
  out.basis_a = BasisKind::Custom;
  out.basis_b = BasisKind::Custom;
  out.a = o_a.cast<cplx>() * gamma.a * o_a.transpose().cast<cplx>();
  out.b = o_b.cast<cplx>() * gamma.b * o_b.transpose().cast<cplx>();
  out.c = o_a * gamma.c * o_b.transpose();
  out.moments_a = o_a * gamma.moments_a;
  out.moments_b = o_b * gamma.moments_b;
  return out;
}

CMatrix reconstruct_state(const CovarianceMatrix& gamma, double residual_tol) {
  require_reconstructible(gamma.kind, gamma.basis, "reconstruct_state");
  const ObservableBasis basis = standard_basis(gamma.dim);
  if (gamma.matrix.rows() != basis.size()) throw InputError("reconstruct_state: shape mismatch");

  const RVector moments = moments_from_commutators(gamma.matrix, basis);
  CMatrix rho = basis.synthesize(moments);
  rho = (rho + rho.adjoint()).eval() / 2.0;

  const CovarianceMatrix check = raw_cm(rho, basis, CmKind::Nonsymmetric);
  const double residual = (check.matrix - gamma.matrix).cwiseAbs().maxCoeff();
  check_residual(residual, residual_tol, min_eigenvalue(rho), "reconstruct_state");
  return rho;
}

CMatrix reconstruct_state(const BlockCovarianceMatrix& gamma, double residual_tol) {
  require_reconstructible(gamma.kind, gamma.basis_a, "reconstruct_state");
  require_reconstructible(gamma.kind, gamma.basis_b, "reconstruct_state");
  const ObservableBasis ba = standard_basis(gamma.dims.a);
  const ObservableBasis bb = standard_basis(gamma.dims.b);

  const RVector ma = moments_from_commutators(gamma.a, ba);
  const RVector mb = moments_from_commutators(gamma.b, bb);
  const RMatrix corr = gamma.c + ma * mb.transpose();

  CMatrix rho = CMatrix::Zero(gamma.dims.total(), gamma.dims.total());
  for (int k = 0; k < ba.size(); ++k)
    for (int l = 0; l < bb.size(); ++l) rho += corr(k, l) * kron(ba[k], bb[l]);
  rho = (rho + rho.adjoint()).eval() / 2.0;

  const CMatrix rho_a = partial_trace(rho, gamma.dims, Side::A);
  const CMatrix rho_b = partial_trace(rho, gamma.dims, Side::B);
  const CovarianceMatrix ga = raw_cm(rho_a, ba, CmKind::Nonsymmetric);
  const CovarianceMatrix gb = raw_cm(rho_b, bb, CmKind::Nonsymmetric);
  const RMatrix c = raw_c_block(rho, gamma.dims, ba, bb, ga.first_moments, gb.first_moments);
  const double residual = std::max({(ga.matrix - gamma.a).cwiseAbs().maxCoeff(),
                                    (gb.matrix - gamma.b).cwiseAbs().maxCoeff(),
                                    (c - gamma.c).cwiseAbs().maxCoeff()});
  check_residual(residual, residual_tol, min_eigenvalue(rho), "reconstruct_state");
  return rho;
}

PureCmReport check_pure_cm_structure(const CovarianceMatrix& gamma, double tol) {
  PureCmReport r;
  const int d = gamma.dim;
  const bool sym = gamma.kind == CmKind::Symmetric;
  r.expected_rank = sym ? 2 * (d - 1) : d - 1;
  r.expected_eigenvalue = sym ? 0.5 : 1.0;

  const Spectrum s = hermitian_eig(gamma.matrix);
  for (Eigen::Index i = 0; i < s.values.size(); ++i) {
    if (s.values(i) > 0.5 * r.expected_eigenvalue) {
      ++r.rank;
      r.max_eigenvalue_deviation =
          std::max(r.max_eigenvalue_deviation, std::abs(s.values(i) - r.expected_eigenvalue));
    } else {
      r.max_eigenvalue_deviation = std::max(r.max_eigenvalue_deviation, std::abs(s.values(i)));
    }
  }
  const CMatrix g = gamma.matrix / r.expected_eigenvalue;
  r.idempotence_residual = (g * g - g).norm();
  r.trace = gamma.matrix.trace().real();
  r.consistent = r.rank == r.expected_rank && r.max_eigenvalue_deviation <= tol &&
                 r.idempotence_residual <= tol;
  return r;
}

double concavity_check(const std::vector<CMatrix>& states, const std::vector<double>& weights,
                       const ObservableBasis& basis, CmKind kind) {
  if (states.empty() || states.size() != weights.size()) {
    throw InputError("concavity_check: need matching, non-empty state and weight lists");
  }
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw InputError("concavity_check: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InputError("concavity_check: weights must sum to 1");

  CMatrix mixture = CMatrix::Zero(basis.dim, basis.dim);
  CMatrix mixed_cms = CMatrix::Zero(basis.size(), basis.size());
  for (std::size_t k = 0; k < states.size(); ++k) {
    mixture += weights[k] * states[k];
    mixed_cms += weights[k] * build_cm(states[k], basis, kind).matrix;
  }
  return min_eigenvalue(CMatrix(build_cm(mixture, basis, kind).matrix - mixed_cms));
}

BlochInversion bloch_invert(const CMatrix& rho, BlochFlip flip) {
  if (rho.rows() != 4 || rho.cols() != 4) throw InputError("bloch_invert: two-qubit state required");
  const auto& s = pauli_matrices();
  const CMatrix h = hermitize_checked(rho, 1e-10);

  std::array<std::array<double, 4>, 4> t{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) t[i][j] = (h * kron(s[i], s[j])).trace().real();

  auto out = t;
  const bool flip_a = flip == BlochFlip::A || flip == BlochFlip::Both;
  const bool flip_b = flip == BlochFlip::B || flip == BlochFlip::Both;
  for (int i = 1; i < 4; ++i) {
    if (flip_a) out[i][0] = -t[i][0];
    if (flip_b) out[0][i] = -t[0][i];
  }
  if (flip != BlochFlip::Both) {
    for (int i = 1; i < 4; ++i)
      for (int j = 1; j < 4; ++j) out[i][j] = t[i][j] - 2.0 * t[i][0] * t[0][j];
  }

  BlochInversion r;
  r.rho = CMatrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.rho += 0.25 * out[i][j] * kron(s[i], s[j]);
  r.min_eigenvalue = min_eigenvalue(r.rho);
  r.is_state = r.min_eigenvalue >= -1e-12;
  return r;
}

}  // namespace cmcsep
