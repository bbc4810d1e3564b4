#include "cmcsep/filtering.hpp"

#include <cmath>
#include <sstream>

#include "cmcsep/matlin.hpp"
#include "cmcsep/observables.hpp"

namespace cmcsep {

namespace {

CMatrix apply_filters(const CMatrix& rho, const CMatrix& f_a, const CMatrix& f_b) {
  const CMatrix f = kron(f_a, f_b);
  return f * rho * f.adjoint();
}

// One exact minimization of f over one side with the other side fixed.
// M = tr_other[filtered rho] has eigenpairs (mu_k, v_k); the optimal local
// density is diagonal in the same basis with weights proportional to 1/mu_k,
// so the largest mu pairs with the smallest weight. In filter language this
// is F <- M^{-1/2} F, rescaled to det F = 1.
CMatrix side_step(const CMatrix& marginal, const CMatrix& filter) {
  const Spectrum s = hermitian_eig(CMatrix((marginal + marginal.adjoint()) / 2.0));
  const Eigen::Index d = s.values.size();
  const double floor = s.values(0) * 1e-300;
  RVector w(d);
  double log_det = 0.0;
  for (Eigen::Index k = 0; k < d; ++k) {
    const double mu = std::max(s.values(k), floor);
    if (!(mu > 0.0)) throw NumericalError("normal_form: marginal lost positive definiteness");
    w(k) = 1.0 / std::sqrt(mu);
    log_det += std::log(w(k));
  }
  // det(M^{-1/2} F) = det(M^{-1/2}) det(F) with det F = 1 already.
  w *= std::exp(-log_det / static_cast<double>(d));
  return s.vectors * w.asDiagonal() * s.vectors.adjoint() * filter;
}

// tr_B[(1 (x) F_B) rho (1 (x) F_B)^dagger] with tau_b = F_B^dagger F_B.
CMatrix reduced_a(const CMatrix& rho, Dims dims, const CMatrix& tau_b) {
  CMatrix out(dims.a, dims.a);
  for (int i = 0; i < dims.a; ++i)
    for (int k = 0; k < dims.a; ++k) {
      cplx acc = 0.0;
      for (int j = 0; j < dims.b; ++j)
        for (int l = 0; l < dims.b; ++l) acc += tau_b(l, j) * rho(i * dims.b + j, k * dims.b + l);
      out(i, k) = acc;
    }
  return out;
}

// tr_A[(F_A (x) 1) rho (F_A (x) 1)^dagger] with tau_a = F_A^dagger F_A.
CMatrix reduced_b(const CMatrix& rho, Dims dims, const CMatrix& tau_a) {
  CMatrix out = CMatrix::Zero(dims.b, dims.b);
  for (int i = 0; i < dims.a; ++i)
    for (int k = 0; k < dims.a; ++k) {
      const cplx t = tau_a(k, i);
      out += t * rho.block(i * dims.b, k * dims.b, dims.b, dims.b);
    }
  return out;
}

double marginal_error(const CMatrix& rho_n, Dims dims) {
  const CMatrix ra = partial_trace(rho_n, dims, Side::A) * static_cast<double>(dims.a);
  const CMatrix rb = partial_trace(rho_n, dims, Side::B) * static_cast<double>(dims.b);
  const double ea = (ra - CMatrix::Identity(dims.a, dims.a)).cwiseAbs().maxCoeff();
  const double eb = (rb - CMatrix::Identity(dims.b, dims.b)).cwiseAbs().maxCoeff();
  return std::max(ea, eb);
}

double log_det_hermitian(const CMatrix& m) {
  const Spectrum s = hermitian_eig(m);
  if (s.values.minCoeff() <= 1e-12) {
    std::ostringstream os;
    os << "f_rho: marginal not positive definite (min eigenvalue " << s.values.minCoeff() << ")";
    throw InputError(os.str());
  }
  return s.values.array().log().sum();
}

}  // namespace

double f_rho(const CMatrix& rho, Dims dims, const CMatrix& rho_a, const CMatrix& rho_b) {
  if (rho.rows() != dims.total() || rho_a.rows() != dims.a || rho_b.rows() != dims.b) {
    throw InputError("f_rho: dimension mismatch");
  }
  const double num = (rho * kron(rho_a, rho_b)).trace().real();
  const double la = log_det_hermitian(rho_a) / dims.a;
  const double lb = log_det_hermitian(rho_b) / dims.b;
  return num / std::exp(la + lb);
}

NormalForm normal_form(const CMatrix& rho_in, Dims dims, const FilterOptions& opts) {
  if (rho_in.rows() != dims.total() || dims.a < 2 || dims.b < 2) {
    throw InputError("normal_form: state size does not match dims");
  }
  CMatrix rho = validated_density(rho_in);

  NormalForm nf;
  nf.dims = dims;
  const int d = dims.total();
  if (min_eigenvalue(rho) < opts.noise_eps) {
    rho = (1.0 - opts.noise_eps) * rho + opts.noise_eps * CMatrix::Identity(d, d) / d;
    nf.noise_added = opts.noise_eps;
  }
  std::ostringstream sched;
  sched << "alternating exact side minimization (A then B per sweep); tol=" << opts.tol
        << " on relative f change for 3 sweeps, marginal_tol=" << opts.marginal_tol
        << ", max_iter=" << opts.max_iter;
  nf.schedule = sched.str();

  CMatrix f_a = CMatrix::Identity(dims.a, dims.a);
  CMatrix f_b = CMatrix::Identity(dims.b, dims.b);
  double f_prev = rho.trace().real();
  int quiet = 0;

  // Only the reduced matrices are needed inside the loop; the filtered state
  // itself is formed when checking convergence and at the end.
  for (int it = 1; it <= opts.max_iter; ++it) {
    const CMatrix m_a = f_a * reduced_a(rho, dims, f_b.adjoint() * f_b) * f_a.adjoint();
    f_a = side_step(m_a, f_a);
    const CMatrix r_b = reduced_b(rho, dims, f_a.adjoint() * f_a);
    f_b = side_step(f_b * r_b * f_b.adjoint(), f_b);

    const double f = (f_b * r_b * f_b.adjoint()).trace().real();
    nf.f_history.push_back(f);
    nf.iterations = it;
    const double rel = std::abs(f_prev - f) / std::max(f, 1e-300);
    quiet = rel < opts.tol ? quiet + 1 : 0;
    f_prev = f;
    if (quiet >= 3) {
      const CMatrix filtered = apply_filters(rho, f_a, f_b);
      if (marginal_error(filtered / filtered.trace().real(), dims) <= opts.marginal_tol) {
        nf.converged = true;
        break;
      }
    }
  }

  CMatrix filtered = apply_filters(rho, f_a, f_b);
  filtered = (filtered + filtered.adjoint()).eval() / 2.0;
  nf.f_a = f_a;
  nf.f_b = f_b;
  nf.f_value = filtered.trace().real();
  nf.rho_tilde = filtered / nf.f_value;
  nf.marginal_error = marginal_error(nf.rho_tilde, dims);

  const ObservableBasis ba = gellmann_basis(dims.a);
  const ObservableBasis bb = gellmann_basis(dims.b);
  const CMatrix id_b = CMatrix::Identity(dims.b, dims.b);
  nf.xi_matrix = RMatrix(ba.size() - 1, bb.size() - 1);
  for (int i = 1; i < ba.size(); ++i) {
    const CMatrix y = partial_trace(nf.rho_tilde * kron(ba[i], id_b), dims, Side::B);
    for (int k = 1; k < bb.size(); ++k) {
      nf.xi_matrix(i - 1, k - 1) = static_cast<double>(d) * (y * bb[k]).trace().real();
    }
  }
  nf.xi = singular_values(nf.xi_matrix);
  return nf;
}

}  // namespace cmcsep
