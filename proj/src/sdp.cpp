#include "cmcsep/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace cmcsep {

namespace {

// tr(a b) for square matrices.
double trace_prod(const RMatrix& a, const RMatrix& b) { return a.cwiseProduct(b.transpose()).sum(); }

RMatrix sym(const RMatrix& m) { return (m + m.transpose()) / 2.0; }

// Largest alpha with x + alpha dx still positive definite (inf if unbounded).
double max_step(const RMatrix& x, const RMatrix& dx) {
  Eigen::LLT<RMatrix> llt(x);
  if (llt.info() != Eigen::Success) return 0.0;
  const RMatrix l_inv_dx = llt.matrixL().solve(dx);
  const RMatrix w = llt.matrixL().solve(RMatrix(l_inv_dx.transpose()));
  Eigen::SelfAdjointEigenSolver<RMatrix> es(sym(w), Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues()(0);
  return lo >= 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / lo;
}

}  // namespace

std::string to_string(SdpStatus status) {
  switch (status) {
    case SdpStatus::Optimal: return "optimal";
    case SdpStatus::Infeasible: return "infeasible";
    case SdpStatus::MaxIter: return "max_iter";
  }
  return "max_iter";
}

void SdpProblem::validate() const {
  const int n = size();
  if (f0.cols() != n) throw InputError("sdp: F_0 not square");
  if (static_cast<int>(f.size()) != num_vars()) throw InputError("sdp: need one F_i per variable");
  int total = 0;
  for (int b : blocks) {
    if (b < 1) throw InputError("sdp: block sizes must be positive");
    total += b;
  }
  if (total != n) throw InputError("sdp: block sizes do not sum to the matrix size");

  // Mask of entries allowed to be nonzero.
  RMatrix mask = RMatrix::Zero(n, n);
  int off = 0;
  for (int b : blocks) {
    mask.block(off, off, b, b).setOnes();
    off += b;
  }
  auto check = [&](const RMatrix& m, int idx) {
    if (m.rows() != n || m.cols() != n) throw InputError("sdp: F_i shape mismatch");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
      std::ostringstream os;
      os << "sdp: F_" << idx << " is not symmetric";
      throw InputError(os.str());
    }
    if ((m.array() * (1.0 - mask.array())).abs().maxCoeff() > 0.0) {
      std::ostringstream os;
      os << "sdp: F_" << idx << " has entries outside the block structure";
      throw InputError(os.str());
    }
  };
  check(f0, 0);
  for (int i = 0; i < num_vars(); ++i) check(f[static_cast<std::size_t>(i)], i + 1);
}

RMatrix SdpProblem::evaluate(const RVector& x) const {
  RMatrix out = f0;
  for (int i = 0; i < num_vars(); ++i) out += x(i) * f[static_cast<std::size_t>(i)];
  return out;
}

SdpSolution solve_sdp(const SdpProblem& p, const SdpOptions& opts) {
  p.validate();
  const int n = p.size();
  const int m = p.num_vars();
  const RMatrix id = RMatrix::Identity(n, n);

  // Standard-form view: C = F_0, A_i = -F_i, b = -c, with X = Z, y = x and
  // S = C - sum_i y_i A_i = F(x).
  auto a_op = [&](const RMatrix& w) {
    RVector r(m);
    for (int i = 0; i < m; ++i) r(i) = -trace_prod(p.f[static_cast<std::size_t>(i)], w);
    return r;
  };
  auto at_op = [&](const RVector& v) {
    RMatrix r = RMatrix::Zero(n, n);
    for (int i = 0; i < m; ++i) r -= v(i) * p.f[static_cast<std::size_t>(i)];
    return r;
  };
  const RVector b = -p.c;

  double scale = 1.0;
  scale = std::max(scale, p.f0.cwiseAbs().maxCoeff());
  for (const auto& fi : p.f) scale = std::max(scale, fi.cwiseAbs().maxCoeff());
  RMatrix x_mat = scale * id;
  RMatrix s_mat = scale * id;
  RVector y = RVector::Zero(m);

  SdpSolution sol;
  auto record = [&](int it) {
    sol.iterations = it;
    sol.x = y;
    sol.z = sym(x_mat);
    sol.primal_objective = p.c.dot(y);
    sol.dual_objective = -trace_prod(p.f0, sol.z);
    sol.gap = sol.primal_objective - sol.dual_objective;
    const RMatrix fx = p.evaluate(y);
    sol.primal_infeasibility = (fx - s_mat).norm();
    sol.dual_infeasibility = m > 0 ? (a_op(sol.z) - b).cwiseAbs().maxCoeff() : 0.0;
    sol.complementarity = (fx * sol.z).norm();
  };

  // Near the boundary the Schur complement loses accuracy and later
  // iterates can be worse than earlier ones, so the best one is kept.
  auto merit = [](const SdpSolution& s) {
    return std::max({std::abs(s.gap), s.primal_infeasibility, s.dual_infeasibility});
  };
  const double target = opts.tol * 0.1;
  SdpSolution best;
  double best_merit = std::numeric_limits<double>::infinity();
  int stalled = 0;
  for (int it = 0; it <= opts.max_iter; ++it) {
    record(it);
    const double mt = merit(sol);
    if (mt < best_merit) {
      best = sol;
      best_merit = mt;
      stalled = 0;
    } else if (++stalled >= 8) {
      break;
    }
    if (mt <= target) break;
    if (x_mat.cwiseAbs().maxCoeff() > 1e12 || y.cwiseAbs().maxCoeff() > 1e12) {
      sol.status = SdpStatus::Infeasible;
      return sol;
    }
    if (it == opts.max_iter) break;

    const RVector rp = b - a_op(x_mat);
    const RMatrix rd = p.f0 - s_mat - at_op(y);
    const double mu = trace_prod(x_mat, s_mat) / n;

    Eigen::LLT<RMatrix> s_llt(s_mat);
    if (s_llt.info() != Eigen::Success) break;
    const RMatrix s_inv = s_llt.solve(id);

    // Schur complement M_ij = tr(A_i X A_j S^{-1}).
    RMatrix schur(m, m);
    std::vector<RMatrix> g(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) g[j] = x_mat * p.f[static_cast<std::size_t>(j)] * s_inv;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) schur(i, j) = trace_prod(p.f[static_cast<std::size_t>(i)], g[j]);
    schur = sym(schur);
    Eigen::LDLT<RMatrix> schur_f(schur);
    if (schur_f.info() != Eigen::Success) break;

    struct Dir {
      RMatrix dx, ds;
      RVector dy;
    };
    auto direction = [&](const RMatrix& rc) {
      Dir d;
      d.dy = schur_f.solve(RVector(rp - a_op((rc - x_mat * rd) * s_inv)));
      // Iterative refinement against A(dX) = Rp; the Schur
      // complement is badly conditioned near the boundary.
      for (int r = 0; r < 3; ++r) {
        d.ds = rd - at_op(d.dy);
        d.dx = sym((rc - x_mat * d.ds) * s_inv);
        if (r == 2) break;
        d.dy += schur_f.solve(RVector(rp - a_op(d.dx)));
      }
      return d;
    };

    const RMatrix xs = x_mat * s_mat;
    const Dir aff = direction(-xs);
    const double ap_aff = std::min(1.0, max_step(x_mat, aff.dx));
    const double ad_aff = std::min(1.0, max_step(s_mat, aff.ds));
    const double mu_aff =
        trace_prod(x_mat + ap_aff * aff.dx, s_mat + ad_aff * aff.ds) / n;
    const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

    const Dir cor = direction(sigma * mu * id - xs - aff.dx * aff.ds);
    const double ap = std::min(1.0, 0.95 * max_step(x_mat, cor.dx));
    const double ad = std::min(1.0, 0.95 * max_step(s_mat, cor.ds));
    if (!(ap > 0.0) || !(ad > 0.0)) break;

    x_mat = sym(x_mat + ap * cor.dx);
    s_mat = sym(s_mat + ad * cor.ds);
    y += ad * cor.dy;
  }
  best.status = best_merit <= opts.tol ? SdpStatus::Optimal : SdpStatus::MaxIter;
  return best;
}

}  // namespace cmcsep
