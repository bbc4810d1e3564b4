#include "cmcsep/criteria.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "cmcsep/covariance.hpp"
#include "cmcsep/matlin.hpp"
#include "cmcsep/schmidt.hpp"

namespace cmcsep {

namespace {

using json = nlohmann::json;

CriterionVerdict make_verdict(std::string name, double margin) {
  CriterionVerdict v;
  v.name = std::move(name);
  v.margin = margin;
  v.detected = margin > kMarginEps;
  v.status = v.detected ? VerdictStatus::Detected : VerdictStatus::Undetected;
  return v;
}

json vec_json(const RVector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json mat_json(const RMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

CMatrix checked_state(const CMatrix& rho, Dims dims, const char* what) {
  if (dims.a < 2 || dims.b < 2 || rho.rows() != dims.total()) {
    std::ostringstream os;
    os << what << ": state size " << rho.rows() << " does not match dims " << dims.a << "x" << dims.b;
    throw InputError(os.str());
  }
  return validated_density(rho);
}

BlockCovarianceMatrix gellmann_block_cm(const CMatrix& rho, Dims dims) {
  return build_block_cm(rho, dims, gellmann_basis(dims.a), gellmann_basis(dims.b), CmKind::Symmetric);
}

double purity_bound(const BlockCovarianceMatrix& g) { return (1.0 - g.purity_a) + (1.0 - g.purity_b); }

const CMatrix& sigma(int k) {
  static const std::array<CMatrix, 3> s = [] {
    std::array<CMatrix, 3> out;
    out[0] = CMatrix(2, 2);
    out[0] << 0, 1, 1, 0;
    out[1] = CMatrix(2, 2);
    out[1] << 0, cplx(0, -1), cplx(0, 1), 0;
    out[2] = CMatrix(2, 2);
    out[2] << 1, 0, 0, -1;
    return out;
  }();
  return s[static_cast<std::size_t>(k)];
}

// Symmetric-matrix basis element for the upper-triangle slot (i, j).
RMatrix sym_unit(int n, int i, int j) {
  RMatrix e = RMatrix::Zero(n, n);
  e(i, j) = 1.0;
  e(j, i) = 1.0;
  return e;
}

}  // namespace

std::string to_string(VerdictStatus status) {
  switch (status) {
    case VerdictStatus::Detected: return "detected";
    case VerdictStatus::Undetected: return "undetected";
    case VerdictStatus::Undetermined: return "undetermined";
  }
  return "undetermined";
}

const std::vector<std::string>& criterion_names() {
  static const std::vector<std::string> names = {
      "ppt",        "ccnr",        "de-vicente",     "cmc-sv",     "cmc-trace",
      "cmc-schmidt", "cmc-kyfan-weyl", "cmc-filter", "cmc-sdp"};
  return names;
}

CriterionVerdict ppt(const CMatrix& rho, Dims dims) {
  const CMatrix h = checked_state(rho, dims, "ppt");
  const double lo = min_eigenvalue(partial_transpose(h, dims, Side::B));
  auto v = make_verdict("ppt", -lo);
  v.details["min_eigenvalue"] = lo;
  return v;
}

CriterionVerdict ccnr(const CMatrix& rho, Dims dims) {
  const CMatrix h = checked_state(rho, dims, "ccnr");
  const auto s = operator_schmidt(h, dims);
  const double sum = s.lambdas.sum();
  auto v = make_verdict("ccnr", sum - 1.0);
  v.details["schmidt_coefficients"] = vec_json(s.lambdas);
  v.details["sum"] = sum;
  return v;
}

CriterionVerdict de_vicente(const CMatrix& rho, Dims dims) {
  const CMatrix h = checked_state(rho, dims, "de_vicente");
  const auto g = gellmann_block_cm(h, dims);
  const RMatrix lin = g.linear_c();
  const RMatrix red = lin.bottomRightCorner(lin.rows() - 1, lin.cols() - 1);
  const double norm = trace_norm(red);
  const double bound = std::sqrt((1.0 - 1.0 / dims.a) * (1.0 - 1.0 / dims.b));
  auto v = make_verdict("de-vicente", norm - bound);
  v.details["trace_norm"] = norm;
  v.details["bound"] = bound;
  return v;
}

CriterionVerdict cmc_singular_values(const CMatrix& rho, Dims dims) {
  const CMatrix h = checked_state(rho, dims, "cmc_singular_values");
  const auto g = gellmann_block_cm(h, dims);
  const double norm = trace_norm(g.c);
  const double bound = std::sqrt(std::max(0.0, (1.0 - g.purity_a) * (1.0 - g.purity_b)));
  auto v = make_verdict("cmc-sv", norm - bound);
  v.details["trace_norm_c"] = norm;
  v.details["bound"] = bound;
  v.details["purity_a"] = g.purity_a;
  v.details["purity_b"] = g.purity_b;
  return v;
}

CriterionVerdict cmc_trace(const CMatrix& rho, Dims dims) {
  const CMatrix h = checked_state(rho, dims, "cmc_trace");
  const auto g = gellmann_block_cm(h, dims);
  // C -> O_A C O_B^T = diag(sigma) with O_A = U^T, O_B = V^T.
  const RealSvd s = svd(g.c);
  const double lhs = 2.0 * s.sigma.sum();
  const double bound = purity_bound(g);
  auto v = make_verdict("cmc-trace", lhs - bound);
  v.details["mode"] = "auto";
  v.details["diagonal"] = vec_json(s.sigma);
  v.details["lhs"] = lhs;
  v.details["bound"] = bound;
  return v;
}

CriterionVerdict cmc_trace(const CMatrix& rho, Dims dims, const std::vector<std::pair<int, int>>& j) {
  const CMatrix h = checked_state(rho, dims, "cmc_trace");
  const auto g = gellmann_block_cm(h, dims);
  std::vector<bool> used_a(static_cast<std::size_t>(g.c.rows()), false);
  std::vector<bool> used_b(static_cast<std::size_t>(g.c.cols()), false);
  double sum = 0.0;
  json pairs = json::array();
  for (const auto& [a, b] : j) {
    if (a < 0 || b < 0 || a >= g.c.rows() || b >= g.c.cols()) throw InputError("cmc_trace: index out of range");
    if (used_a[static_cast<std::size_t>(a)] || used_b[static_cast<std::size_t>(b)]) {
      throw InputError("cmc_trace: index pairs must not repeat a row or a column");
    }
    used_a[static_cast<std::size_t>(a)] = true;
    used_b[static_cast<std::size_t>(b)] = true;
    sum += std::abs(g.c(a, b));
    pairs.push_back({a, b});
  }
  const double bound = purity_bound(g);
  auto v = make_verdict("cmc-trace", 2.0 * sum - bound);
  v.details["mode"] = "index-set";
  v.details["pairs"] = pairs;
  v.details["lhs"] = 2.0 * sum;
  v.details["bound"] = bound;
  return v;
}

CriterionVerdict cmc_schmidt(const CMatrix& rho, Dims dims) {
  const CMatrix h = checked_state(rho, dims, "cmc_schmidt");
  const auto s = operator_schmidt(h, dims);
  double lhs = 0.0, rhs = 2.0;
  for (Eigen::Index i = 0; i < s.lambdas.size(); ++i) {
    const double l = s.lambdas(i), ga = s.g_a(i), gb = s.g_b(i);
    lhs += 2.0 * std::abs(l - l * l * ga * gb);
    rhs -= l * l * (ga * ga + gb * gb);
  }
  auto v = make_verdict("cmc-schmidt", lhs - rhs);
  v.details["lhs"] = lhs;
  v.details["rhs"] = rhs;
  v.details["schmidt_coefficients"] = vec_json(s.lambdas);
  return v;
}

CriterionVerdict cmc_kyfan_weyl(const CMatrix& rho, Dims dims, int s) {
  if (dims.a != dims.b) throw InputError("cmc_kyfan_weyl: requires equal local dimensions");
  const int d = dims.a;
  if (s < 1 || s > std::max(1, d - 1)) throw InputError("cmc_kyfan_weyl: s out of range");
  const CMatrix h = checked_state(rho, dims, "cmc_kyfan_weyl");
  const auto g = gellmann_block_cm(h, dims);
  const int k = std::min(d * d - d + 1 + s, d * d);
  const double c_kf = ky_fan_norm(g.c, k);
  const double fa = k * operator_norm(RMatrix(g.a.real())) - s;
  const double fb = k * operator_norm(RMatrix(g.b.real())) - s;
  // A negative factor is already incompatible with a separable state, since
  // it bounds the Ky-Fan norm of a PSD matrix from above.
  const double margin = (fa < 0.0 || fb < 0.0) ? std::max(-fa, -fb) : c_kf * c_kf - fa * fb;
  auto v = make_verdict("cmc-kyfan-weyl", margin);
  v.details["s"] = s;
  v.details["k"] = k;
  v.details["ky_fan_c"] = c_kf;
  v.details["factor_a"] = fa;
  v.details["factor_b"] = fb;
  return v;
}

CriterionVerdict cmc_filter(const CMatrix& rho, Dims dims, const FilterOptions& opts) {
  const CMatrix h = checked_state(rho, dims, "cmc_filter");
  const bool swap = dims.a > dims.b;
  // Uneven thresholds are stated for d_A < d_B; the normal form is symmetric
  // under exchanging the parties, so only the labels swap.
  const int da = std::min(dims.a, dims.b), db = std::max(dims.a, dims.b);
  const NormalForm nf = normal_form(h, dims, opts);
  const double sum = nf.xi.sum();

  // Singular-value CMC on the filtered state, scaled to the xi convention.
  // It is sound for any local filtering, converged or not, and at an exact
  // normal form it reduces to sum(xi) <= d_A d_B sqrt((1-1/d_A)(1-1/d_B)).
  const double scale = static_cast<double>(dims.total());
  const double sv_margin = scale * cmc_singular_values(nf.rho_tilde, dims).margin;

  json thresholds = json::array();
  double xi_margin = 0.0;
  if (da == db) {
    const double t = static_cast<double>(da * da - da);
    xi_margin = sum - t;
    thresholds.push_back(t);
  } else {
    const double dA = da, dB = db;
    const double t1 = dA * dB / 2.0 *
                      (1.0 - 1.0 / dA + (dA * dA - 1.0) / dB +
                       std::min(0.0, -(dB - 1.0) + (dB * dB - dA * dA) / dB));
    const double t2 = std::sqrt(dA * dB * (dA - 1.0) * (dB - 1.0));
    xi_margin = std::max(sum - t1, sum - t2);
    thresholds.push_back(t1);
    thresholds.push_back(t2);
  }
  // The xi thresholds assume maximally mixed marginals; they are only used
  // once the iteration has converged, and never looser than the SV form.
  double margin = sv_margin;
  std::string evaluation = "filtered-state-sv";
  if (nf.converged) {
    margin = std::min(xi_margin, sv_margin);
    if (da != db) {
      const double t1_margin = sum - thresholds[0].get<double>();
      margin = std::max(margin, t1_margin);
    }
    evaluation = "normal-form";
  }
  auto v = make_verdict("cmc-filter", margin);
  v.details["xi"] = vec_json(nf.xi);
  v.details["xi_sum"] = sum;
  v.details["thresholds"] = thresholds;
  v.details["xi_margin"] = xi_margin;
  v.details["filtered_sv_margin"] = sv_margin;
  v.details["evaluation"] = evaluation;
  v.details["converged"] = nf.converged;
  v.details["best_effort"] = !nf.converged;
  v.details["iterations"] = nf.iterations;
  v.details["marginal_error"] = nf.marginal_error;
  v.details["noise_added"] = nf.noise_added;
  v.details["parties_swapped"] = swap;
  return v;
}

RMatrix gamma_eff_2q(const CMatrix& rho) {
  const Dims dims{2, 2};
  const CMatrix h = checked_state(rho, dims, "gamma_eff_2q");
  const auto g = build_block_cm(h, dims, pauli_basis(), pauli_basis(), CmKind::Symmetric);
  const RMatrix full = g.assembled().real();
  RMatrix out(6, 6);
  const int idx[6] = {1, 2, 3, 5, 6, 7};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) out(i, j) = full(idx[i], idx[j]);
  return out;
}

SdpProblem cmc_sdp_problem(const RMatrix& gamma_eff) {
  if (gamma_eff.rows() != 6 || gamma_eff.cols() != 6) throw InputError("cmc_sdp_problem: gamma_eff must be 6x6");
  // Layout: [6x6 CM block][3x3 kappa_A][3x3 kappa_B][4 scalar trace rows].
  const int n = 16;
  const int o_ka = 6, o_kb = 9, o_s = 12;
  SdpProblem p;
  p.blocks = {6, 3, 3, 1, 1, 1, 1};
  p.c = RVector::Zero(13);
  p.c(0) = -1.0;

  p.f0 = RMatrix::Zero(n, n);
  p.f0.topLeftCorner(6, 6) = (gamma_eff + gamma_eff.transpose()) / 2.0 - 0.5 * RMatrix::Identity(6, 6);
  p.f0.block(o_ka, o_ka, 3, 3) = 0.5 * RMatrix::Identity(3, 3);
  p.f0.block(o_kb, o_kb, 3, 3) = 0.5 * RMatrix::Identity(3, 3);
  p.f0(o_s, o_s) = -1.0;
  p.f0(o_s + 1, o_s + 1) = 1.0;
  p.f0(o_s + 2, o_s + 2) = -1.0;
  p.f0(o_s + 3, o_s + 3) = 1.0;

  RMatrix fl = RMatrix::Zero(n, n);
  fl.topLeftCorner(6, 6) = -0.5 * RMatrix::Identity(6, 6);
  fl.block(o_ka, o_ka, 3, 3) = 0.5 * RMatrix::Identity(3, 3);
  fl.block(o_kb, o_kb, 3, 3) = 0.5 * RMatrix::Identity(3, 3);
  fl(o_s, o_s) = -1.0;
  fl(o_s + 1, o_s + 1) = 1.0;
  fl(o_s + 2, o_s + 2) = -1.0;
  fl(o_s + 3, o_s + 3) = 1.0;
  p.f.push_back(fl);

  for (int side = 0; side < 2; ++side) {
    const int o_cm = side == 0 ? 0 : 3;
    const int o_k = side == 0 ? o_ka : o_kb;
    const int o_t = o_s + 2 * side;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        const RMatrix e = i == j ? RMatrix(sym_unit(3, i, j) / 2.0) : sym_unit(3, i, j);
        RMatrix fi = RMatrix::Zero(n, n);
        fi.block(o_cm, o_cm, 3, 3) = 0.5 * e;
        fi.block(o_k, o_k, 3, 3) = -0.5 * e;
        fi(o_t, o_t) = e.trace();
        fi(o_t + 1, o_t + 1) = -e.trace();
        p.f.push_back(fi);
      }
  }
  return p;
}

SdpVerdict cmc_sdp_2q(const CMatrix& rho, const SdpOptions& opts) {
  const RMatrix gamma = gamma_eff_2q(rho);
  SdpVerdict out;
  out.solution = solve_sdp(cmc_sdp_problem(gamma), opts);
  const auto& sol = out.solution;

  out.witness.z1 = sol.z.topLeftCorner(6, 6);
  out.witness.value = (gamma * out.witness.z1).trace();

  const RealSpectrum zs = symmetric_eig(out.witness.z1);
  for (Eigen::Index k = 0; k < zs.values.size(); ++k) {
    const double lk = zs.values(k);
    if (lk <= 0.0) continue;
    CMatrix a = CMatrix::Zero(2, 2), b = CMatrix::Zero(2, 2);
    for (int l = 0; l < 3; ++l) {
      a += zs.vectors(l, k) * sigma(l);
      b += zs.vectors(3 + l, k) * sigma(l);
    }
    const double scale = std::sqrt(lk / 2.0);
    out.lur.a_ops.push_back(scale * a);
    out.lur.b_ops.push_back(scale * b);
  }
  out.lur.bound = 1.0;

  const double margin = 1.0 - out.witness.value;
  CriterionVerdict& v = out.verdict;
  v.name = "cmc-sdp";
  v.margin = margin;
  if (sol.status != SdpStatus::Optimal) {
    v.status = VerdictStatus::Undetermined;
    v.detected = false;
  } else {
    v.detected = margin > kSdpEps;
    v.status = v.detected ? VerdictStatus::Detected : VerdictStatus::Undetected;
  }
  v.details["solver_status"] = to_string(sol.status);
  v.details["lambda"] = sol.x.size() > 0 ? sol.x(0) : 0.0;
  v.details["witness_value"] = out.witness.value;
  v.details["z1"] = mat_json(out.witness.z1);
  v.details["duality_gap"] = sol.gap;
  v.details["iterations"] = sol.iterations;
  return out;
}

double lur_value(const CMatrix& rho, const std::vector<CMatrix>& a_ops, const std::vector<CMatrix>& b_ops) {
  if (a_ops.size() != b_ops.size()) throw InputError("lur_value: need as many A as B observables");
  if (a_ops.empty()) return 0.0;
  const int da = static_cast<int>(a_ops[0].rows());
  const int db = static_cast<int>(b_ops[0].rows());
  if (rho.rows() != da * db) throw InputError("lur_value: observable dimensions do not match the state");
  const CMatrix h = hermitize_checked(rho, 1e-10);
  const CMatrix ia = CMatrix::Identity(da, da), ib = CMatrix::Identity(db, db);
  double total = 0.0;
  for (std::size_t k = 0; k < a_ops.size(); ++k) {
    const CMatrix m = kron(hermitize_checked(a_ops[k]), ib) + kron(ia, hermitize_checked(b_ops[k]));
    const double mean = (h * m).trace().real();
    total += (h * m * m).trace().real() - mean * mean;
  }
  return total;
}

CriterionVerdict run_criterion(const std::string& name, const CMatrix& rho, Dims dims) {
  if (name == "ppt") return ppt(rho, dims);
  if (name == "ccnr") return ccnr(rho, dims);
  if (name == "de-vicente") return de_vicente(rho, dims);
  if (name == "cmc-sv") return cmc_singular_values(rho, dims);
  if (name == "cmc-trace") return cmc_trace(rho, dims);
  if (name == "cmc-schmidt") return cmc_schmidt(rho, dims);
  if (name == "cmc-filter") return cmc_filter(rho, dims);
  if (name == "cmc-kyfan-weyl") {
    if (dims.a != dims.b) throw InputError("cmc-kyfan-weyl: requires equal local dimensions");
    // Every admissible s is a valid test; report the strongest.
    CriterionVerdict best;
    json per_s = json::array();
    for (int s = 1; s <= std::max(1, dims.a - 1); ++s) {
      auto v = cmc_kyfan_weyl(rho, dims, s);
      per_s.push_back({{"s", s}, {"margin", v.margin}});
      if (s == 1 || v.margin > best.margin) best = v;
    }
    best.details["per_s"] = per_s;
    return best;
  }
  if (name == "cmc-sdp") {
    if (dims.a != 2 || dims.b != 2) throw InputError("cmc-sdp: only defined for two qubits");
    checked_state(rho, dims, "cmc_sdp_2q");
    return cmc_sdp_2q(rho).verdict;
  }
  throw InputError("unknown criterion '" + name + "'");
}

std::vector<CriterionVerdict> run_criteria(const CMatrix& rho, Dims dims, const std::vector<std::string>& names) {
  std::vector<CriterionVerdict> out;
  if (names.empty()) {
    for (const auto& n : criterion_names()) {
      if (n == "cmc-sdp" && !(dims.a == 2 && dims.b == 2)) continue;
      if (n == "cmc-kyfan-weyl" && dims.a != dims.b) continue;
      out.push_back(run_criterion(n, rho, dims));
    }
    return out;
  }
  for (const auto& n : names) out.push_back(run_criterion(n, rho, dims));
  return out;
}

std::vector<CriterionVerdict> run_all(const CMatrix& rho, Dims dims) { return run_criteria(rho, dims); }

nlohmann::json to_json(const CriterionVerdict& v) {
  return json{{"name", v.name},
              {"detected", v.detected},
              {"status", to_string(v.status)},
              {"margin", v.margin},
              {"details", v.details}};
}

}  // namespace cmcsep
