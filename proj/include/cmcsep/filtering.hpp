#pragma once

#include <string>
#include <vector>

#include "cmcsep/types.hpp"

namespace cmcsep {

struct FilterOptions {
  int max_iter = 10000;     // sweeps
  double tol = 1e-10;       // relative change of f between sweeps
  double noise_eps = 1e-9;  // white-noise admixture for rank-deficient input
  double marginal_tol = 1e-9;
};

/// Filter normal form
///   rho~ = (1/(d_A d_B)) (1 + sum_k xi_k G^_k^A (x) G^_k^B)
/// with orthonormal traceless G^ and rho~ proportional to
/// (F_A (x) F_B) rho (F_A (x) F_B)^dagger, det F_A = det F_B = 1.
struct NormalForm {
  Dims dims;
  RVector xi;          // non-increasing, length min(d_A, d_B)^2 - 1
  RMatrix xi_matrix;   // coefficients before the final SVD
  CMatrix f_a;
  CMatrix f_b;
  CMatrix rho_tilde;   // normalized filtered state
  bool converged = false;
  double f_value = 0.0;
  int iterations = 0;
  std::vector<double> f_history;  // one entry per sweep, non-increasing
  double marginal_error = 0.0;    // max deviation of d * rho~_{A,B} from 1
  double noise_added = 0.0;       // weight of 1/d mixed in before filtering
  std::string schedule;           // description of the iteration used
};

/// f(rho_A, rho_B) = tr[rho (rho_A (x) rho_B)] / (det rho_A)^{1/d_A} (det rho_B)^{1/d_B}.
/// Throws InputError unless both marginals are positive definite (min eig > 1e-12).
double f_rho(const CMatrix& rho, Dims dims, const CMatrix& rho_a, const CMatrix& rho_b);

/// Minimizes f by alternating exact single-side minimizations. Never throws
/// on non-convergence: the best iterate is returned with converged = false.
NormalForm normal_form(const CMatrix& rho, Dims dims, const FilterOptions& opts = {});

}  // namespace cmcsep
