#pragma once

#include <string>
#include <vector>

#include "cmcsep/types.hpp"

namespace cmcsep {

/// Inequality-form SDP over block-diagonal real symmetric matrices:
///   primal: minimize c^T x subject to F(x) = F_0 + sum_i x_i F_i >= 0
///   dual:   maximize -tr(F_0 Z) subject to tr(F_i Z) = c_i, Z >= 0
/// All F's are stored densely; `blocks` lists the diagonal block sizes.
struct SdpProblem {
  RVector c;
  RMatrix f0;
  std::vector<RMatrix> f;
  std::vector<int> blocks;

  int size() const { return static_cast<int>(f0.rows()); }
  int num_vars() const { return static_cast<int>(c.size()); }
  /// Throws InputError on asymmetric or off-block entries or shape mismatch.
  void validate() const;
  RMatrix evaluate(const RVector& x) const;
};

enum class SdpStatus { Optimal, Infeasible, MaxIter };

std::string to_string(SdpStatus status);

struct SdpOptions {
  double tol = 1e-8;
  int max_iter = 200;
};

struct SdpSolution {
  SdpStatus status = SdpStatus::MaxIter;
  RVector x;
  RMatrix z;
  double primal_objective = 0.0;  // c^T x
  double dual_objective = 0.0;    // -tr(F_0 Z)
  double gap = 0.0;               // c^T x + tr(F_0 Z)
  double primal_infeasibility = 0.0;  // ||F(x) - S||_F, S the PSD slack
  double dual_infeasibility = 0.0;    // max_i |tr(F_i Z) - c_i|
  double complementarity = 0.0;       // ||F(x) Z||_F
  int iterations = 0;
};

/// Infeasible-start primal-dual path-following method (HKM search direction
/// with a Mehrotra predictor-corrector step). Deterministic for fixed input.
SdpSolution solve_sdp(const SdpProblem& problem, const SdpOptions& opts = {});

}  // namespace cmcsep
