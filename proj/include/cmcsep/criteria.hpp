#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cmcsep/filtering.hpp"
#include "cmcsep/observables.hpp"
#include "cmcsep/sdp.hpp"
#include "cmcsep/types.hpp"

namespace cmcsep {

/// Verdicts with margin above this are reported as detected.
inline constexpr double kMarginEps = 1e-9;
/// The two-qubit SDP detects when the witness value drops below 1 - kSdpEps.
inline constexpr double kSdpEps = 1e-7;

enum class VerdictStatus { Detected, Undetected, Undetermined };

std::string to_string(VerdictStatus status);

/// margin is LHS - RHS of the criterion's inequality; positive means entangled.
struct CriterionVerdict {
  std::string name;
  bool detected = false;
  VerdictStatus status = VerdictStatus::Undetected;
  double margin = 0.0;
  nlohmann::json details = nlohmann::json::object();
};

/// Criterion names in run_all order.
const std::vector<std::string>& criterion_names();

CriterionVerdict ppt(const CMatrix& rho, Dims dims);
CriterionVerdict ccnr(const CMatrix& rho, Dims dims);
CriterionVerdict de_vicente(const CMatrix& rho, Dims dims);
CriterionVerdict cmc_singular_values(const CMatrix& rho, Dims dims);

/// Automatic mode: local orthogonal rotations from the SVD of C make C
/// diagonal, and the sum runs over that diagonal.
CriterionVerdict cmc_trace(const CMatrix& rho, Dims dims);
/// Explicit index pairs (i, j) into C over Gell-Mann local bases.
CriterionVerdict cmc_trace(const CMatrix& rho, Dims dims, const std::vector<std::pair<int, int>>& j);

CriterionVerdict cmc_schmidt(const CMatrix& rho, Dims dims);
/// Requires d_A = d_B = d and 1 <= s <= max(1, d - 1).
CriterionVerdict cmc_kyfan_weyl(const CMatrix& rho, Dims dims, int s);
CriterionVerdict cmc_filter(const CMatrix& rho, Dims dims, const FilterOptions& opts = {});

/// Local basis for the two-qubit effective CM: sigma_{x,y,z}/sqrt(2) on each side.
struct CmWitness {
  RMatrix z1;          // 6x6
  double value = 0.0;  // tr(gamma_eff Z1)
};

struct LurSet {
  std::vector<CMatrix> a_ops;
  std::vector<CMatrix> b_ops;
  double bound = 1.0;
};

struct SdpVerdict {
  CriterionVerdict verdict;
  CmWitness witness;
  LurSet lur;
  SdpSolution solution;
};

/// 6x6 symmetric CM over {s_k/sqrt(2) (x) 1, 1 (x) s_k/sqrt(2)}.
RMatrix gamma_eff_2q(const CMatrix& rho);
/// The primal program: variables (lambda, rho_A upper triangle, rho_B upper triangle).
SdpProblem cmc_sdp_problem(const RMatrix& gamma_eff);
SdpVerdict cmc_sdp_2q(const CMatrix& rho, const SdpOptions& opts = {});

/// sum_k variance of (A_k (x) 1 + 1 (x) B_k) on rho.
double lur_value(const CMatrix& rho, const std::vector<CMatrix>& a_ops, const std::vector<CMatrix>& b_ops);

/// Runs `names` (or every applicable criterion when empty). The SDP is only
/// applicable to 2x2, the Ky-Fan/Weyl test only to equal dimensions.
std::vector<CriterionVerdict> run_criteria(const CMatrix& rho, Dims dims,
                                           const std::vector<std::string>& names = {});
std::vector<CriterionVerdict> run_all(const CMatrix& rho, Dims dims);

/// Single criterion by name; throws InputError for unknown names.
CriterionVerdict run_criterion(const std::string& name, const CMatrix& rho, Dims dims);

nlohmann::json to_json(const CriterionVerdict& v);

}  // namespace cmcsep
