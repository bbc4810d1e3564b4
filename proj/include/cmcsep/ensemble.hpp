#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "cmcsep/criteria.hpp"
#include "cmcsep/types.hpp"

namespace cmcsep {

inline constexpr const char* kVersion = "0.1.0";

/// Produces sample i from its derived seed sample_seed(seed, i).
using SampleGenerator = std::function<CMatrix(std::uint64_t sample_seed)>;

struct Family {
  std::string name;
  Dims dims;
  SampleGenerator generate;
};

/// Ensemble families: chessboard, random (full rank), random-2q,
/// separable. `da`, `db` are ignored by the fixed-dimension families.
Family make_family(const std::string& name, int da = 3, int db = 3);

/// Worker count: omp_get_max_threads(), capped by CMCSEP_THREADS if set.
int configured_threads();

struct EnsembleResult {
  std::vector<std::string> criteria;
  int n = 0;
  std::uint64_t seed = 0;
  // Row-major n x criteria.size().
  std::vector<double> margins;
  std::vector<char> detected;
  std::vector<char> undetermined;

  double margin(int sample, int crit) const { return margins[static_cast<std::size_t>(sample) * criteria.size() + crit]; }
  bool is_detected(int sample, int crit) const { return detected[static_cast<std::size_t>(sample) * criteria.size() + crit]; }
  int count(int crit) const;
};

/// Reference implementation: one sample after another.
EnsembleResult run_ensemble_serial(const Family& family, int n, std::uint64_t seed,
                                   const std::vector<std::string>& criteria);
/// OpenMP over samples. Output is identical to the serial path for any
/// thread count, since every sample has its own seed and slot.
EnsembleResult run_ensemble_parallel(const Family& family, int n, std::uint64_t seed,
                                     const std::vector<std::string>& criteria, int threads = 0);

struct BenchmarkReport {
  std::string family;
  int n = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> criteria;
  std::vector<double> fractions;
  std::vector<int> counts;
  double wall_time = 0.0;
  int threads = 1;
  std::string version = kVersion;
};

BenchmarkReport benchmark(const Family& family, int n, std::uint64_t seed,
                          const std::vector<std::string>& criteria, int threads = 0,
                          EnsembleResult* samples = nullptr);
nlohmann::json to_json(const BenchmarkReport& report);
/// One row per sample and criterion: index,criterion,margin,detected.
void write_csv(std::ostream& out, const EnsembleResult& result);

struct ThresholdResult {
  double p_star = 0.0;
  double lo = 0.0;  // final bracket: undetected at lo, detected at hi
  double hi = 0.0;
  bool found = false;
  std::vector<std::pair<double, bool>> presweep;
  int evaluations = 0;
};

/// Smallest p in [p_lo, p_hi] at which `detect` switches to true. A 20-point
/// presweep must show the detection boolean monotone (false..false true..true);
/// otherwise NumericalError. found = false when nothing in the range is
/// detected or everything is.
ThresholdResult threshold_bisect(const std::function<CMatrix(double)>& family,
                                 const std::function<bool(const CMatrix&)>& detect, double p_lo,
                                 double p_hi, double tol = 1e-4);

/// One-parameter families for threshold searches: upb, werner.
std::function<CMatrix(double)> threshold_family(const std::string& name, Dims* dims = nullptr);

enum class Fig1Region { Same, Different, NotAState };
std::string to_string(Fig1Region region);

/// rho_eps and its single-side Bloch inversion, compared by PPT.
Fig1Region fig1_region(double eps, double r, double s = 0.45, double t = 1.0 / 16.0);

struct Fig1Point {
  double eps;
  double r;
  Fig1Region region;
};

/// eps in [0, 1], r in [-1, 1] with spacing `step`.
std::vector<Fig1Point> fig1_grid(double step, double s = 0.45, double t = 1.0 / 16.0);

}  // namespace cmcsep
