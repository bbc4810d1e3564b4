#include "cmcsep/ensemble.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <ostream>
#include <sstream>

#include <omp.h>

#include "cmcsep/covariance.hpp"
#include "cmcsep/matlin.hpp"
#include "cmcsep/states.hpp"

namespace cmcsep {

using json = nlohmann::json;

Family make_family(const std::string& name, int da, int db) {
  if (da < 2 || db < 2) throw InputError("family dimensions must be >= 2");
  if (name == "chessboard") {
    return {name, {3, 3}, [](std::uint64_t s) { return sample_chessboard(s); }};
  }
  if (name == "random") {
    const int d = da * db;
    return {name, {da, db}, [d](std::uint64_t s) {
              Rng rng(s);
              return random_density(d, d, rng);
            }};
  }
  if (name == "random-2q") {
    return {name, {2, 2}, [](std::uint64_t s) {
              Rng rng(s);
              return random_density(4, 4, rng);
            }};
  }
  if (name == "separable") {
    const int d = da * db;
    return {name, {da, db}, [da, db, d](std::uint64_t s) {
              Rng rng(s);
              const int terms = rng.uniform_int(1, 2 * d);
              return random_separable(da, db, terms, rng);
            }};
  }
  throw InputError("unknown family '" + name + "' (expected chessboard, random, random-2q, separable)");
}

int configured_threads() {
  int t = omp_get_max_threads();
  if (const char* env = std::getenv("CMCSEP_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) t = std::min<int>(t, static_cast<int>(cap));
  }
  return std::max(1, t);
}

int EnsembleResult::count(int crit) const {
  int c = 0;
  for (int i = 0; i < n; ++i) c += is_detected(i, crit);
  return c;
}

namespace {

EnsembleResult empty_result(int n, std::uint64_t seed, const std::vector<std::string>& criteria) {
  if (n < 0) throw InputError("sample count must be non-negative");
  for (const auto& c : criteria) {
    bool known = false;
    for (const auto& k : criterion_names()) known = known || k == c;
    if (!known) throw InputError("unknown criterion '" + c + "'");
  }
  EnsembleResult r;
  r.criteria = criteria;
  r.n = n;
  r.seed = seed;
  const std::size_t cells = static_cast<std::size_t>(n) * criteria.size();
  r.margins.assign(cells, 0.0);
  r.detected.assign(cells, 0);
  r.undetermined.assign(cells, 0);
  return r;
}

void evaluate_sample(const Family& family, EnsembleResult& r, int i) {
  const CMatrix rho = family.generate(sample_seed(r.seed, static_cast<std::uint64_t>(i)));
  for (std::size_t c = 0; c < r.criteria.size(); ++c) {
    const CriterionVerdict v = run_criterion(r.criteria[c], rho, family.dims);
    const std::size_t cell = static_cast<std::size_t>(i) * r.criteria.size() + c;
    r.margins[cell] = v.margin;
    r.detected[cell] = v.detected;
    r.undetermined[cell] = v.status == VerdictStatus::Undetermined;
  }
}

}  // namespace

EnsembleResult run_ensemble_serial(const Family& family, int n, std::uint64_t seed,
                                   const std::vector<std::string>& criteria) {
  EnsembleResult r = empty_result(n, seed, criteria);
  for (int i = 0; i < n; ++i) evaluate_sample(family, r, i);
  return r;
}

EnsembleResult run_ensemble_parallel(const Family& family, int n, std::uint64_t seed,
                                     const std::vector<std::string>& criteria, int threads) {
  EnsembleResult r = empty_result(n, seed, criteria);
  if (threads <= 0) threads = configured_threads();
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
  for (int i = 0; i < n; ++i) {
    try {
      evaluate_sample(family, r, i);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return r;
}

BenchmarkReport benchmark(const Family& family, int n, std::uint64_t seed,
                          const std::vector<std::string>& criteria, int threads, EnsembleResult* samples) {
  if (threads <= 0) threads = configured_threads();
  const auto t0 = std::chrono::steady_clock::now();
  EnsembleResult r = run_ensemble_parallel(family, n, seed, criteria, threads);
  BenchmarkReport rep;
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  rep.family = family.name;
  rep.n = n;
  rep.seed = seed;
  rep.criteria = criteria;
  rep.threads = threads;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    const int k = r.count(static_cast<int>(c));
    rep.counts.push_back(k);
    rep.fractions.push_back(n > 0 ? static_cast<double>(k) / n : 0.0);
  }
  if (samples) *samples = std::move(r);
  return rep;
}

json to_json(const BenchmarkReport& report) {
  json fr = json::object();
  for (std::size_t c = 0; c < report.criteria.size(); ++c) {
    fr[report.criteria[c]] = {{"fraction", report.fractions[c]}, {"detected", report.counts[c]}};
  }
  return json{{"family", report.family},     {"n_samples", report.n},   {"seed", report.seed},
              {"criteria", fr},              {"wall_time", report.wall_time},
              {"threads", report.threads},   {"version", report.version}};
}

void write_csv(std::ostream& out, const EnsembleResult& result) {
  out << "index,criterion,margin,detected\n";
  char buf[64];
  for (int i = 0; i < result.n; ++i)
    for (std::size_t c = 0; c < result.criteria.size(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", result.margin(i, static_cast<int>(c)));
      out << i << "," << result.criteria[c] << "," << buf << ","
          << (result.is_detected(i, static_cast<int>(c)) ? 1 : 0) << "\n";
    }
}

ThresholdResult threshold_bisect(const std::function<CMatrix(double)>& family,
                                 const std::function<bool(const CMatrix&)>& detect, double p_lo,
                                 double p_hi, double tol) {
  if (!(p_lo < p_hi)) throw InputError("threshold: need p_lo < p_hi");
  if (!(tol > 0.0)) throw InputError("threshold: tol must be positive");
  ThresholdResult out;
  const int points = 20;
  int first = -1;
  for (int k = 0; k < points; ++k) {
    const double p = p_lo + (p_hi - p_lo) * k / (points - 1);
    const bool d = detect(family(p));
    ++out.evaluations;
    out.presweep.emplace_back(p, d);
    if (d && first < 0) first = k;
    if (!d && first >= 0) {
      std::ostringstream os;
      os << "threshold: detection is not monotone in p (detected at " << out.presweep[first].first
         << ", undetected at " << p << ")";
      throw NumericalError(os.str());
    }
  }
  if (first <= 0) {
    out.found = false;
    out.lo = p_lo;
    out.hi = p_hi;
    out.p_star = first == 0 ? p_lo : std::nan("");
    return out;
  }
  double lo = out.presweep[first - 1].first, hi = out.presweep[first].first;
  while (hi - lo > tol) {
    const double mid = (lo + hi) / 2.0;
    ++out.evaluations;
    if (detect(family(mid))) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  out.found = true;
  out.lo = lo;
  out.hi = hi;
  out.p_star = (lo + hi) / 2.0;
  return out;
}

std::function<CMatrix(double)> threshold_family(const std::string& name, Dims* dims) {
  if (name == "upb") {
    if (dims) *dims = {3, 3};
    return [](double p) { return upb_tiles(p); };
  }
  if (name == "werner") {
    if (dims) *dims = {2, 2};
    return [](double p) { return werner_2q(p); };
  }
  throw InputError("unknown threshold family '" + name + "' (expected upb, werner)");
}

std::string to_string(Fig1Region region) {
  switch (region) {
    case Fig1Region::Same: return "Same";
    case Fig1Region::Different: return "Different";
    case Fig1Region::NotAState: return "NotAState";
  }
  return "NotAState";
}

Fig1Region fig1_region(double eps, double r, double s, double t) {
  const CMatrix rho = rho_epsilon_raw(eps, r, s, t);
  if (min_eigenvalue(rho) < -1e-12) return Fig1Region::NotAState;
  const BlochInversion inv = bloch_invert(rho, BlochFlip::A);
  if (!inv.is_state) return Fig1Region::NotAState;
  const Dims d{2, 2};
  const bool a = ppt(rho, d).detected;
  const bool b = ppt(inv.rho, d).detected;
  return a == b ? Fig1Region::Same : Fig1Region::Different;
}

std::vector<Fig1Point> fig1_grid(double step, double s, double t) {
  if (!(step > 0.0) || step > 1.0) throw InputError("fig1: grid step must lie in (0, 1]");
  const int ne = static_cast<int>(std::floor(1.0 / step + 1e-9)) + 1;
  const int nr = static_cast<int>(std::floor(2.0 / step + 1e-9)) + 1;
  std::vector<Fig1Point> out;
  out.reserve(static_cast<std::size_t>(ne) * nr);
  for (int i = 0; i < ne; ++i)
    for (int j = 0; j < nr; ++j) {
      const double eps = i * step, r = -1.0 + j * step;
      out.push_back({eps, r, fig1_region(eps, r, s, t)});
    }
  return out;
}

}  // namespace cmcsep
