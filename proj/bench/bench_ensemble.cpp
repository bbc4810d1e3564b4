#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#include <CLI11.hpp>

#include "cmcsep/ensemble.hpp"

using namespace cmcsep;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool same(const EnsembleResult& a, const EnsembleResult& b) {
  return a.margins.size() == b.margins.size() &&
         std::memcmp(a.margins.data(), b.margins.data(), a.margins.size() * sizeof(double)) == 0 &&
         a.detected == b.detected && a.undetermined == b.undetermined;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial vs OpenMP ensemble evaluation"};
  std::string family = "chessboard";
  int n = 2000;
  std::uint64_t seed = 42;
  int threads = 0;
  app.add_option("--family", family);
  app.add_option("--n", n);
  app.add_option("--seed", seed);
  app.add_option("--threads", threads);
  CLI11_PARSE(app, argc, argv);

  const Family fam = make_family(family);
  const std::vector<std::string> crit = {"cmc-filter", "cmc-sv", "cmc-trace", "cmc-schmidt", "ccnr", "de-vicente"};
  if (threads <= 0) threads = configured_threads();

  auto t0 = std::chrono::steady_clock::now();
  const EnsembleResult serial = run_ensemble_serial(fam, n, seed, crit);
  const double t_serial = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  const EnsembleResult parallel = run_ensemble_parallel(fam, n, seed, crit, threads);
  const double t_parallel = seconds_since(t0);

  std::printf("family=%s n=%d seed=%llu\n", family.c_str(), n, static_cast<unsigned long long>(seed));
  std::printf("serial    %8.3f s  %8.1f us/sample\n", t_serial, 1e6 * t_serial / std::max(n, 1));
  std::printf("openmp x%-2d %7.3f s  %8.1f us/sample  speedup %.2f\n", threads, t_parallel,
              1e6 * t_parallel / std::max(n, 1), t_parallel > 0 ? t_serial / t_parallel : 0.0);
  const bool ok = same(serial, parallel);
  std::printf("outputs %s\n", ok ? "identical" : "DIFFER");
  return ok ? 0 : 1;
}
