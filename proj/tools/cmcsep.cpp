#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cmcsep/covariance.hpp"
#include "cmcsep/criteria.hpp"
#include "cmcsep/ensemble.hpp"
#include "cmcsep/filtering.hpp"
#include "cmcsep/io.hpp"
#include "cmcsep/observables.hpp"
#include "cmcsep/states.hpp"

using namespace cmcsep;
using json = nlohmann::json;

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void emit(const json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError(path + ": cannot open for writing");
  out << j.dump(2) << "\n";
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError(path + ": cannot open for writing");
  return out;
}

Dims parse_dims(const std::string& s) {
  const auto x = s.find('x');
  if (x == std::string::npos) throw InputError("--dims expects AxB, got '" + s + "'");
  try {
    const Dims d{std::stoi(s.substr(0, x)), std::stoi(s.substr(x + 1))};
    if (d.a < 2 || d.b < 2) throw InputError("--dims entries must be >= 2");
    return d;
  } catch (const std::logic_error&) {
    throw InputError("--dims expects AxB, got '" + s + "'");
  }
}

struct DetectArgs {
  std::string file;
  std::string criteria = "all";
  std::string basis;
  std::string out;
};

void cmd_detect(const DetectArgs& a) {
  const StateFile st = read_state_file(a.file);
  std::vector<std::string> names;
  if (a.criteria != "all") names = split_list(a.criteria);
  json verdicts = json::array();
  for (const auto& v : run_criteria(st.rho, st.dims, names)) verdicts.push_back(to_json(v));
  json out = {{"dims", {st.dims.a, st.dims.b}}, {"verdicts", verdicts}, {"version", kVersion}};
  if (!a.basis.empty()) {
    const BasisKind kind = parse_basis_kind(a.basis);
    const BlockCovarianceMatrix cm = build_block_cm(st.rho, st.dims, make_basis(kind, st.dims.a),
                                                    make_basis(kind, st.dims.b), CmKind::Symmetric);
    out["basis"] = a.basis;
    out["covariance"] = to_json(cm);
  }
  emit(out, a.out);
}

void cmd_witness(const std::string& file, const std::string& path) {
  const StateFile st = read_state_file(file);
  if (st.dims != Dims{2, 2}) throw InputError("witness: only two-qubit states are supported");
  emit(to_json(cmc_sdp_2q(st.rho)), path);
}

struct NormalFormArgs {
  std::string file;
  FilterOptions opts;
  std::string out;
};

void cmd_normal_form(const NormalFormArgs& a) {
  const StateFile st = read_state_file(a.file);
  emit(to_json(normal_form(st.rho, st.dims, a.opts)), a.out);
}

struct GenArgs {
  std::string family;
  std::string out;
  std::uint64_t seed = 0;
  std::vector<double> params;
  double p = 1.0;
  double eps = 1.0, r = 0.0, s = 0.45, t = 1.0 / 16.0;
  std::string dims = "3x3";
  int rank = 0;
  int terms = 0;
};

void cmd_gen(const GenArgs& a) {
  StateFile st;
  json meta = {{"family", a.family}, {"version", kVersion}};
  if (a.family == "chessboard") {
    st.dims = {3, 3};
    if (!a.params.empty()) {
      if (a.params.size() != 6) throw InputError("chessboard: --params needs m,n,a,b,c,d");
      st.rho = chessboard(a.params[0], a.params[1], a.params[2], a.params[3], a.params[4], a.params[5]);
      meta["params"] = a.params;
    } else {
      st.rho = sample_chessboard(a.seed);
      meta["seed"] = a.seed;
    }
  } else if (a.family == "upb") {
    st.dims = {3, 3};
    st.rho = upb_tiles(a.p);
    meta["params"] = {{"p", a.p}};
  } else if (a.family == "rho-eps") {
    st.dims = {2, 2};
    st.rho = rho_epsilon(a.eps, a.r, a.s, a.t);
    meta["params"] = {{"eps", a.eps}, {"r", a.r}, {"s", a.s}, {"t", a.t}};
  } else if (a.family == "werner") {
    st.dims = {2, 2};
    st.rho = werner_2q(a.p);
    meta["params"] = {{"p", a.p}};
  } else if (a.family == "random") {
    st.dims = parse_dims(a.dims);
    const int d = st.dims.total();
    const int rank = a.rank > 0 ? a.rank : d;
    Rng rng(a.seed);
    st.rho = random_density(d, rank, rng);
    meta["seed"] = a.seed;
    meta["params"] = {{"rank", rank}};
  } else if (a.family == "separable") {
    st.dims = parse_dims(a.dims);
    Rng rng(a.seed);
    const int terms = a.terms > 0 ? a.terms : 2 * st.dims.total();
    st.rho = random_separable(st.dims.a, st.dims.b, terms, rng);
    meta["seed"] = a.seed;
    meta["params"] = {{"terms", terms}};
  } else {
    throw InputError("gen: unknown family '" + a.family + "'");
  }
  st.metadata = meta;
  if (a.out.empty() || a.out == "-") {
    std::cout << to_json(st).dump(2) << "\n";
  } else {
    write_state_file(a.out, st);
  }
}

struct ThresholdArgs {
  std::string family = "upb";
  std::string criterion = "cmc-filter";
  double p_lo = 0.0, p_hi = 1.0, tol = 1e-4;
  std::string out;
};

void cmd_threshold(const ThresholdArgs& a) {
  Dims dims;
  const auto fam = threshold_family(a.family, &dims);
  bool known = false;
  for (const auto& n : criterion_names()) known = known || n == a.criterion;
  if (!known) throw InputError("threshold: unknown criterion '" + a.criterion + "'");
  const ThresholdResult r = threshold_bisect(
      fam, [&](const CMatrix& rho) { return run_criterion(a.criterion, rho, dims).detected; }, a.p_lo, a.p_hi,
      a.tol);
  json sweep = json::array();
  for (const auto& [p, d] : r.presweep) sweep.push_back({p, d});
  emit({{"family", a.family},
        {"criterion", a.criterion},
        {"p_star", r.found ? json(r.p_star) : json(nullptr)},
        {"found", r.found},
        {"bracket", {r.lo, r.hi}},
        {"tol", a.tol},
        {"evaluations", r.evaluations},
        {"presweep", sweep},
        {"version", kVersion}},
       a.out);
}

struct BenchmarkArgs {
  std::string family = "chessboard";
  int n = 10000;
  std::uint64_t seed = 42;
  std::string criteria = "cmc-filter,cmc-sv,cmc-trace,cmc-schmidt,ccnr,de-vicente";
  std::string dims = "3x3";
  int threads = 0;
  std::string csv;
  std::string out;
};

void cmd_benchmark(const BenchmarkArgs& a) {
  const Dims d = parse_dims(a.dims);
  const Family fam = make_family(a.family, d.a, d.b);
  const std::vector<std::string> names = split_list(a.criteria);
  EnsembleResult samples;
  const BenchmarkReport rep = benchmark(fam, a.n, a.seed, names, a.threads, &samples);
  if (!a.csv.empty()) {
    std::ofstream out = open_out(a.csv);
    write_csv(out, samples);
  }
  emit(to_json(rep), a.out);
}

struct Fig1Args {
  double step = 0.01;
  double s = 0.45, t = 1.0 / 16.0;
  std::string out;
};

void cmd_fig1(const Fig1Args& a) {
  const auto grid = fig1_grid(a.step, a.s, a.t);
  std::ofstream file;
  if (!a.out.empty() && a.out != "-") file = open_out(a.out);
  std::ostream& os = file.is_open() ? file : std::cout;
  os << "eps,r,region\n";
  char buf[96];
  for (const auto& pt : grid) {
    std::snprintf(buf, sizeof buf, "%.6g,%.6g,", pt.eps, pt.r);
    os << buf << to_string(pt.region) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Covariance-matrix entanglement detection"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  DetectArgs det;
  auto* sc_det = app.add_subcommand("detect", "Run separability criteria on a state file");
  sc_det->add_option("statefile", det.file)->required();
  sc_det->add_option("--criteria", det.criteria, "Comma-separated criteria or 'all'");
  sc_det->add_option("--basis", det.basis, "Also report the block CM in this basis")
      ->check(CLI::IsMember({"standard", "pauli", "gellmann", "weyl"}));
  sc_det->add_option("-o,--output", det.out);

  std::string wit_file, wit_out;
  auto* sc_wit = app.add_subcommand("witness", "CM witness and LUR observables for a two-qubit state");
  sc_wit->add_option("statefile", wit_file)->required();
  sc_wit->add_option("-o,--output", wit_out);

  NormalFormArgs nf;
  auto* sc_nf = app.add_subcommand("normal-form", "Filter a state to its local normal form");
  sc_nf->add_option("statefile", nf.file)->required();
  sc_nf->add_option("--tol", nf.opts.tol);
  sc_nf->add_option("--max-iter", nf.opts.max_iter);
  sc_nf->add_option("--noise-eps", nf.opts.noise_eps);
  sc_nf->add_option("-o,--output", nf.out);

  GenArgs gen;
  auto* sc_gen = app.add_subcommand("gen", "Write a state from a named family");
  sc_gen->add_option("--family", gen.family)
      ->required()
      ->check(CLI::IsMember({"chessboard", "upb", "rho-eps", "werner", "random", "separable"}));
  sc_gen->add_option("-o,--output", gen.out, "State file (stdout if omitted)");
  sc_gen->add_option("--seed", gen.seed);
  sc_gen->add_option("--params", gen.params, "chessboard m,n,a,b,c,d")->delimiter(',');
  sc_gen->add_option("--p", gen.p);
  sc_gen->add_option("--eps", gen.eps);
  sc_gen->add_option("--r", gen.r);
  sc_gen->add_option("--s", gen.s);
  sc_gen->add_option("--t", gen.t);
  sc_gen->add_option("--dims", gen.dims, "AxB");
  sc_gen->add_option("--rank", gen.rank);
  sc_gen->add_option("--terms", gen.terms);

  ThresholdArgs th;
  auto* sc_th = app.add_subcommand("threshold", "Bisect the detection threshold of a one-parameter family");
  sc_th->add_option("--family", th.family)->check(CLI::IsMember({"upb", "werner"}));
  sc_th->add_option("--criterion", th.criterion);
  sc_th->add_option("--p-lo", th.p_lo);
  sc_th->add_option("--p-hi", th.p_hi);
  sc_th->add_option("--tol", th.tol);
  sc_th->add_option("-o,--output", th.out);

  BenchmarkArgs bm;
  auto* sc_bm = app.add_subcommand("benchmark", "Detection fractions over a seeded ensemble");
  sc_bm->add_option("--family", bm.family);
  sc_bm->add_option("--n", bm.n);
  sc_bm->add_option("--seed", bm.seed);
  sc_bm->add_option("--criteria", bm.criteria);
  sc_bm->add_option("--dims", bm.dims, "AxB for random and separable");
  sc_bm->add_option("--threads", bm.threads);
  sc_bm->add_option("--csv", bm.csv, "Per-sample margins");
  sc_bm->add_option("-o,--output", bm.out);

  Fig1Args f1;
  auto* sc_f1 = app.add_subcommand("fig1", "Classify the (eps, r) plane of the rho_eps family");
  sc_f1->add_option("--step", f1.step);
  sc_f1->add_option("--s", f1.s);
  sc_f1->add_option("--t", f1.t);
  sc_f1->add_option("-o,--output", f1.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*sc_det) cmd_detect(det);
    if (*sc_wit) cmd_witness(wit_file, wit_out);
    if (*sc_nf) cmd_normal_form(nf);
    if (*sc_gen) cmd_gen(gen);
    if (*sc_th) cmd_threshold(th);
    if (*sc_bm) cmd_benchmark(bm);
    if (*sc_f1) cmd_fig1(f1);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
