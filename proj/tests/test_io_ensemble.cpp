#include <doctest.h>

#include <sstream>

#include "cmcsep/ensemble.hpp"
#include "cmcsep/io.hpp"
#include "test_util.hpp"

using namespace cmcsep;
using namespace testutil;

TEST_CASE("state file round trip") {
  Rng rng(89);
  StateFile st;
  st.dims = {2, 3};
  st.rho = random_density(6, 6, rng);
  st.metadata = {{"family", "random"}};
  const StateFile back = parse_state(to_json(st).dump());
  CHECK(back.dims == st.dims);
  CHECK((back.rho - st.rho).norm() < 1e-15);
  CHECK(back.metadata["family"] == "random");
}

TEST_CASE("parse errors carry a location") {
  auto message = [](const std::string& text) {
    try {
      parse_state(text, "in.json");
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("{\"dims\": [2, 2],\n \"matrix\": [").find("in.json: 2:") == 0);
  CHECK(message("{\"dims\": [2]}").find("dims") != std::string::npos);
  CHECK(message("{\"dims\": [2, 2], \"matrix\": [[[1,0],[0,0]]]}").find("matrix") != std::string::npos);
  const std::string bad_entry =
      "{\"dims\":[2,2],\"matrix\":[[[0.25,0],[0,0],[0,0],[0,0]],[[0,0],[0.25,0],[0,0],[0,0]],"
      "[[0,0],[0,0],[0.25,0],[0,0]],[[0,0],[0,0],[0,0],\"x\"]]}";
  CHECK(message(bad_entry).find("matrix[3][3]") != std::string::npos);
  const std::string not_state =
      "{\"dims\":[2,2],\"matrix\":[[[1,0],[0,0],[0,0],[0,0]],[[0,0],[1,0],[0,0],[0,0]],"
      "[[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]]]}";
  CHECK(message(not_state).find("matrix") != std::string::npos);
}

TEST_CASE("serial and parallel ensembles agree") {
  const Family fam = make_family("chessboard");
  const std::vector<std::string> crit = {"cmc-sv", "ccnr", "cmc-filter"};
  const auto a = run_ensemble_serial(fam, 40, 42, crit);
  const auto b = run_ensemble_parallel(fam, 40, 42, crit, 3);
  CHECK(a.margins == b.margins);
  CHECK(a.detected == b.detected);

  std::ostringstream c1, c2;
  write_csv(c1, a);
  write_csv(c2, b);
  CHECK(c1.str() == c2.str());
  CHECK(c1.str().rfind("index,criterion,margin,detected\n", 0) == 0);
}

TEST_CASE("empty and invalid ensembles") {
  const Family fam = make_family("separable", 2, 3);
  const auto rep = benchmark(fam, 0, 1, {"ppt"});
  CHECK(rep.n == 0);
  CHECK(rep.fractions[0] == 0.0);
  CHECK(to_json(rep)["version"] == kVersion);
  CHECK_THROWS_AS(run_ensemble_serial(fam, 3, 1, {"bogus"}), InputError);
  CHECK_THROWS_AS(make_family("bogus"), InputError);
}

TEST_CASE("threshold bisection") {
  const auto fam = threshold_family("werner");
  const auto r = threshold_bisect(fam, [](const CMatrix& rho) { return ppt(rho, {2, 2}).detected; }, 0.0, 1.0, 1e-6);
  CHECK(r.found);
  CHECK(std::abs(r.p_star - 1.0 / 3.0) < 1e-6);
  CHECK(r.presweep.size() == 20);

  const auto none = threshold_bisect(fam, [](const CMatrix&) { return false; }, 0.0, 1.0);
  CHECK_FALSE(none.found);

  int calls = 0;
  auto flaky = [&calls](const CMatrix&) { return (calls++ % 2) == 1; };
  CHECK_THROWS_AS(threshold_bisect(fam, flaky, 0.0, 1.0), NumericalError);
  CHECK_THROWS_AS(threshold_bisect(fam, flaky, 1.0, 0.0), InputError);
}

TEST_CASE("fig1 classification") {
  CHECK(fig1_region(1.0, 0.2, 0.45, 1.0 / 16.0) == Fig1Region::NotAState);
  CHECK(fig1_region(1.0, 1.5, 0.45, 1.0 / 16.0) == Fig1Region::NotAState);
  CHECK(fig1_region(0.0, 0.0, 0.45, 1.0 / 16.0) == Fig1Region::Same);
  const auto grid = fig1_grid(0.05);
  CHECK(grid.size() == 21u * 41u);
  CHECK_THROWS_AS(fig1_grid(0.0), InputError);
}
