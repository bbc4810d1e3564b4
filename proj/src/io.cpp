#include "cmcsep/io.hpp"

#include <fstream>
#include <sstream>

#include "cmcsep/matlin.hpp"

namespace cmcsep {

using json = nlohmann::json;

namespace {

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  std::ostringstream os;
  os << line << ":" << col;
  return os.str();
}

[[noreturn]] void fail(const std::string& source, const std::string& where, const std::string& what) {
  throw InputError(source + ": " + where + ": " + what);
}

double number_at(const json& j, const std::string& source, const std::string& where) {
  if (!j.is_number()) fail(source, where, "expected a number");
  return j.get<double>();
}

}  // namespace

StateFile parse_state(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(source, line_col(text, e.byte > 0 ? e.byte - 1 : 0), std::string("malformed JSON (") + e.what() + ")");
  }
  if (!doc.is_object()) fail(source, "$", "expected an object");

  StateFile out;
  if (!doc.contains("dims")) fail(source, "dims", "missing");
  const json& dims = doc["dims"];
  if (!dims.is_array() || dims.size() != 2) fail(source, "dims", "expected [d_A, d_B]");
  for (int k = 0; k < 2; ++k) {
    if (!dims[static_cast<std::size_t>(k)].is_number_integer() || dims[static_cast<std::size_t>(k)].get<int>() < 2) {
      fail(source, "dims[" + std::to_string(k) + "]", "expected an integer >= 2");
    }
  }
  out.dims = {dims[0].get<int>(), dims[1].get<int>()};
  const int n = out.dims.total();

  if (!doc.contains("matrix")) fail(source, "matrix", "missing");
  const json& m = doc["matrix"];
  if (!m.is_array() || static_cast<int>(m.size()) != n) {
    fail(source, "matrix", "expected " + std::to_string(n) + " rows");
  }
  out.rho = CMatrix(n, n);
  for (int i = 0; i < n; ++i) {
    const json& row = m[static_cast<std::size_t>(i)];
    const std::string rw = "matrix[" + std::to_string(i) + "]";
    if (!row.is_array() || static_cast<int>(row.size()) != n) fail(source, rw, "expected " + std::to_string(n) + " entries");
    for (int j = 0; j < n; ++j) {
      const json& e = row[static_cast<std::size_t>(j)];
      const std::string w = rw + "[" + std::to_string(j) + "]";
      if (!e.is_array() || e.size() != 2) fail(source, w, "expected [re, im]");
      out.rho(i, j) = cplx(number_at(e[0], source, w + "[0]"), number_at(e[1], source, w + "[1]"));
    }
  }
  if (doc.contains("metadata")) {
    if (!doc["metadata"].is_object()) fail(source, "metadata", "expected an object");
    out.metadata = doc["metadata"];
  }
  try {
    out.rho = validated_density(out.rho);
  } catch (const InputError& e) {
    fail(source, "matrix", e.what());
  }
  return out;
}

StateFile read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_state(ss.str(), path);
}

json matrix_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

json matrix_json(const RMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const StateFile& state) {
  return json{{"dims", {state.dims.a, state.dims.b}}, {"matrix", matrix_json(state.rho)}, {"metadata", state.metadata}};
}

void write_state_file(const std::string& path, const StateFile& state) {
  std::ofstream out(path);
  if (!out) throw InputError(path + ": cannot open for writing");
  out << to_json(state).dump(2) << "\n";
}

json to_json(const BlockCovarianceMatrix& cm) {
  return json{{"kind", cm.kind == CmKind::Symmetric ? "symmetric" : "nonsymmetric"},
              {"dims", {cm.dims.a, cm.dims.b}},
              {"basis_a", to_string(cm.basis_a)},
              {"basis_b", to_string(cm.basis_b)},
              {"a", matrix_json(cm.a)},
              {"b", matrix_json(cm.b)},
              {"c", matrix_json(cm.c)},
              {"purity_a", cm.purity_a},
              {"purity_b", cm.purity_b}};
}

json to_json(const NormalForm& nf) {
  return json{{"dims", {nf.dims.a, nf.dims.b}},
              {"xi", std::vector<double>(nf.xi.data(), nf.xi.data() + nf.xi.size())},
              {"f_a", matrix_json(nf.f_a)},
              {"f_b", matrix_json(nf.f_b)},
              {"rho_tilde", matrix_json(nf.rho_tilde)},
              {"converged", nf.converged},
              {"f_value", nf.f_value},
              {"iterations", nf.iterations},
              {"marginal_error", nf.marginal_error},
              {"noise_added", nf.noise_added},
              {"schedule", nf.schedule}};
}

json to_json(const SdpVerdict& v) {
  json a = json::array(), b = json::array();
  for (const auto& op : v.lur.a_ops) a.push_back(matrix_json(op));
  for (const auto& op : v.lur.b_ops) b.push_back(matrix_json(op));
  return json{{"verdict", to_json(v.verdict)},
              {"witness", {{"z1", matrix_json(v.witness.z1)}, {"value", v.witness.value}}},
              {"lur", {{"a_ops", a}, {"b_ops", b}, {"bound", v.lur.bound}}},
              {"solver",
               {{"status", to_string(v.solution.status)},
                {"primal_objective", v.solution.primal_objective},
                {"dual_objective", v.solution.dual_objective},
                {"gap", v.solution.gap},
                {"iterations", v.solution.iterations}}}};
}

}  // namespace cmcsep
