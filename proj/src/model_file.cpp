#include "cplp/model_file.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace cplp {

namespace {

[[noreturn]] void fail(const std::string& what) { throw InputError(what); }

const Json& require(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) fail(where + ": missing \"" + key + "\"");
  return obj.at(key);
}

double number(const Json& j, const std::string& what) {
  if (!j.is_number()) fail(what + " must be a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) fail(what + " must be finite");
  return x;
}

double number_or(const Json& obj, const char* key, double fallback, const std::string& where) {
  return obj.contains(key) ? number(obj.at(key), where + "." + key) : fallback;
}

int integer(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) fail(what + " must be an integer");
  return j.get<int>();
}

RealMatrix real_matrix(const Json& j, const std::string& what) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) fail(what + " must be a nonempty array of rows");
  const Index rows = static_cast<Index>(j.size());
  const Index cols = static_cast<Index>(j[0].size());
  RealMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) fail(what + ": ragged rows");
    for (Index c = 0; c < cols; ++c) m(r, c) = number(row[static_cast<std::size_t>(c)], what);
  }
  return m;
}

// "inf" (or "infinity") for an infinite value.
double temperature_like(const Json& j, const std::string& what) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    fail(what + ": only \"inf\" is accepted as a string");
  }
  const double x = number(j, what);
  if (x < 0.0) fail(what + " must be nonnegative");
  return x;
}

double parse_beta(const Json& s) {
  const bool has_t = s.contains("T");
  const bool has_beta = s.contains("beta");
  if (has_t == has_beta) fail("state: give exactly one of \"T\" or \"beta\"");
  if (has_beta) {
    const double beta = temperature_like(s.at("beta"), "state.beta");
    if (beta == 0.0) fail("state.beta must be positive");
    return beta;
  }
  const double t = temperature_like(s.at("T"), "state.T");
  if (std::isinf(t)) fail("state.T must be finite");
  return t == 0.0 ? kInfiniteBeta : 1.0 / t;
}

HermitianOperator parse_generator(const Json& g, const BipartiteSpace& space) {
  if (g.is_string()) {
    const std::string name = g.get<std::string>();
    if (name != "xx") fail("state.generator: unknown name \"" + name + "\"");
    if (space.d_a != 2 || space.d_b != 2) fail("state.generator \"xx\" needs a two-qubit model");
    return HermitianOperator(kron(pauli::x(), pauli::x()));
  }
  const Matrix m = matrix_from_json(g);
  if (m.rows() != space.dim() || m.cols() != space.dim()) fail("state.generator: dimension mismatch");
  try {
    return HermitianOperator(m);
  } catch (const NotHermitianError& e) {
    fail(std::string("state.generator: ") + e.what());
  }
}

StateSpec parse_state(const Json& s, const BipartiteSpace& space) {
  if (!s.is_object()) fail("state must be an object");
  const std::string kind = require(s, "kind", "state").get<std::string>();
  StateSpec spec;
  if (kind == "thermal") {
    spec.kind = StateSpec::Kind::thermal;
    spec.beta = parse_beta(s);
  } else if (kind == "rotated_thermal") {
    spec.kind = StateSpec::Kind::rotated_thermal;
    spec.beta = parse_beta(s);
    spec.generator = parse_generator(require(s, "generator", "state"), space);
  } else if (kind == "eigenmixture") {
    spec.kind = StateSpec::Kind::eigenmixture;
    const Json& p = require(s, "populations", "state");
    if (!p.is_array()) fail("state.populations must be an array");
    for (const Json& x : p) spec.populations.push_back(number(x, "state.populations"));
    if (static_cast<Index>(spec.populations.size()) != space.dim()) fail("state.populations: wrong length");
  } else {
    fail("state.kind: unknown kind \"" + kind + "\"");
  }
  return spec;
}

ModelFamily parse_family(const Json& doc, double& kappa) {
  const std::string family = doc.at("family").get<std::string>();
  const Json& params = require(doc, "params", "model");
  if (!params.is_object()) fail("params must be an object");
  ModelFamily f;
  kappa = number_or(params, "kappa", 0.0, "params");
  if (family == "chain") {
    f.kind = ModelFamily::Kind::chain;
    f.chain.n_sites = integer(require(params, "n_sites", "params"), "params.n_sites");
    f.chain.gamma = number_or(params, "gamma", 0.0, "params");
    f.chain.field = number_or(params, "field", 1.0, "params");
    f.chain.a_region.clear();
    if (params.contains("a_region")) {
      for (const Json& x : params.at("a_region")) f.chain.a_region.push_back(integer(x, "params.a_region"));
    } else {
      const int m = params.contains("a_sites") ? integer(params.at("a_sites"), "params.a_sites") : 1;
      for (int i = 1; i <= m; ++i) f.chain.a_region.push_back(i);
    }
  } else if (family == "two_qubit") {
    f.kind = ModelFamily::Kind::two_qubit;
    const std::string form = params.value("form", std::string("xy_symmetric"));
    const auto parsed = parse_two_qubit_form(form);
    if (!parsed) fail("params.form: unknown form \"" + form + "\"");
    f.two_qubit.form = *parsed;
    f.two_qubit.omega = number_or(params, "omega", 0.0, "params");
    f.two_qubit.gamma = number_or(params, "gamma", 0.0, "params");
  } else {
    fail("family: unknown family \"" + family + "\"");
  }
  return f;
}

}  // namespace

std::string to_string(StateSpec::Kind kind) {
  switch (kind) {
    case StateSpec::Kind::thermal:
      return "thermal";
    case StateSpec::Kind::eigenmixture:
      return "eigenmixture";
    case StateSpec::Kind::rotated_thermal:
      return "rotated_thermal";
  }
  return "unknown";
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) fail(path + " is empty");
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(path + ": " + e.what());
  }
}

ModelFile parse_model(const Json& doc, const Tolerances& tol) {
  if (!doc.is_object()) fail("model document must be a JSON object");
  try {
    ModelFile mf;
    if (doc.contains("family") == doc.contains("explicit")) fail("model: give exactly one of \"family\" or \"explicit\"");
    if (doc.contains("family")) {
      ModelFamily f = parse_family(doc, mf.kappa);
      if (f.kind == ModelFamily::Kind::chain) {
        SpinChainSpec spec = f.chain;
        spec.kappa = mf.kappa;
        mf.model = build_chain(spec);
        mf.decomposition = decompose_chain(spec);
      } else {
        TwoQubitSpec spec = f.two_qubit;
        spec.kappa = mf.kappa;
        mf.model = build_two_qubit(spec);
        mf.decomposition = decompose_two_qubit(spec);
      }
      mf.description = f.describe() + " kappa=" + format_double(mf.kappa);
      mf.family = std::move(f);
    } else {
      const Json& e = doc.at("explicit");
      const int d_a = integer(require(e, "d_a", "explicit"), "explicit.d_a");
      const int d_b = integer(require(e, "d_b", "explicit"), "explicit.d_b");
      if (d_a < 1 || d_b < 1 || d_a * d_b > 4096) fail("explicit: invalid dimensions");
      const BipartiteSpace space(d_a, d_b);
      Json parts = {{"real", require(e, "h_real", "explicit")}};
      if (e.contains("h_imag")) parts["imag"] = e.at("h_imag");
      const Matrix h = matrix_from_json(parts);
      if (h.rows() != space.dim() || h.cols() != space.dim()) fail("explicit: H must be (d_a d_b) x (d_a d_b)");
      mf.model = Model{HermitianOperator(h, tol.herm_tol), space};
      mf.description = "explicit d_a=" + std::to_string(d_a) + " d_b=" + std::to_string(d_b);
    }
    if (doc.contains("state")) mf.state = parse_state(doc.at("state"), mf.model.space);
    return mf;
  } catch (const Json::exception& e) {
    fail(std::string("model: ") + e.what());
  } catch (const NotHermitianError& e) {
    fail(std::string("model: ") + e.what());
  } catch (const DimensionError& e) {
    fail(std::string("model: ") + e.what());
  }
}

DensityMatrix build_state(const ModelFile& mf, const Tolerances& tol) {
  if (!mf.state) fail("model document has no \"state\"");
  const StateSpec& s = *mf.state;
  const Model& m = mf.model;
  try {
    switch (s.kind) {
      case StateSpec::Kind::thermal:
        return gibbs(m.hamiltonian, m.space, s.beta, tol);
      case StateSpec::Kind::rotated_thermal:
        return rotated_thermal(m.hamiltonian, m.space, s.beta, *s.generator, tol);
      case StateSpec::Kind::eigenmixture:
        return eigenmixture(m.hamiltonian, m.space, s.populations, tol).state;
    }
  } catch (const InvalidStateError& e) {
    fail(std::string("state: ") + e.what());
  }
  fail("state: unknown kind");
}

ClassicalInstance parse_classical(const Json& doc) {
  try {
    return ClassicalInstance(real_matrix(require(doc, "energies", "classical"), "energies"),
                             real_matrix(require(doc, "populations", "classical"), "populations"));
  } catch (const Json::exception& e) {
    fail(std::string("classical: ") + e.what());
  } catch (const DimensionError& e) {
    fail(std::string("classical: ") + e.what());
  } catch (const InvalidStateError& e) {
    fail(std::string("classical: ") + e.what());
  }
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 3) fail("grid must be lo:hi:n");
  try {
    std::size_t used = 0;
    const double lo = std::stod(parts[0], &used);
    if (used != parts[0].size()) fail("grid: bad lower bound");
    const double hi = std::stod(parts[1], &used);
    if (used != parts[1].size()) fail("grid: bad upper bound");
    const int n = std::stoi(parts[2], &used);
    if (used != parts[2].size() || n < 1) fail("grid: point count must be a positive integer");
    if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo) fail("grid: need finite lo <= hi");
    return linspace(lo, hi, n);
  } catch (const std::logic_error&) {
    fail("grid must be lo:hi:n with numeric fields");
  }
}

ScanRecipe parse_recipe(const Json& doc, const Tolerances& tol) {
  ScanRecipe r;
  try {
    if (!doc.is_object() || !doc.contains("family")) fail("recipe: scans need a \"family\" model");
    double kappa = 0.0;
    r.family = parse_family(doc, kappa);
    if (doc.contains("state")) {
      const Json& s = doc.at("state");
      const std::string kind = require(s, "kind", "state").get<std::string>();
      if (kind == "rotated_thermal") {
        const BipartiteSpace space = r.family.kind == ModelFamily::Kind::chain
                                         ? build_chain(r.family.chain).space
                                         : BipartiteSpace(2, 2);
        r.family.rotation_generator = parse_generator(require(s, "generator", "state"), space);
      } else if (kind != "thermal") {
        fail("recipe: scans run over thermal or rotated_thermal states");
      }
    }
    r.options.tol = tol;
    if (doc.contains("scan")) {
      const Json& s = doc.at("scan");
      r.parameter = s.value("param", std::string("kappa"));
      if (s.contains("grid")) {
        const Json& g = s.at("grid");
        if (!g.is_array() || g.size() != 3) fail("scan.grid must be [lo, hi, n]");
        r.grid = linspace(number(g[0], "scan.grid"), number(g[1], "scan.grid"), integer(g[2], "scan.grid"));
      } else if (s.contains("values")) {
        for (const Json& x : s.at("values")) r.grid.push_back(number(x, "scan.values"));
      }
      if (s.contains("t_window")) {
        const Json& w = s.at("t_window");
        if (!w.is_array() || w.size() != 2) fail("scan.t_window must be [lo, hi]");
        r.options.t_lo = number(w[0], "scan.t_window");
        r.options.t_hi = number(w[1], "scan.t_window");
      }
      if (s.contains("grid_points")) r.options.grid_points = integer(s.at("grid_points"), "scan.grid_points");
      if (s.contains("bisection_steps")) r.options.bisection_steps = integer(s.at("bisection_steps"), "scan.bisection_steps");
      r.with_bound = s.value("with_bound", false);
    }
    if (doc.contains("chain_lengths")) {
      if (r.family.kind != ModelFamily::Kind::chain) fail("chain_lengths needs a chain family");
      for (const Json& x : doc.at("chain_lengths")) r.chain_lengths.push_back(integer(x, "chain_lengths"));
    }
  } catch (const Json::exception& e) {
    fail(std::string("recipe: ") + e.what());
  } catch (const DimensionError& e) {
    fail(std::string("recipe: ") + e.what());
  }
  if (r.parameter != "kappa") fail("scan.param: only \"kappa\" is supported");
  return r;
}

Json matrix_to_json(const Matrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json rr = Json::array();
    Json ri = Json::array();
    for (Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ri);
  }
  return {{"real", re}, {"imag", im}};
}

Matrix matrix_from_json(const Json& j) {
  const RealMatrix re = real_matrix(require(j, "real", "matrix"), "matrix.real");
  RealMatrix im = RealMatrix::Zero(re.rows(), re.cols());
  if (j.contains("imag")) {
    im = real_matrix(j.at("imag"), "matrix.imag");
    if (im.rows() != re.rows() || im.cols() != re.cols()) fail("matrix: real and imag shapes differ");
  }
  if (re.rows() != re.cols()) fail("matrix must be square");
  Matrix m(re.rows(), re.cols());
  for (Index r = 0; r < re.rows(); ++r)
    for (Index c = 0; c < re.cols(); ++c) m(r, c) = Complex(re(r, c), im(r, c));
  return m;
}

Json certificate_to_json(const ChoiMatrix& choi, const Matrix& dual_y) {
  return {{"d_a", choi.d_a()}, {"choi", matrix_to_json(choi.matrix())}, {"dual_y", matrix_to_json(dual_y)}};
}

Certificate certificate_from_json(const Json& j) {
  try {
    const int d = integer(require(j, "d_a", "certificate"), "certificate.d_a");
    const Matrix e = matrix_from_json(require(j, "choi", "certificate"));
    const Matrix y = matrix_from_json(require(j, "dual_y", "certificate"));
    if (d < 1 || e.rows() != d * d || y.rows() != d) fail("certificate: dimensions do not match d_a");
    return {ChoiMatrix(d, e), y};
  } catch (const InvalidStateError& e) {
    fail(std::string("certificate: ") + e.what());
  } catch (const NotHermitianError& e) {
    fail(std::string("certificate: ") + e.what());
  }
}

}  // namespace cplp
