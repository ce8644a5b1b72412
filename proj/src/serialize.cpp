#include "ncgraph/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ncg {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

void expect_kind(const Json& j, const char* kind) {
  const Json& k = field(j, "kind");
  if (!k.is_string() || k.get<std::string>() != kind) {
    throw ParseError(std::string("expected kind \"") + kind + "\"");
  }
}

double number(const Json& j) {
  if (!j.is_number()) throw ParseError("expected a number");
  return j.get<double>();
}

int integer(const Json& j) {
  if (!j.is_number_integer()) throw ParseError("expected an integer");
  return j.get<int>();
}

Complex complex_from(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("expected a [re, im] pair");
  return {number(j[0]), number(j[1])};
}

Json opt_number(const std::optional<double>& v) {
  return v ? Json(round9(*v)) : Json(nullptr);
}

}  // namespace

double round9(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return std::strtod(buf, nullptr);
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw ParseError("expected a matrix");
  const Eigen::Index r = static_cast<Eigen::Index>(j.size());
  const Eigen::Index c = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    const Json& row = j[i];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != c) {
      throw ParseError("matrix rows differ in length");
    }
    for (Eigen::Index k = 0; k < c; ++k) m(i, k) = complex_from(row[k]);
  }
  return m;
}

Json real_matrix_to_json(const RealMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

RealMatrix real_matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw ParseError("expected a real matrix");
  const Eigen::Index r = static_cast<Eigen::Index>(j.size());
  const Eigen::Index c = static_cast<Eigen::Index>(j[0].size());
  RealMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != c) {
      throw ParseError("matrix rows differ in length");
    }
    for (Eigen::Index k = 0; k < c; ++k) m(i, k) = number(j[i][k]);
  }
  return m;
}

Json vector_to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

ComplexVector vector_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("expected a vector");
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from(j[i]);
  return v;
}

Json to_json(const OperatorSpace& s) {
  Json j;
  j["kind"] = "operator_space";
  if (s.is_square()) {
    j["dim"] = s.rows();
  } else {
    j["rows"] = s.rows();
    j["cols"] = s.cols();
  }
  Json basis = Json::array();
  for (const auto& f : s.basis()) basis.push_back(matrix_to_json(f));
  j["basis"] = std::move(basis);
  return j;
}

OperatorSpace space_from_json(const Json& j) {
  expect_kind(j, "operator_space");
  Eigen::Index rows = 0, cols = 0;
  if (j.contains("dim")) {
    rows = cols = integer(j.at("dim"));
  } else {
    rows = integer(field(j, "rows"));
    cols = integer(field(j, "cols"));
  }
  if (rows < 1 || cols < 1) throw ParseError("operator_space: dimensions must be positive");
  const Json& basis = field(j, "basis");
  if (!basis.is_array()) throw ParseError("operator_space: basis must be an array");
  std::vector<ComplexMatrix> mats;
  for (const auto& b : basis) {
    ComplexMatrix m = matrix_from_json(b);
    if (m.rows() != rows || m.cols() != cols) throw ParseError("operator_space: basis element shape");
    mats.push_back(std::move(m));
  }
  return span_rect(rows, cols, mats);
}

Json to_json(const QuantumChannel& ch) {
  Json j;
  j["kind"] = "channel";
  j["dim_in"] = ch.dim_in();
  j["dim_out"] = ch.dim_out();
  Json kraus = Json::array();
  for (const auto& e : ch.kraus()) kraus.push_back(matrix_to_json(e));
  j["kraus"] = std::move(kraus);
  return j;
}

std::vector<ComplexMatrix> kraus_from_json(const Json& j) {
  expect_kind(j, "channel");
  const int din = integer(field(j, "dim_in")), dout = integer(field(j, "dim_out"));
  const Json& kraus = field(j, "kraus");
  if (!kraus.is_array() || kraus.empty()) throw ParseError("channel: kraus must be a non-empty array");
  std::vector<ComplexMatrix> out;
  for (const auto& k : kraus) {
    ComplexMatrix e = matrix_from_json(k);
    if (e.rows() != dout || e.cols() != din) throw ParseError("channel: Kraus operator shape");
    out.push_back(std::move(e));
  }
  return out;
}

QuantumChannel channel_from_json(const Json& j) { return QuantumChannel::make(kraus_from_json(j)); }

Json to_json(const ClassicalChannel& ch) {
  Json j;
  j["kind"] = "classical_channel";
  j["n_in"] = ch.n_in;
  j["n_out"] = ch.n_out;
  j["probs"] = real_matrix_to_json(ch.probs);
  return j;
}

ClassicalChannel classical_channel_from_json(const Json& j) {
  expect_kind(j, "classical_channel");
  RealMatrix probs = real_matrix_from_json(field(j, "probs"));
  if (probs.rows() != integer(field(j, "n_out")) || probs.cols() != integer(field(j, "n_in"))) {
    throw ParseError("classical_channel: probs shape differs from n_out x n_in");
  }
  return ClassicalChannel::make(std::move(probs));
}

Json to_json(const Graph& g) {
  Json j;
  j["kind"] = "graph";
  j["n"] = g.n();
  Json edges = Json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  return j;
}

Graph graph_from_json(const Json& j) {
  expect_kind(j, "graph");
  const int n = integer(field(j, "n"));
  if (n < 1) throw ParseError("graph: n must be positive");
  const Json& edges = field(j, "edges");
  if (!edges.is_array()) throw ParseError("graph: edges must be an array");
  Graph g(n);
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 2) throw ParseError("graph: each edge is a pair");
    const int u = integer(e[0]), v = integer(e[1]);
    if (u < 0 || v < 0 || u >= n || v >= n || u == v) throw ParseError("graph: bad edge");
    g.add_edge(u, v);
  }
  return g;
}

Json to_json(const LmiProblem& p) {
  Json j;
  j["kind"] = "lmi";
  j["sense"] = p.sense == Sense::Minimize ? "minimize" : "maximize";
  j["c"] = std::vector<double>(p.objective.data(), p.objective.data() + p.objective.size());
  Json blocks = Json::array();
  for (const auto& b : p.blocks) {
    Json fi = Json::array();
    for (const auto& f : b.coeffs) fi.push_back(real_matrix_to_json(RealMatrix(f)));
    blocks.push_back({{"F0", real_matrix_to_json(b.f0)}, {"Fi", std::move(fi)}});
  }
  j["blocks"] = std::move(blocks);
  return j;
}

LmiProblem lmi_from_json(const Json& j) {
  expect_kind(j, "lmi");
  const Json& c = field(j, "c");
  if (!c.is_array()) throw ParseError("lmi: c must be an array");
  const std::string sense = field(j, "sense").get<std::string>();
  if (sense != "minimize" && sense != "maximize") throw ParseError("lmi: unknown sense");
  LmiProblem p(static_cast<Eigen::Index>(c.size()),
               sense == "minimize" ? Sense::Minimize : Sense::Maximize);
  for (std::size_t i = 0; i < c.size(); ++i) p.objective(static_cast<Eigen::Index>(i)) = number(c[i]);
  for (const auto& bj : field(j, "blocks")) {
    const RealMatrix f0 = real_matrix_from_json(field(bj, "F0"));
    LmiBlock b(f0.rows(), p.num_vars);
    b.f0 = f0;
    const Json& fi = field(bj, "Fi");
    if (!fi.is_array() || fi.size() != c.size()) throw ParseError("lmi: Fi count differs from c");
    for (std::size_t i = 0; i < fi.size(); ++i) {
      b.set_coeff(static_cast<Eigen::Index>(i), real_matrix_from_json(fi[i]));
    }
    p.blocks.push_back(std::move(b));
  }
  try {
    p.check();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return p;
}

Json to_json(const ThetaResult& r) {
  Json j;
  j["kind"] = "theta_result";
  j["value"] = round9(r.value);
  j["primal"] = opt_number(r.primal_value);
  j["dual"] = opt_number(r.dual_value);
  j["gap"] = round9(r.gap);
  Json w = Json::object();
  if (r.witness.y) w["y"] = matrix_to_json(*r.witness.y);
  if (r.witness.rho) w["rho"] = matrix_to_json(*r.witness.rho);
  if (r.witness.t_prime) w["t_prime"] = matrix_to_json(*r.witness.t_prime);
  j["witness"] = std::move(w);
  j["solver_stats"] = {{"solves", r.stats.solves},
                       {"iterations", r.stats.iterations},
                       {"min_validated_eig", round9(r.stats.min_validated_eig)},
                       {"max_solver_gap", round9(r.stats.max_solver_gap)}};
  return j;
}

Json to_json(const IndependentSetCandidate& c) {
  Json j;
  j["kind"] = "independent_set";
  Json vs = Json::array();
  for (const auto& v : c.vectors) vs.push_back(vector_to_json(v));
  j["vectors"] = std::move(vs);
  j["residual"] = round9(c.residual);
  return j;
}

std::vector<ComplexVector> vectors_from_json(const Json& j) {
  const Json& vs = j.is_array() ? j : (expect_kind(j, "independent_set"), field(j, "vectors"));
  if (!vs.is_array() || vs.empty()) throw ParseError("independent_set: vectors must be non-empty");
  std::vector<ComplexVector> out;
  for (const auto& v : vs) out.push_back(vector_from_json(v));
  return out;
}

ComplexMatrix matrix_artifact_from_json(const Json& j) {
  if (j.is_array()) return matrix_from_json(j);
  expect_kind(j, "matrix");
  return matrix_from_json(field(j, "matrix"));
}

Json to_json(const BoundsReport& r) {
  Json j;
  j["kind"] = "bounds_report";
  j["alpha_lower"] = r.alpha_lower;
  j["alpha_lower_exact"] = r.alpha_lower_exact;
  j["alpha_upper"] = r.alpha_upper;
  j["theta_tilde_upper"] = round9(r.theta_tilde_upper);
  j["alpha_tilde_upper"] = r.alpha_tilde_upper;
  j["pair_dim_upper"] = r.pair_dim_upper;
  j["alpha_hat_upper"] = r.alpha_hat_upper;
  j["ambient_upper"] = r.ambient_upper;
  IndependentSetCandidate witness{r.alpha_lower_witness, 0.0};
  j["alpha_lower_witness"] = to_json(witness)["vectors"];
  return j;
}

Artifact artifact_from_json(const Json& j) {
  const Json& k = field(j, "kind");
  if (!k.is_string()) throw ParseError("kind must be a string");
  const std::string kind = k.get<std::string>();
  if (kind == "graph") return graph_from_json(j);
  if (kind == "operator_space") return space_from_json(j);
  if (kind == "channel") return channel_from_json(j);
  if (kind == "classical_channel") return classical_channel_from_json(j);
  throw ParseError("unsupported kind \"" + kind + "\"");
}

OperatorSpace as_space(const Artifact& a) {
  struct Lift {
    OperatorSpace operator()(const Graph& g) const { return to_operator_space(g); }
    OperatorSpace operator()(const OperatorSpace& s) const { return s; }
    OperatorSpace operator()(const QuantumChannel& ch) const { return confusability(ch); }
    OperatorSpace operator()(const ClassicalChannel& ch) const {
      return confusability(from_classical(ch));
    }
  };
  return std::visit(Lift{}, a);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace ncg
