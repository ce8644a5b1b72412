// ncgraph: build, transform, solve and verify non-commutative graphs.
//
// Exit codes: 0 success, 1 verification failure, 2 input error, 3 solver failure.
#include "ncgraph/channel.hpp"
#include "ncgraph/graph.hpp"
#include "ncgraph/independence.hpp"
#include "ncgraph/serialize.hpp"
#include "ncgraph/suite.hpp"
#include "ncgraph/theta.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace ncg;

constexpr int kOk = 0;
constexpr int kVerifyFail = 1;
constexpr int kInputError = 2;
constexpr int kSolverFailure = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  double tol = 1e-8;
  int max_iter = 500;
  std::uint64_t seed = 0;
  bool json = false;

  SolverOptions solver() const {
    SolverOptions o;
    o.gap_tol = tol;
    o.feas_tol = tol;
    o.max_iter = max_iter;
    return o;
  }
};

std::string g9(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

Artifact load_artifact(const std::string& path) { return artifact_from_json(read_json_file(path)); }

OperatorSpace load_space(const std::string& path) {
  const OperatorSpace s = as_space(load_artifact(path));
  if (!is_nc_graph(s)) throw InputError(path + ": not a non-commutative graph (needs 1 in S and S = S*)");
  return s;
}

Graph load_graph(const std::string& path) {
  const Artifact a = load_artifact(path);
  if (const auto* g = std::get_if<Graph>(&a)) return *g;
  if (const auto* s = std::get_if<OperatorSpace>(&a)) {
    if (auto g = classical_graph_of(*s)) return *g;
  }
  throw InputError(path + ": expected a graph");
}

// Replaces the witness matrices in stdout output by the file they went to.
Json theta_output(const ThetaResult& r, const std::string& witness_path) {
  Json j = to_json(r);
  if (!witness_path.empty()) {
    write_json_file(witness_path, Json{{"kind", "theta_witness"}, {"witness", j["witness"]}});
    j["witness"] = witness_path;
  } else {
    j.erase("witness");
  }
  return j;
}

void print_theta(const char* name, const ThetaResult& r) {
  std::printf("%s %s\n", name, g9(r.value).c_str());
  if (r.primal_value) std::printf("primal %s\n", g9(*r.primal_value).c_str());
  if (r.dual_value) std::printf("dual %s\n", g9(*r.dual_value).c_str());
  std::printf("gap %s\n", g9(r.gap).c_str());
}

int run_theta(const RunConfig& cfg, const std::string& input, const std::string& witness) {
  const ThetaResult r = theta_classical(load_graph(input), cfg.solver());
  const Json j = theta_output(r, witness);
  if (cfg.json) {
    emit(j);
  } else {
    print_theta("theta", r);
  }
  return kOk;
}

int run_theta_tilde(const RunConfig& cfg, const std::string& input, bool primal_only, bool dual_only,
                    const std::string& witness) {
  if (primal_only && dual_only) throw InputError("--primal-only and --dual-only are exclusive");
  const OperatorSpace s = load_space(input);
  const ThetaResult r = primal_only ? theta_tilde_primal(s, cfg.solver())
                        : dual_only ? theta_tilde_dual(s, cfg.solver())
                                    : theta_tilde(s, cfg.solver());
  const Json j = theta_output(r, witness);
  if (cfg.json) {
    emit(j);
  } else {
    print_theta("theta_tilde", r);
  }
  return kOk;
}

int run_alpha(const RunConfig& cfg, const std::string& input, const std::string& mode,
              std::optional<int> target) {
  if (mode == "brute") {
    const Graph g = load_graph(input);
    const IndependentSet set = alpha_brute(g);
    if (cfg.json) {
      emit(Json{{"kind", "alpha"}, {"mode", "brute"}, {"alpha", set.size}, {"vertices", set.vertices}});
    } else {
      std::printf("alpha %d\nvertices", set.size);
      for (int v : set.vertices) std::printf(" %d", v);
      std::printf("\n");
    }
    return kOk;
  }
  const OperatorSpace s = load_space(input);
  BoundsOptions opts;
  opts.search.seed = cfg.seed;
  opts.solver = cfg.solver();
  BoundsReport b = bounds(s, opts);
  Json j = to_json(b);
  if (target) {
    const Eigen::Index d = s.ambient_dim();
    if (*target < 1 || *target > d) throw InputError("--target must lie in [1, d]");
    const auto found = alpha_lower_search(s, *target, opts.search);
    j["target"] = {{"size", *target}, {"found", found.has_value()}};
    if (found) j["target"]["witness"] = to_json(*found)["vectors"];
  }
  if (cfg.json) {
    emit(j);
  } else {
    std::printf("alpha in [%d, %d]\n", b.alpha_lower, b.alpha_upper);
    std::printf("lower %s\n", b.alpha_lower_exact ? "exact" : "from search");
    std::printf("theta_tilde_upper %s\n", g9(b.theta_tilde_upper).c_str());
    std::printf("alpha_tilde_upper %d\n", b.alpha_tilde_upper);
    std::printf("pair_dim_upper %d\n", b.pair_dim_upper);
    std::printf("alpha_hat_upper %d\n", b.alpha_hat_upper);
    std::printf("ambient_upper %d\n", b.ambient_upper);
    if (target) {
      std::printf("target %d %s\n", *target, j["target"]["found"].get<bool>() ? "found" : "not found");
    }
  }
  return kOk;
}

struct OpArgs {
  std::string name;
  std::string a, b, out, isometry;
  std::optional<int> t;
};

Json run_op_json(const OpArgs& op) {
  if (op.a.empty()) throw InputError("-a is required");
  const Artifact a = load_artifact(op.a);
  const bool binary = op.name == "product" || op.name == "dsum" || op.name == "cunion" ||
                      op.name == "intersect";
  if (binary != !op.b.empty()) {
    throw InputError(binary ? "-b is required for " + op.name : "-b is not used by " + op.name);
  }
  const Graph* ga = std::get_if<Graph>(&a);

  if (binary) {
    const Artifact b = load_artifact(op.b);
    const Graph* gb = std::get_if<Graph>(&b);
    if (op.name == "intersect") {
      const OperatorSpace both = intersection(as_space(a), as_space(b));
      if (ga && gb) return to_json(*classical_graph_of(both));
      return to_json(both);
    }
    if (ga && gb) {
      if (op.name == "product") return to_json(strong_product(*ga, *gb));
      if (op.name == "dsum") return to_json(disjoint_union(*ga, *gb));
      return to_json(join(*ga, *gb));
    }
    const auto* ca = std::get_if<QuantumChannel>(&a);
    const auto* cb = std::get_if<QuantumChannel>(&b);
    if (op.name == "product" && ca && cb) return to_json(tensor(*ca, *cb));
    const OperatorSpace sa = as_space(a), sb = as_space(b);
    if (op.name == "product") return to_json(tensor(sa, sb));
    if (op.name == "dsum") return to_json(direct_sum(sa, sb));
    return to_json(complete_union(sa, sb));
  }
  if (op.name == "complement") {
    if (ga) return to_json(complement_graph(*ga));
    return to_json(nc_complement(as_space(a)));
  }
  if (op.name == "distance") {
    if (!op.t || *op.t < 1) throw InputError("distance needs --t >= 1");
    const OperatorSpace s = distance_graph(as_space(a), *op.t);
    if (ga) {
      if (auto g = classical_graph_of(s)) return to_json(*g);
    }
    return to_json(s);
  }
  if (op.name == "induced") {
    if (op.isometry.empty()) throw InputError("induced needs --isometry");
    const ComplexMatrix u = matrix_artifact_from_json(read_json_file(op.isometry));
    return to_json(induced_subgraph(as_space(a), u));
  }
  throw InputError("unknown op " + op.name);
}

int run_op(const RunConfig& cfg, const OpArgs& op) {
  const Json j = run_op_json(op);
  if (op.out.empty()) {
    emit(j);
    return kOk;
  }
  write_json_file(op.out, j);
  if (cfg.json) {
    emit(Json{{"kind", "op_result"}, {"op", op.name}, {"output", op.out}, {"result_kind", j["kind"]}});
  } else {
    std::printf("wrote %s to %s\n", j["kind"].get<std::string>().c_str(), op.out.c_str());
  }
  return kOk;
}

int report_check(const RunConfig& cfg, const std::string& what, bool ok, double residual, Json extra = {}) {
  if (cfg.json) {
    Json j{{"kind", "check"}, {"check", what}, {"ok", ok}, {"residual", round9(residual)}};
    if (extra.is_object()) j.update(extra);
    emit(j);
  } else {
    std::printf("%s %s\nresidual %s\n", what.c_str(), ok ? "ok" : "FAILED", g9(residual).c_str());
    if (extra.is_object()) {
      for (const auto& [k, v] : extra.items()) std::printf("%s %s\n", k.c_str(), v.dump().c_str());
    }
  }
  return ok ? kOk : kVerifyFail;
}

int run_check(const RunConfig& cfg, const std::string& what, const std::string& space, const std::string& file) {
  if (what == "indep") {
    if (space.empty() || file.empty()) throw InputError("check indep needs --space and --vectors");
    const OperatorSpace s = load_space(space);
    const auto vecs = vectors_from_json(read_json_file(file));
    const VerifyResult v = verify_independent_set(s, vecs, cfg.tol);
    return report_check(cfg, "independent_set", v.ok, v.residual,
                        Json{{"size", static_cast<int>(vecs.size())}});
  }
  if (what == "kl") {
    if (space.empty() || file.empty()) throw InputError("check kl needs --space and --projector");
    const OperatorSpace s = load_space(space);
    const ComplexMatrix p = matrix_artifact_from_json(read_json_file(file));
    const KlResult k = verify_kl_projector(s, p, cfg.tol);
    return report_check(cfg, "knill_laflamme", k.ok, k.residual, Json{{"code_dim", k.code_dim}});
  }
  if (what == "channel") {
    if (file.empty()) throw InputError("check channel needs --input");
    const Json j = read_json_file(file);
    const auto kraus = kraus_from_json(j);
    const double residual = trace_preservation_residual(kraus);
    const bool ok = residual <= cfg.tol * static_cast<double>(kraus.front().cols());
    return report_check(cfg, "channel", ok, residual,
                        ok ? Json::object() : Json{{"error", "NotTracePreserving"}});
  }
  throw InputError("unknown check " + what);
}

int run_suite(const RunConfig& cfg, const std::string& filter, int threads) {
  SuiteOptions opts;
  opts.filter = filter;
  opts.threads = threads;
  const SuiteReport report = run_paper_suite(opts);
  if (report.criteria.empty()) throw InputError("no criterion matches filter \"" + filter + "\"");
  if (cfg.json) {
    Json rows = Json::array();
    for (const auto& r : report.rows) {
      rows.push_back({{"criterion", r.criterion},
                      {"label", r.label},
                      {"expected", r.expected},
                      {"computed", r.computed},
                      {"tolerance", r.tolerance},
                      {"pass", r.pass}});
    }
    Json crits = Json::array();
    for (const auto& c : report.criteria) {
      crits.push_back({{"criterion", c.criterion},
                       {"name", c.name},
                       {"checks", c.checks},
                       {"failed", c.failed},
                       {"pass", c.pass()}});
    }
    emit(Json{{"kind", "paper_suite"}, {"pass", report.pass()}, {"criteria", crits}, {"rows", rows}});
  } else {
    std::printf("%-4s %-58s %-16s %-16s %-10s %s\n", "crit", "check", "expected", "computed", "tol", "result");
    for (const auto& r : report.rows) {
      std::printf("%-4d %-58s %-16s %-16s %-10s %s\n", r.criterion, r.label.c_str(), r.expected.c_str(),
                  r.computed.c_str(), r.tolerance.c_str(), r.pass ? "PASS" : "FAIL");
    }
    for (const auto& c : report.criteria) {
      std::printf("criterion %d (%s): %s, %d/%d checks\n", c.criterion, c.name.c_str(),
                  c.pass() ? "PASS" : "FAIL", c.checks - c.failed, c.checks);
    }
  }
  return report.pass() ? kOk : kVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lovász-type bounds and independence numbers for non-commutative graphs"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--tol", cfg.tol, "Solver and verification tolerance")->check(CLI::PositiveNumber);
  app.add_option("--max-iter", cfg.max_iter, "Interior-point iteration cap")->check(CLI::Range(1, 1 << 30));
  app.add_option("--seed", cfg.seed, "Seed for randomized searches");
  app.add_flag("--json", cfg.json, "Machine-readable output");

  std::string input, witness;
  auto* theta = app.add_subcommand("theta", "Lovász theta of a classical graph");
  theta->add_option("--input,-i", input, "Graph file")->required();
  theta->add_option("--witness", witness, "Write the witness to this file");

  bool primal_only = false, dual_only = false;
  auto* tilde = app.add_subcommand("theta-tilde", "Quantum Lovász theta of a space, channel or graph");
  tilde->add_option("--input,-i", input, "Input file")->required();
  tilde->add_flag("--primal-only", primal_only, "Solve only the primal program");
  tilde->add_flag("--dual-only", dual_only, "Solve only the dual program");
  tilde->add_option("--witness", witness, "Write the witness to this file");

  std::string mode = "bracket";
  std::optional<int> target;
  auto* alpha = app.add_subcommand("alpha", "Independence number: exact for graphs, bracket for spaces");
  alpha->add_option("--input,-i", input, "Input file")->required();
  alpha->add_option("--mode", mode, "brute or bracket")->check(CLI::IsMember({"brute", "bracket"}));
  alpha->add_option("--target", target, "Also search for an independent set of this size");

  OpArgs op;
  auto* ops = app.add_subcommand("op", "Graph and space operations");
  ops->add_option("name", op.name, "product, dsum, cunion, intersect, complement, distance or induced")
      ->required()
      ->check(CLI::IsMember({"product", "dsum", "cunion", "intersect", "complement", "distance", "induced"}));
  ops->add_option("-a,--a", op.a, "First operand");
  ops->add_option("-b,--b", op.b, "Second operand");
  ops->add_option("-o,--output", op.out, "Output file (stdout if omitted)");
  ops->add_option("--t", op.t, "Distance exponent");
  ops->add_option("--isometry", op.isometry, "Isometry matrix file");

  std::string check_what, space, file;
  auto* check = app.add_subcommand("check", "Verify independent sets, codes and channels");
  check->add_option("what", check_what, "indep, kl or channel")
      ->required()
      ->check(CLI::IsMember({"indep", "kl", "channel"}));
  check->add_option("--space", space, "Space, graph or channel file");
  check->add_option("--vectors", file, "Independent-set file");
  check->add_option("--projector", file, "Projector matrix file");
  check->add_option("--input,-i", file, "Channel file");

  std::string filter;
  int threads = 0;
  auto* suite = app.add_subcommand("paper-suite", "Run the worked examples and consistency checks");
  suite->add_option("--filter", filter, "Only criteria whose name or tags contain this");
  suite->add_option("--threads", threads, "Worker threads (0: all cores)")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*theta) return run_theta(cfg, input, witness);
    if (*tilde) return run_theta_tilde(cfg, input, primal_only, dual_only, witness);
    if (*alpha) return run_alpha(cfg, input, mode, target);
    if (*ops) return run_op(cfg, op);
    if (*check) return run_check(cfg, check_what, space, file);
    if (*suite) return run_suite(cfg, filter, threads);
  } catch (const SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolverFailure;
  } catch (const GapTooLarge& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolverFailure;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    // Parse errors, shape mismatches, non-projectors, size caps.
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
