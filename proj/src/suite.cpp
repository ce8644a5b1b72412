#include "ncgraph/suite.hpp"

#include "ncgraph/channel.hpp"
#include "ncgraph/graph.hpp"
#include "ncgraph/independence.hpp"
#include "ncgraph/theta.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <thread>

namespace ncg {

namespace examples {

OperatorSpace delta_perp(Eigen::Index d) {
  ComplexMatrix delta = -ComplexMatrix::Identity(d, d);
  delta(0, 0) = static_cast<double>(d - 1);
  const std::vector<ComplexMatrix> one{delta};
  return orth_complement(span(one));
}

OperatorSpace duan(Eigen::Index d) {
  const OperatorSpace id2 = identity_space(2);
  const OperatorSpace diag = tensor(id2, identity_space(d));
  const OperatorSpace off = tensor(orth_complement(id2), full_space(d));
  std::vector<ComplexMatrix> gens = diag.basis();
  gens.insert(gens.end(), off.basis().begin(), off.basis().end());
  return span(gens);
}

OperatorSpace dephasing_qubit() { return confusability(dephasing_channel(2)); }

}  // namespace examples

bool SuiteReport::pass() const {
  return !criteria.empty() &&
         std::all_of(criteria.begin(), criteria.end(), [](const CriterionSummary& c) { return c.pass(); });
}

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Rows {
  int criterion = 0;
  std::vector<SuiteRow> rows;

  void close(const std::string& label, double expected, double computed, double tol) {
    rows.push_back({criterion, label, fmt(expected), fmt(computed), fmt(tol),
                    std::abs(computed - expected) <= tol});
  }
  // computed ≤ bound + slack
  void at_most(const std::string& label, double computed, double bound, double slack) {
    rows.push_back({criterion, label, "<= " + fmt(bound), fmt(computed), fmt(slack),
                    computed <= bound + slack});
  }
  void at_least(const std::string& label, double computed, double bound, double slack) {
    rows.push_back({criterion, label, ">= " + fmt(bound), fmt(computed), fmt(slack),
                    computed >= bound - slack});
  }
  void exact(const std::string& label, long expected, long computed) {
    rows.push_back({criterion, label, std::to_string(expected), std::to_string(computed), "0",
                    expected == computed});
  }
  void truth(const std::string& label, bool ok, const std::string& computed) {
    rows.push_back({criterion, label, "true", computed, "-", ok});
  }
  void error(const std::string& label, const std::string& what) {
    rows.push_back({criterion, label, "-", "error: " + what, "-", false});
  }
  void append(Rows&& other) {
    for (auto& r : other.rows) rows.push_back(std::move(r));
  }
};

// Solver health over every ϑ computation in the run.
struct Health {
  std::mutex mu;
  int solves = 0;
  double min_eig = std::numeric_limits<double>::infinity();
  double max_gap = 0.0;

  void record(const ThetaResult& r) {
    std::lock_guard<std::mutex> lock(mu);
    solves += r.stats.solves;
    if (r.stats.solves > 0) min_eig = std::min(min_eig, r.stats.min_validated_eig);
    max_gap = std::max(max_gap, r.gap);
  }
};

struct Context {
  int threads = 1;
  Health health;

  double tilde(const OperatorSpace& s) {
    const ThetaResult r = theta_tilde(s);
    health.record(r);
    return r.value;
  }
  double classical(const Graph& g) {
    const ThetaResult r = theta_classical(g);
    health.record(r);
    return r.value;
  }
};

// Runs f(i, rows_i) for i in [0, count) on a pool and concatenates in index order.
void parallel_rows(Context& ctx, Rows& out, int count, const std::function<void(int, Rows&)>& f) {
  std::vector<Rows> parts(count);
  for (auto& p : parts) p.criterion = out.criterion;
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        f(i, parts[i]);
      } catch (const std::exception& e) {
        parts[i].error("item " + std::to_string(i), e.what());
      }
    }
  };
  const int n = std::max(1, std::min(ctx.threads, count));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& p : parts) out.append(std::move(p));
}

template <typename F>
void guarded(Rows& rows, const std::string& label, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    rows.error(label, e.what());
  }
}

// Random nc-graph of ambient dimension d with a seed-chosen dimension.
OperatorSpace seeded_space(Eigen::Index d, std::uint64_t seed) {
  Rng rng(seed * 7919 + 17);
  std::uniform_int_distribution<int> dim(1, static_cast<int>(d * d));
  return random_nc_graph(d, dim(rng), seed);
}

Graph seeded_graph(int n, std::uint64_t seed) {
  Rng rng(seed * 104729 + 3);
  std::uniform_real_distribution<double> p(0.1, 0.9);
  return erdos_renyi(n, p(rng), seed);
}

void pentagon(Context& ctx, Rows& rows) {
  const auto t0 = Clock::now();
  const double root5 = std::sqrt(5.0);
  const Graph c5 = cycle_graph(5);
  guarded(rows, "theta_classical(C5)", [&] { rows.close("theta_classical(C5)", root5, ctx.classical(c5), 1e-5); });
  guarded(rows, "theta_tilde(C5 space)", [&] {
    rows.close("theta_tilde(C5 space)", root5, ctx.tilde(to_operator_space(c5)), 1e-5);
  });
  rows.exact("alpha_brute(C5)", 2, alpha_brute(c5).size);
  rows.exact("alpha_brute(C5 strong-square)", 5, alpha_brute(strong_product(c5, c5)).size);
  rows.at_most("pentagon runtime [s]", seconds_since(t0), 5.0, 0.0);
}

void identity_channel_rows(Context& ctx, Rows& rows) {
  for (Eigen::Index d : {2, 3}) {
    const std::string label = "theta_tilde(span{1_" + std::to_string(d) + "})";
    guarded(rows, label, [&] {
      rows.close(label, static_cast<double>(d * d), ctx.tilde(identity_space(d)), 1e-4);
    });
  }
  for (Eigen::Index d = 1; d <= 4; ++d) {
    const std::string tag = "identity_witness(" + std::to_string(d) + ")";
    const ComplexMatrix t = identity_witness(d);
    const ComplexMatrix one = ComplexMatrix::Identity(d * d, d * d);
    const OperatorSpace perp = tensor(orth_complement(identity_space(d)), full_space(d));
    rows.at_most(tag + " membership residual", (t - perp.project(t)).norm(), 0.0, 1e-9);
    rows.at_least(tag + " min eig(1+T)", eigvalsh(one + t)(0), 0.0, 1e-9);
    rows.close(tag + " norm(1+T)", static_cast<double>(d * d), operator_norm(one + t), 1e-9);
  }
}

void complete_rows(Context& ctx, Rows& rows) {
  for (Eigen::Index d : {2, 3, 4}) {
    const std::string label = "theta_tilde(L(C^" + std::to_string(d) + "))";
    guarded(rows, label, [&] { rows.close(label, 1.0, ctx.tilde(full_space(d)), 1e-6); });
  }
}

void dephasing_rows(Context& ctx, Rows& rows) {
  const OperatorSpace s = examples::dephasing_qubit();
  guarded(rows, "theta_tilde(span{1,Z})", [&] {
    rows.close("theta_tilde(span{1,Z})", 2.0, ctx.tilde(s), 1e-5);
  });
  guarded(rows, "bounds(span{1,Z}).alpha_lower", [&] {
    const BoundsReport b = bounds(s);
    rows.exact("bounds(span{1,Z}).alpha_lower", 2, b.alpha_lower);
  });
}

void delta_rows(Context& ctx, Rows& rows) {
  for (Eigen::Index d : {3, 4}) {
    const std::string tag = "Delta-perp d=" + std::to_string(d);
    const OperatorSpace s = examples::delta_perp(d);
    guarded(rows, tag + " theta_tilde", [&] {
      rows.close(tag + " theta_tilde", static_cast<double>(d), ctx.tilde(s), 1e-4);
    });
    rows.exact(tag + " alpha_hat_upper", 2, alpha_hat_upper(s));
    rows.exact(tag + " pair_dim_upper", 1, pair_dim_upper(s));
  }
}

void duan_rows(Context& ctx, Rows& rows) {
  const auto t0 = Clock::now();
  const OperatorSpace s = examples::duan(2);
  guarded(rows, "theta_tilde(Duan, d=2)", [&] {
    rows.close("theta_tilde(Duan, d=2)", 4.0, ctx.tilde(s), 1e-3);
  });
  rows.at_most("Duan runtime [s]", seconds_since(t0), 60.0, 0.0);
}

void multiplicativity_rows(Context& ctx, Rows& rows) {
  // Ambient pairs with d1·d2 ≤ 6; see the README for why (3, 3) is left out.
  static const std::pair<Eigen::Index, Eigen::Index> shapes[] = {{2, 2}, {2, 3}, {3, 2}};
  parallel_rows(ctx, rows, 20, [&](int i, Rows& out) {
    const auto [d1, d2] = shapes[i % 3];
    const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(i);
    const OperatorSpace s1 = seeded_space(d1, seed), s2 = seeded_space(d2, seed + 500);
    const double a = ctx.tilde(s1), b = ctx.tilde(s2);
    const double prod = ctx.tilde(tensor(s1, s2));
    out.close("pair " + std::to_string(i) + " (d=" + std::to_string(d1) + "x" + std::to_string(d2) +
                  ") theta_tilde(S1 x S2)",
              a * b, prod, 1e-3 * (1.0 + a * b));
  });
}

void additivity_rows(Context& ctx, Rows& rows) {
  parallel_rows(ctx, rows, 20, [&](int i, Rows& out) {
    const std::uint64_t seed = 2000 + static_cast<std::uint64_t>(i);
    const Eigen::Index d1 = 2 + i % 2, d2 = 2 + (i / 2) % 2;
    const OperatorSpace s1 = seeded_space(d1, seed), s2 = seeded_space(d2, seed + 500);
    const double a = ctx.tilde(s1), b = ctx.tilde(s2);
    const std::string tag = "pair " + std::to_string(i);
    out.close(tag + " theta_tilde(S + S')", a + b, ctx.tilde(direct_sum(s1, s2)), 1e-4);
    out.close(tag + " theta_tilde(S [+] S')", std::max(a, b), ctx.tilde(complete_union(s1, s2)), 1e-4);
  });
  parallel_rows(ctx, rows, 20, [&](int i, Rows& out) {
    const std::uint64_t seed = 3000 + static_cast<std::uint64_t>(i);
    const Graph g = seeded_graph(1 + i % 6, seed), h = seeded_graph(1 + (i * 5 + 2) % 6, seed + 1);
    const double a = ctx.classical(g), b = ctx.classical(h);
    const std::string tag = "graph pair " + std::to_string(i);
    out.close(tag + " theta(G + H)", a + b, ctx.classical(disjoint_union(g, h)), 1e-4);
    out.close(tag + " theta(G [+] H)", std::max(a, b), ctx.classical(join(g, h)), 1e-4);
  });
}

void classical_consistency_rows(Context& ctx, Rows& rows) {
  const auto t0 = Clock::now();
  std::vector<Graph> graphs;
  for (int n = 1; n <= 6; ++n) {
    for (auto& g : nonisomorphic_graphs(n)) graphs.push_back(std::move(g));
  }
  Rows items;
  items.criterion = rows.criterion;
  parallel_rows(ctx, items, static_cast<int>(graphs.size()), [&](int i, Rows& out) {
    const Graph& g = graphs[i];
    const double a = ctx.classical(g), b = ctx.tilde(to_operator_space(g));
    out.close("graph " + std::to_string(i) + " (n=" + std::to_string(g.n()) + ", m=" +
                  std::to_string(g.edge_count()) + ")",
              a, b, 1e-5);
  });
  rows.exact("non-isomorphic graphs with n = 6", 156, nonisomorphic_graphs(6).size());
  rows.append(std::move(items));
  rows.at_most("classical consistency runtime [s]", seconds_since(t0), 600.0, 0.0);
}

struct CorpusEntry {
  std::string name;
  OperatorSpace space;
};

std::vector<CorpusEntry> corpus() {
  std::vector<CorpusEntry> c;
  c.push_back({"C5", to_operator_space(cycle_graph(5))});
  c.push_back({"P4", to_operator_space(path_graph(4))});
  c.push_back({"empty(3)", to_operator_space(empty_graph(3))});
  c.push_back({"span{1_2}", identity_space(2)});
  c.push_back({"span{1_3}", identity_space(3)});
  c.push_back({"L(C^2)", full_space(2)});
  c.push_back({"L(C^3)", full_space(3)});
  c.push_back({"span{1,Z}", examples::dephasing_qubit()});
  c.push_back({"Delta-perp(3)", examples::delta_perp(3)});
  c.push_back({"Delta-perp(4)", examples::delta_perp(4)});
  c.push_back({"Duan(2)", examples::duan(2)});
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const Eigen::Index d = 2 + static_cast<Eigen::Index>(seed % 2);
    c.push_back({"random(d=" + std::to_string(d) + ", seed=" + std::to_string(seed) + ")",
                 seeded_space(d, 4000 + seed)});
  }
  return c;
}

void bound_chain_rows(Context& ctx, Rows& rows) {
  const auto entries = corpus();
  parallel_rows(ctx, rows, static_cast<int>(entries.size()), [&](int i, Rows& out) {
    const auto& e = entries[i];
    const BoundsReport b = bounds(e.space);
    const double lo = b.alpha_lower;
    out.at_most(e.name + " alpha_lower <= floor(theta_tilde + 1e-6)", lo, b.alpha_tilde_upper, 0.0);
    out.at_most(e.name + " alpha_lower <= pair_dim_upper", lo, b.pair_dim_upper, 0.0);
    out.at_most(e.name + " alpha_lower <= alpha_hat_upper", lo, b.alpha_hat_upper, 0.0);
  });
  parallel_rows(ctx, rows, 50, [&](int i, Rows& out) {
    const Graph g = seeded_graph(2 + i % 9, 5000 + static_cast<std::uint64_t>(i));
    const int alpha = alpha_brute(g).size;
    out.at_most("random graph " + std::to_string(i) + " (n=" + std::to_string(g.n()) + ") alpha <= theta",
                alpha, ctx.classical(g), 1e-6);
  });
}

void monotonicity_rows(Context& ctx, Rows& rows) {
  parallel_rows(ctx, rows, 20, [&](int i, Rows& out) {
    const std::uint64_t seed = 6000 + static_cast<std::uint64_t>(i);
    const Eigen::Index d = 2 + i % 2;
    Rng rng(seed);
    std::uniform_int_distribution<int> dim(1, static_cast<int>(d * d) - 1);
    const OperatorSpace s = random_nc_graph(d, dim(rng), seed);
    std::uniform_int_distribution<int> extra(1, static_cast<int>(d * d - s.dim()));
    const OperatorSpace sup = random_supergraph(s, extra(rng), seed + 1);
    out.at_least("nested pair " + std::to_string(i) + " theta_tilde(S) >= theta_tilde(S')", ctx.tilde(s),
                 ctx.tilde(sup), 1e-5);
  });
  parallel_rows(ctx, rows, 20, [&](int i, Rows& out) {
    const std::uint64_t seed = 7000 + static_cast<std::uint64_t>(i);
    const Eigen::Index d = 2 + i % 2;
    const OperatorSpace s = seeded_space(d, seed);
    Rng rng(seed);
    std::uniform_int_distribution<int> d0(1, static_cast<int>(d));
    const ComplexMatrix u = random_isometry(d, d0(rng), rng);
    out.at_most("isometry " + std::to_string(i) + " theta_tilde(U*SU) <= theta_tilde(S)",
                ctx.tilde(induced_subgraph(s, u)), ctx.tilde(s), 1e-5);
  });
}

void solver_rows(Context& ctx, Rows& rows) {
  // A standalone corpus so the health rows mean something under --filter.
  parallel_rows(ctx, rows, 12, [&](int i, Rows&) {
    if (i < 6) {
      ctx.tilde(seeded_space(2 + i % 2, 8000 + static_cast<std::uint64_t>(i)));
    } else {
      ctx.classical(seeded_graph(4 + i % 5, 8000 + static_cast<std::uint64_t>(i)));
    }
  });
  Rng rng(12);
  std::normal_distribution<double> gauss;
  double worst = 0.0;
  int optimal = 0;
  for (int k = 0; k < 100; ++k) {
    const int n = 2 + k % 9;
    RealMatrix a(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
    }
    a = (a + a.transpose()).eval() / 2.0;
    LmiProblem p(1, Sense::Minimize);
    p.objective(0) = 1.0;
    LmiBlock b(n, 1);
    b.f0 = -a;
    b.set_coeff(0, RealMatrix::Identity(n, n));
    p.blocks.push_back(std::move(b));
    const LmiSolution sol = solve(p);
    if (sol.status != SolveStatus::Optimal) continue;
    ++optimal;
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(a, Eigen::EigenvaluesOnly);
    worst = std::max(worst, std::abs(sol.value - es.eigenvalues()(n - 1)));
  }
  std::lock_guard<std::mutex> lock(ctx.health.mu);
  rows.exact("lambda_max instances solved to Optimal", 100, optimal);
  rows.at_most("lambda_max max |solver - eigh|", worst, 0.0, 1e-7);
  rows.at_least("min validated block eigenvalue over " + std::to_string(ctx.health.solves) + " solves",
                ctx.health.min_eig, 0.0, 1e-8);
  rows.at_most("max relative primal/dual gap", ctx.health.max_gap, 0.0, 1e-5);
}

struct Criterion {
  int id;
  const char* name;
  const char* tags;
  void (*run)(Context&, Rows&);
};

const Criterion kCriteria[] = {
    {1, "pentagon", "pentagon C5 classical alpha", pentagon},
    {2, "identity channel", "identity superdense witness", identity_channel_rows},
    {3, "complete graph", "complete", complete_rows},
    {4, "dephasing qubit", "dephasing", dephasing_rows},
    {5, "Delta example", "delta", delta_rows},
    {6, "Duan channel graph", "duan", duan_rows},
    {7, "multiplicativity", "multiplicativity product", multiplicativity_rows},
    {8, "additivity and complete union", "additivity union", additivity_rows},
    {9, "classical consistency", "classical consistency", classical_consistency_rows},
    {10, "bound chain", "bounds chain alpha", bound_chain_rows},
    {11, "monotonicity", "monotonicity subgraph isometry", monotonicity_rows},
    {12, "solver soundness", "solver sdp lmi", solver_rows},
};

bool matches(const Criterion& c, const std::string& filter) {
  if (filter.empty()) return true;
  const std::string hay = std::string(c.name) + " " + c.tags;
  return hay.find(filter) != std::string::npos;
}

}  // namespace

SuiteReport run_paper_suite(const SuiteOptions& opts) {
  Context ctx;
  ctx.threads = opts.threads > 0 ? opts.threads
                                 : std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  SuiteReport report;
  for (const auto& c : kCriteria) {
    if (!matches(c, opts.filter)) continue;
    Rows rows;
    rows.criterion = c.id;
    const auto t0 = Clock::now();
    try {
      c.run(ctx, rows);
    } catch (const std::exception& e) {
      rows.error(c.name, e.what());
    }
    CriterionSummary s;
    s.criterion = c.id;
    s.name = c.name;
    s.seconds = seconds_since(t0);
    s.checks = static_cast<int>(rows.rows.size());
    s.failed = static_cast<int>(
        std::count_if(rows.rows.begin(), rows.rows.end(), [](const SuiteRow& r) { return !r.pass; }));
    report.criteria.push_back(s);
    for (auto& r : rows.rows) report.rows.push_back(std::move(r));
  }
  return report;
}

}  // namespace ncg
