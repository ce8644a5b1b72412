#include "ncgraph/theta.hpp"

#include "ncgraph/independence.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ncg {

GapTooLarge::GapTooLarge(double p, double d)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "theta_tilde: primal " << p << " and dual " << d << " disagree";
        return os.str();
      }()),
      primal(p),
      dual(d) {}

std::vector<ComplexMatrix> hermitian_unit_basis(Eigen::Index d) {
  std::vector<ComplexMatrix> out;
  out.reserve(d * d);
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  for (Eigen::Index p = 0; p < d; ++p) out.push_back(matrix_unit(d, d, p, p));
  for (Eigen::Index p = 0; p < d; ++p) {
    for (Eigen::Index q = p + 1; q < d; ++q) {
      const ComplexMatrix epq = matrix_unit(d, d, p, q), eqp = matrix_unit(d, d, q, p);
      out.push_back(r * (epq + eqp));
      out.push_back(r * i * (epq - eqp));
    }
  }
  return out;
}

std::vector<ComplexMatrix> traceless_hermitian_basis(Eigen::Index d) {
  std::vector<ComplexMatrix> out;
  out.reserve(d * d - 1);
  // Off-diagonal part of the unit basis plus generalized Gell-Mann diagonals.
  const auto units = hermitian_unit_basis(d);
  for (std::size_t k = static_cast<std::size_t>(d); k < units.size(); ++k) out.push_back(units[k]);
  for (Eigen::Index k = 1; k < d; ++k) {
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    for (Eigen::Index l = 0; l < k; ++l) m(l, l) = 1.0;
    m(k, k) = -static_cast<double>(k);
    out.push_back(m / std::sqrt(static_cast<double>(k * (k + 1))));
  }
  return out;
}

namespace {

void require_nc_graph(const OperatorSpace& s, const char* who) {
  if (!is_nc_graph(s)) throw std::invalid_argument(std::string(who) + ": not a non-commutative graph");
}

void record(SolverStats& stats, const LmiProblem& p, const LmiSolution& sol) {
  const Validation v = validate(p, sol.y);
  double lo = std::numeric_limits<double>::infinity();
  for (double e : v.min_block_eigs) lo = std::min(lo, e);
  stats.min_validated_eig = stats.solves == 0 ? lo : std::min(stats.min_validated_eig, lo);
  stats.max_solver_gap = std::max(stats.max_solver_gap, sol.gap);
  stats.iterations += sol.iterations;
  ++stats.solves;
}

ThetaResult trivial_result() {
  ThetaResult r;
  r.value = 1.0;
  r.primal_value = 1.0;
  r.dual_value = 1.0;
  r.witness.y = ComplexMatrix::Ones(1, 1);
  return r;
}

double lambda_min(const ComplexMatrix& h) { return eigvalsh(h)(0); }

}  // namespace

ThetaDualProgram theta_dual_program(const OperatorSpace& s) {
  require_nc_graph(s, "theta_dual_program");
  const Eigen::Index d = s.ambient_dim();
  const auto hs = hermitian_basis(s);
  const auto gs = hermitian_unit_basis(d);
  const Eigen::Index m = 1 + static_cast<Eigen::Index>(hs.size() * gs.size());

  ThetaDualProgram prog;
  prog.lmi = LmiProblem(m, Sense::Minimize);
  prog.lmi.objective(0) = 1.0;

  LmiBlock psd(2 * d * d, m);  // Y − Φ ⪰ 0
  LmiBlock norm(2 * d, m);     // t·1 − tr_A Y ⪰ 0
  psd.f0 = -real_embed(max_entangled(d).projector);
  norm.set_coeff(0, RealMatrix::Identity(2 * d, 2 * d));

  Eigen::Index var = 1;
  for (const auto& h : hs) {
    const Complex tr = h.trace();
    for (const auto& g : gs) {
      ComplexMatrix term = kron(h, g);
      psd.set_coeff(var, real_embed(term));
      if (std::abs(tr) > 1e-14) norm.set_coeff(var, -tr.real() * real_embed(g));
      prog.y_terms.push_back(std::move(term));
      ++var;
    }
  }
  prog.lmi.blocks.push_back(std::move(psd));
  prog.lmi.blocks.push_back(std::move(norm));
  return prog;
}

ThetaPrimalProgram theta_primal_program(const OperatorSpace& s) {
  require_nc_graph(s, "theta_primal_program");
  const Eigen::Index d = s.ambient_dim();
  const auto ks = hermitian_basis(orth_complement(s));
  const auto gs = hermitian_unit_basis(d);

  ThetaPrimalProgram prog;
  prog.rho_terms = traceless_hermitian_basis(d);
  const Eigen::Index r = static_cast<Eigen::Index>(prog.rho_terms.size());
  const Eigen::Index m = r + static_cast<Eigen::Index>(ks.size() * gs.size());
  prog.lmi = LmiProblem(m, Sense::Maximize);

  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  LmiBlock rho(2 * d, m);       // ρ ⪰ 0
  LmiBlock joint(2 * d * d, m);  // 1⊗ρ + T' ⪰ 0
  rho.f0 = RealMatrix::Identity(2 * d, 2 * d) / static_cast<double>(d);
  joint.f0 = RealMatrix::Identity(2 * d * d, 2 * d * d) / static_cast<double>(d);
  for (Eigen::Index k = 0; k < r; ++k) {
    rho.set_coeff(k, real_embed(prog.rho_terms[k]));
    joint.set_coeff(k, real_embed(kron(id, prog.rho_terms[k])));
  }
  Eigen::Index var = r;
  for (const auto& k : ks) {
    for (const auto& g : gs) {
      ComplexMatrix term = kron(k, g);
      joint.set_coeff(var, real_embed(term));
      // ⟨Φ|K⊗G|Φ⟩ = Σ_ij K_ij G_ij
      prog.lmi.objective(var) = k.cwiseProduct(g).sum().real();
      prog.t_terms.push_back(std::move(term));
      ++var;
    }
  }
  prog.lmi.blocks.push_back(std::move(rho));
  prog.lmi.blocks.push_back(std::move(joint));
  return prog;
}

LmiProblem theta_classical_program(const Graph& g) {
  const int n = g.n();
  const auto edges = g.edges();
  const Eigen::Index m = 1 + n + static_cast<Eigen::Index>(edges.size());
  LmiProblem p(m, Sense::Minimize);
  p.objective(0) = 1.0;

  LmiBlock y(n, m);  // Y − J ⪰ 0
  y.f0 = -RealMatrix::Ones(n, n);
  for (int x = 0; x < n; ++x) {
    RealMatrix e = RealMatrix::Zero(n, n);
    e(x, x) = 1.0;
    y.set_coeff(1 + x, e);
  }
  for (std::size_t k = 0; k < edges.size(); ++k) {
    RealMatrix e = RealMatrix::Zero(n, n);
    e(edges[k].first, edges[k].second) = 1.0;
    e(edges[k].second, edges[k].first) = 1.0;
    y.set_coeff(1 + n + static_cast<Eigen::Index>(k), e);
  }
  p.blocks.push_back(std::move(y));
  for (int x = 0; x < n; ++x) {  // t − Y_xx ≥ 0
    LmiBlock b(1, m);
    b.set_coeff(0, RealMatrix::Ones(1, 1));
    b.set_coeff(1 + x, -RealMatrix::Ones(1, 1));
    p.blocks.push_back(std::move(b));
  }
  return p;
}

ThetaResult theta_tilde_dual(const OperatorSpace& s, const SolverOptions& opts) {
  require_nc_graph(s, "theta_tilde_dual");
  const Eigen::Index d = s.ambient_dim();
  if (d == 1) return trivial_result();

  const ThetaDualProgram prog = theta_dual_program(s);
  const LmiSolution sol = solve(prog.lmi, opts);
  if (sol.status != SolveStatus::Optimal) throw SolverFailure("theta_tilde_dual", sol.status);

  ThetaResult r;
  record(r.stats, prog.lmi, sol);
  ComplexMatrix y = ComplexMatrix::Zero(d * d, d * d);
  for (std::size_t i = 0; i < prog.y_terms.size(); ++i) y += sol.y(1 + i) * prog.y_terms[i];
  y = (y + y.adjoint()).eval() / 2.0;
  // Y + ε1 stays in S⊗L(A') and dominates Φ, at a cost of dε in the norm.
  const double eps = std::max(0.0, -lambda_min(y - max_entangled(d).projector));
  const ComplexMatrix reduced = partial_trace(y, d, d, TraceSide::TraceOutA);
  r.value = eigvalsh(reduced).maxCoeff() + static_cast<double>(d) * eps;
  r.dual_value = r.value;
  r.gap = sol.gap;
  r.witness.y = std::move(y);
  return r;
}

ThetaResult theta_tilde_primal(const OperatorSpace& s, const SolverOptions& opts) {
  require_nc_graph(s, "theta_tilde_primal");
  const Eigen::Index d = s.ambient_dim();
  if (d == 1) {
    ThetaResult r = trivial_result();
    r.witness = ThetaWitness{std::nullopt, ComplexMatrix::Ones(1, 1), ComplexMatrix::Zero(1, 1)};
    return r;
  }

  const ThetaPrimalProgram prog = theta_primal_program(s);
  const LmiSolution sol = solve(prog.lmi, opts);
  if (sol.status != SolveStatus::Optimal) throw SolverFailure("theta_tilde_primal", sol.status);

  ThetaResult r;
  record(r.stats, prog.lmi, sol);
  const Eigen::Index nr = static_cast<Eigen::Index>(prog.rho_terms.size());
  ComplexMatrix rho = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
  for (Eigen::Index k = 0; k < nr; ++k) rho += sol.y(k) * prog.rho_terms[k];
  ComplexMatrix tp = ComplexMatrix::Zero(d * d, d * d);
  double v = 1.0;
  for (std::size_t j = 0; j < prog.t_terms.size(); ++j) {
    const double c = sol.y(nr + static_cast<Eigen::Index>(j));
    tp += c * prog.t_terms[j];
    v += c * prog.lmi.objective(nr + static_cast<Eigen::Index>(j));
  }
  // Mix with the interior point (1/d, 0), whose blocks have λ_min = 1/d and
  // objective 1, just enough to restore feasibility.
  const ComplexMatrix joint = kron(ComplexMatrix::Identity(d, d), rho) + tp;
  const double eps = std::max({0.0, -lambda_min(rho), -lambda_min(joint)});
  const double theta = eps / (eps + 1.0 / static_cast<double>(d));
  r.value = (1.0 - theta) * v + theta;
  r.primal_value = r.value;
  r.gap = sol.gap;
  r.witness.rho = std::move(rho);
  r.witness.t_prime = std::move(tp);
  return r;
}

ThetaResult theta_tilde(const OperatorSpace& s, const SolverOptions& opts) {
  ThetaResult dual = theta_tilde_dual(s, opts);
  const ThetaResult primal = theta_tilde_primal(s, opts);
  const double p = *primal.primal_value, v = *dual.dual_value;
  if (std::abs(p - v) > 1e-4 * (1.0 + v)) throw GapTooLarge(p, v);
  dual.primal_value = p;
  dual.gap = std::abs(p - v) / (1.0 + v);
  dual.witness.rho = primal.witness.rho;
  dual.witness.t_prime = primal.witness.t_prime;
  dual.stats.solves += primal.stats.solves;
  dual.stats.iterations += primal.stats.iterations;
  dual.stats.min_validated_eig = std::min(dual.stats.min_validated_eig, primal.stats.min_validated_eig);
  dual.stats.max_solver_gap = std::max(dual.stats.max_solver_gap, primal.stats.max_solver_gap);
  return dual;
}

ThetaResult theta_classical(const Graph& g, const SolverOptions& opts) {
  const int n = g.n();
  if (n < 1) throw std::invalid_argument("theta_classical: empty vertex set");
  if (n == 1) return trivial_result();

  const LmiProblem p = theta_classical_program(g);
  const LmiSolution sol = solve(p, opts);
  if (sol.status != SolveStatus::Optimal) throw SolverFailure("theta_classical", sol.status);

  ThetaResult r;
  record(r.stats, p, sol);
  RealMatrix y = RealMatrix::Zero(n, n);
  for (int x = 0; x < n; ++x) y(x, x) = sol.y(1 + x);
  const auto edges = g.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const double w = sol.y(1 + n + static_cast<Eigen::Index>(k));
    y(edges[k].first, edges[k].second) = w;
    y(edges[k].second, edges[k].first) = w;
  }
  // Y + ε1 is still supported on S and dominates J.
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(y - RealMatrix::Ones(n, n), Eigen::EigenvaluesOnly);
  const double eps = std::max(0.0, -es.eigenvalues()(0));
  r.value = y.diagonal().maxCoeff() + eps;
  r.dual_value = r.value;
  r.primal_value = sol.bound;
  r.gap = sol.gap;
  r.witness.y = y.cast<Complex>();
  return r;
}

NaiveResult theta_naive_lower(const OperatorSpace& s, const NaiveOptions& opts) {
  require_nc_graph(s, "theta_naive_lower");
  const Eigen::Index d = s.ambient_dim();
  NaiveResult best;
  best.t = ComplexMatrix::Zero(d, d);
  best.trace = {1.0};
  const auto ks = hermitian_basis(orth_complement(s));
  if (ks.empty()) return best;

  const Eigen::Index m = static_cast<Eigen::Index>(ks.size());
  LmiProblem p(m, Sense::Maximize);
  LmiBlock b(2 * d, m);  // 1 + T ⪰ 0
  b.f0 = RealMatrix::Identity(2 * d, 2 * d);
  for (Eigen::Index j = 0; j < m; ++j) b.set_coeff(j, real_embed(ks[j]));
  p.blocks.push_back(std::move(b));

  std::vector<ComplexVector> seeds = opts.extra_seeds;
  seeds.push_back(ComplexVector::Ones(d) / std::sqrt(static_cast<double>(d)));
  const auto root = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(d))));
  if (root * root == d && root > 1) {
    seeds.push_back(max_entangled(root).vector / std::sqrt(static_cast<double>(root)));
  }
  Rng rng(opts.seed);
  for (int k = 0; k < opts.restarts; ++k) seeds.push_back(random_unit_vector(d, rng));

  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  for (ComplexVector phi : seeds) {
    if (phi.size() != d) throw DimensionError("theta_naive_lower: seed has wrong length");
    phi.normalize();
    std::vector<double> trace;
    double run_best = 0.0;
    ComplexMatrix run_t = ComplexMatrix::Zero(d, d);
    for (int it = 0; it < opts.iters; ++it) {
      for (Eigen::Index j = 0; j < m; ++j) p.objective(j) = phi.dot(ks[j] * phi).real();
      const LmiSolution sol = solve(p, opts.solver);
      if (sol.status != SolveStatus::Optimal) break;
      ComplexMatrix t = ComplexMatrix::Zero(d, d);
      for (Eigen::Index j = 0; j < m; ++j) t += sol.y(j) * ks[j];
      t = (t + t.adjoint()).eval() / 2.0;
      const EigDecomposition e = eigh(id + t);
      // Shrink T until 1 + T ⪰ 0 holds exactly.
      const double eps = std::max(0.0, -e.eigenvalues(0));
      const double value = 1.0 + (e.eigenvalues(d - 1) - 1.0) / (1.0 + eps);
      trace.push_back(value);
      const bool improved = value > run_best + 1e-9 * (1.0 + value);
      if (value > run_best) {
        run_best = value;
        run_t = t / (1.0 + eps);
      }
      if (!improved) break;
      phi = e.eigenvectors.col(d - 1);
    }
    if (run_best > best.value) {
      best.value = run_best;
      best.t = std::move(run_t);
      best.trace = std::move(trace);
    }
  }
  return best;
}

ComplexMatrix identity_witness(Eigen::Index d) {
  if (d < 1) throw DimensionError("identity_witness: d must be positive");
  return static_cast<double>(d) * max_entangled(d).projector - ComplexMatrix::Identity(d * d, d * d);
}

CapacityReport capacity_report(const OperatorSpace& s, const SolverOptions& opts) {
  CapacityReport r;
  r.theta_tilde = theta_tilde(s, opts).value;
  r.c0e_upper = std::log2(r.theta_tilde);
  r.alpha_lower = best_alpha_lower(s).size;
  r.c0_single_letter_lower = std::log2(static_cast<double>(r.alpha_lower));
  return r;
}

}  // namespace ncg
