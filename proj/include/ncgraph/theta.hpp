// Lovász-type functions of classical and non-commutative graphs.
//
//   ϑ(G)   classical, via min { max_x Y_xx : Y ∈ S_G, Y ⪰ J }
//   ϑ̃(S)   quantum, via the primal and dual programs with |A'| = |A|
//   ϑ(S)   max { ‖1+T‖ : T ∈ S⊥, 1+T ⪰ 0 }, lower-bounded by alternating ascent
//
// Φ = Σ_i |ii⟩ is unnormalized throughout.
#pragma once

#include "ncgraph/graph.hpp"
#include "ncgraph/lmi.hpp"
#include "ncgraph/operator_space.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncg {

class SolverFailure : public std::runtime_error {
 public:
  SolverFailure(const std::string& what, SolveStatus status)
      : std::runtime_error(what + ": " + to_string(status)), status_(status) {}
  SolveStatus status() const { return status_; }

 private:
  SolveStatus status_;
};

class GapTooLarge : public std::runtime_error {
 public:
  GapTooLarge(double primal, double dual);
  double primal;
  double dual;
};

struct ThetaWitness {
  std::optional<ComplexMatrix> y;        // dual: Y ∈ S⊗L(A') with Y ⪰ Φ (classical: Y ⪰ J)
  std::optional<ComplexMatrix> rho;      // primal state on A'
  std::optional<ComplexMatrix> t_prime;  // primal T' ∈ S⊥⊗L(A')
};

struct SolverStats {
  int solves = 0;
  int iterations = 0;
  /// Smallest block eigenvalue over all solves, recomputed by validate().
  double min_validated_eig = 0.0;
  /// Largest relative gap reported by the solver over all solves.
  double max_solver_gap = 0.0;
};

struct ThetaResult {
  double value = 0.0;
  std::optional<double> primal_value;
  std::optional<double> dual_value;
  double gap = 0.0;
  ThetaWitness witness;
  SolverStats stats;
};

/// The dual program: variable 0 is t, variable i ≥ 1 multiplies y_terms[i-1].
struct ThetaDualProgram {
  LmiProblem lmi;
  std::vector<ComplexMatrix> y_terms;
};

/// The primal program: the first rho_terms.size() variables parameterize the
/// traceless part of ρ = 1/d + Σ z_k σ_k, the rest multiply t_terms. The LMI
/// objective omits the constant tr ρ = 1.
struct ThetaPrimalProgram {
  LmiProblem lmi;
  std::vector<ComplexMatrix> rho_terms;
  std::vector<ComplexMatrix> t_terms;
};

ThetaDualProgram theta_dual_program(const OperatorSpace& s);
ThetaPrimalProgram theta_primal_program(const OperatorSpace& s);
/// Variables: t, then Y_xx for each vertex, then Y_uv for each edge in g.edges() order.
LmiProblem theta_classical_program(const Graph& g);

/// Hermitian basis of L(C^d): E_pp, (E_pq+E_qp)/√2, i(E_pq−E_qp)/√2, orthonormal.
std::vector<ComplexMatrix> hermitian_unit_basis(Eigen::Index d);
/// Orthonormal basis of the traceless Hermitian d×d matrices.
std::vector<ComplexMatrix> traceless_hermitian_basis(Eigen::Index d);

ThetaResult theta_tilde_dual(const OperatorSpace& s, const SolverOptions& opts = {});
ThetaResult theta_tilde_primal(const OperatorSpace& s, const SolverOptions& opts = {});
/// Both programs; value is the dual optimum. Throws GapTooLarge when the two
/// differ by more than 1e-4 (1 + value).
ThetaResult theta_tilde(const OperatorSpace& s, const SolverOptions& opts = {});
ThetaResult theta_classical(const Graph& g, const SolverOptions& opts = {});

struct NaiveOptions {
  int restarts = 5;
  int iters = 30;
  std::uint64_t seed = 0;
  /// Tried before the random restarts.
  std::vector<ComplexVector> extra_seeds;
  SolverOptions solver;
};

struct NaiveResult {
  double value = 1.0;
  ComplexMatrix t;  // feasible: T ∈ S⊥, 1+T ⪰ 0, ‖1+T‖ = value
  /// Certified objective after each ascent step of the winning restart.
  std::vector<double> trace;
};

/// Certified lower bound on ϑ(S). The uniform vector, and Φ/‖Φ‖ when d is a
/// perfect square, are always among the seeds.
NaiveResult theta_naive_lower(const OperatorSpace& s, const NaiveOptions& opts = {});

/// T = d |Φ⟩⟨Φ| − 1 on C^d ⊗ C^d.
ComplexMatrix identity_witness(Eigen::Index d);

struct CapacityReport {
  double theta_tilde = 0.0;
  double c0e_upper = 0.0;  // log₂ ϑ̃(S), bounds C_0E and C_0
  int alpha_lower = 1;
  double c0_single_letter_lower = 0.0;  // log₂ α lower bound, bounds C_0
};

CapacityReport capacity_report(const OperatorSpace& s, const SolverOptions& opts = {});

}  // namespace ncg
