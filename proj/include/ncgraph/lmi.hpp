// Dense linear-matrix-inequality problems and an interior-point solver.
//
//   optimize  c·y   subject to   F0(b) + Σ_i y_i Fi(b) ⪰ 0   for every block b.
//
// The solver is an infeasible-start primal-dual path-following method with
// Nesterov-Todd scaling and Mehrotra predictor-corrector steps. Its dual
// iterate X(b) ⪰ 0 satisfies Σ_b Fi(b)•X(b) = c_i at convergence, so the gap
// between c·y and −Σ_b F0(b)•X(b) certifies the reported value.
#pragma once

#include "ncgraph/matrix.hpp"

#include <Eigen/Sparse>

#include <string>
#include <vector>

namespace ncg {

using SparseMatrix = Eigen::SparseMatrix<double>;

enum class Sense { Minimize, Maximize };

struct LmiBlock {
  RealMatrix f0;
  /// One coefficient matrix per variable; an empty matrix (nonZeros() == 0)
  /// means the variable does not enter this block. Both triangles are stored.
  std::vector<SparseMatrix> coeffs;

  LmiBlock() = default;
  LmiBlock(Eigen::Index size, Eigen::Index num_vars);

  Eigen::Index size() const { return f0.rows(); }
  void set_coeff(Eigen::Index var, const RealMatrix& m);
};

struct LmiProblem {
  Eigen::Index num_vars = 0;
  RealVector objective;
  Sense sense = Sense::Minimize;
  std::vector<LmiBlock> blocks;

  LmiProblem() = default;
  LmiProblem(Eigen::Index m, Sense s);

  /// Throws std::invalid_argument unless shapes agree and every block matrix
  /// is symmetric within 1e-10.
  void check() const;
};

struct SolverOptions {
  double gap_tol = 1e-8;
  double feas_tol = 1e-8;
  int max_iter = 500;
  double step_fraction = 0.98;
  bool verbose = false;
};

enum class SolveStatus { Optimal, IterationLimit, PrimalInfeasible, DualInfeasible, NumericalTrouble };

std::string to_string(SolveStatus s);

struct LmiSolution {
  RealVector y;
  double value = 0.0;       // c·y in the problem's own sense
  double bound = 0.0;       // objective of the dual iterate (certifies value)
  SolveStatus status = SolveStatus::NumericalTrouble;
  double gap = 0.0;         // relative duality gap
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  int iterations = 0;
  std::vector<double> min_block_eigs;
  std::vector<double> gap_history;
  std::vector<RealMatrix> dual;  // X(b), one per block
};

LmiSolution solve(const LmiProblem& p, const SolverOptions& opts = {});

struct Validation {
  double objective = 0.0;
  std::vector<double> min_block_eigs;
};

/// Recomputes c·y and λ_min(F0 + Σ y_i Fi) per block, independent of the solver.
Validation validate(const LmiProblem& p, const RealVector& y);

}  // namespace ncg
