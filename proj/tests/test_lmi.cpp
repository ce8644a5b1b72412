#include "doctest.h"

#include "ncgraph/lmi.hpp"

#include <cmath>

using namespace ncg;

namespace {

// min t  s.t.  t·1 − A ⪰ 0.
LmiProblem lambda_max_problem(const RealMatrix& a) {
  LmiProblem p(1, Sense::Minimize);
  p.objective(0) = 1.0;
  LmiBlock b(a.rows(), 1);
  b.f0 = -a;
  b.set_coeff(0, RealMatrix::Identity(a.rows(), a.rows()));
  p.blocks.push_back(std::move(b));
  return p;
}

RealMatrix random_symmetric(int n, Rng& rng) {
  std::normal_distribution<double> gauss;
  RealMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
  }
  return (a + a.transpose()) / 2.0;
}

LmiProblem scalar_problem(std::vector<std::pair<double, double>> constraints, double cost) {
  // Each constraint is f0 + f1 y >= 0 as its own 1x1 block.
  LmiProblem p(1, Sense::Minimize);
  p.objective(0) = cost;
  for (auto [f0, f1] : constraints) {
    LmiBlock b(1, 1);
    b.f0(0, 0) = f0;
    b.set_coeff(0, RealMatrix::Constant(1, 1, f1));
    p.blocks.push_back(std::move(b));
  }
  return p;
}

}  // namespace

TEST_CASE("solve: lambda_max matches the eigenvalue oracle") {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const RealMatrix a = random_symmetric(2 + trial % 6, rng);
    const LmiSolution s = solve(lambda_max_problem(a));
    REQUIRE(s.status == SolveStatus::Optimal);
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(a);
    CHECK(std::abs(s.value - es.eigenvalues().maxCoeff()) <= 1e-7);
    CHECK(s.gap <= 1e-8);
    for (double e : s.min_block_eigs) CHECK(e >= -1e-8);
  }
}

TEST_CASE("solve: 2x2 determinant condition") {
  // min y  s.t. [[y, 1], [1, y]] ⪰ 0  ->  y = 1.
  LmiProblem p(1, Sense::Minimize);
  p.objective(0) = 1.0;
  LmiBlock b(2, 1);
  b.f0 << 0.0, 1.0, 1.0, 0.0;
  b.set_coeff(0, RealMatrix::Identity(2, 2));
  p.blocks.push_back(b);
  const LmiSolution s = solve(p);
  REQUIRE(s.status == SolveStatus::Optimal);
  CHECK(s.value == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(s.y(0) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("solve: maximize sense") {
  // max y  s.t. 2 − y ≥ 0, y + 5 ≥ 0.
  LmiProblem p = scalar_problem({{2.0, -1.0}, {5.0, 1.0}}, 1.0);
  p.sense = Sense::Maximize;
  const LmiSolution s = solve(p);
  REQUIRE(s.status == SolveStatus::Optimal);
  CHECK(s.value == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(s.bound == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("solve: infeasibility and unboundedness are reported") {
  // y − 1 ≥ 0 and −y ≥ 0 cannot both hold.
  const LmiSolution infeasible = solve(scalar_problem({{-1.0, 1.0}, {0.0, -1.0}}, 1.0));
  CHECK(infeasible.status == SolveStatus::PrimalInfeasible);
  // min y with only −y ≥ 0 is unbounded below.
  const LmiSolution unbounded = solve(scalar_problem({{0.0, -1.0}}, 1.0));
  CHECK(unbounded.status == SolveStatus::DualInfeasible);
}

TEST_CASE("solve: iteration limit") {
  Rng rng(8);
  SolverOptions opts;
  opts.max_iter = 2;
  const LmiSolution s = solve(lambda_max_problem(random_symmetric(5, rng)), opts);
  CHECK(s.status == SolveStatus::IterationLimit);
  CHECK(s.iterations == 2);
}

TEST_CASE("validate") {
  LmiProblem p(2, Sense::Minimize);
  LmiBlock b(3, 2);
  b.f0 = RealMatrix::Identity(3, 3);
  b.set_coeff(0, RealMatrix::Identity(3, 3));
  p.blocks.push_back(b);
  const Validation v = validate(p, RealVector::Zero(2));
  REQUIRE(v.min_block_eigs.size() == 1);
  CHECK(v.min_block_eigs[0] == doctest::Approx(1.0));

  // Optimum on the boundary: nudging y off it shows up as a negative eigenvalue.
  Rng rng(12);
  const RealMatrix a = random_symmetric(4, rng);
  const LmiProblem lm = lambda_max_problem(a);
  const LmiSolution s = solve(lm);
  REQUIRE(s.status == SolveStatus::Optimal);
  CHECK(validate(lm, s.y).min_block_eigs[0] >= -1e-8);
  RealVector nudged = s.y;
  nudged(0) -= 1e-2;
  CHECK(validate(lm, nudged).min_block_eigs[0] < -1e-3);
}

TEST_CASE("solve: gap sequence is eventually non-increasing") {
  Rng rng(31);
  const LmiSolution s = solve(lambda_max_problem(random_symmetric(6, rng)));
  REQUIRE(s.status == SolveStatus::Optimal);
  for (std::size_t k = 4; k + 1 < s.gap_history.size(); ++k) {
    CHECK(s.gap_history[k + 1] <= s.gap_history[k] * (1 + 1e-9));
  }
}

TEST_CASE("solve: objective scaling leaves the argmin unchanged") {
  Rng rng(44);
  const RealMatrix a = random_symmetric(5, rng);
  LmiProblem p = lambda_max_problem(a);
  const LmiSolution base = solve(p);
  p.objective *= 7.5;
  const LmiSolution scaled = solve(p);
  REQUIRE(base.status == SolveStatus::Optimal);
  REQUIRE(scaled.status == SolveStatus::Optimal);
  CHECK((base.y - scaled.y).norm() <= 1e-6);
  CHECK(scaled.value == doctest::Approx(7.5 * base.value).epsilon(1e-8));
}

TEST_CASE("solve: repeated solves are bit-identical") {
  Rng rng(55);
  const LmiProblem p = lambda_max_problem(random_symmetric(7, rng));
  const LmiSolution a = solve(p), b = solve(p);
  CHECK(a.iterations == b.iterations);
  CHECK(a.value == b.value);
  CHECK(a.y == b.y);
}

TEST_CASE("check rejects asymmetric blocks") {
  LmiProblem p(1, Sense::Minimize);
  LmiBlock b(2, 1);
  b.f0(0, 1) = 1.0;
  p.blocks.push_back(b);
  CHECK_THROWS_AS(p.check(), std::invalid_argument);
}
