// The worked examples and consistency checks, run as a table of rows.
// Shared by the paper-suite command and the acceptance binary.
#pragma once

#include "ncgraph/operator_space.hpp"

#include <string>
#include <vector>

namespace ncg {

namespace examples {

/// Δ⊥ for Δ = diag(d−1, −1, ..., −1).
OperatorSpace delta_perp(Eigen::Index d);
/// 1₂⊗1_d + 1₂⊥⊗L(C^d), ambient dimension 2d.
OperatorSpace duan(Eigen::Index d);
/// span{1, Z}, the confusability space of the qubit dephasing channel.
OperatorSpace dephasing_qubit();

}  // namespace examples

struct SuiteRow {
  int criterion = 0;
  std::string label;
  std::string expected;
  std::string computed;
  std::string tolerance;
  bool pass = false;
};

struct CriterionSummary {
  int criterion = 0;
  std::string name;
  int checks = 0;
  int failed = 0;
  double seconds = 0.0;
  bool pass() const { return checks > 0 && failed == 0; }
};

struct SuiteOptions {
  /// Substring matched against criterion names and tags; empty runs all.
  std::string filter;
  int threads = 0;  // 0: hardware concurrency
};

struct SuiteReport {
  std::vector<SuiteRow> rows;
  std::vector<CriterionSummary> criteria;
  bool pass() const;
};

SuiteReport run_paper_suite(const SuiteOptions& opts = {});

}  // namespace ncg
