// Independence numbers of non-commutative graphs.
//
// A set of orthonormal vectors {φ_m} is independent for S when every
// |φ_m⟩⟨φ_m'| with m ≠ m' lies in S⊥. Only brackets are computed: a verified
// lower bound from search, and upper bounds from ϑ̃ and dimension counting.
#pragma once

#include "ncgraph/lmi.hpp"
#include "ncgraph/operator_space.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace ncg {

struct IndependentSetCandidate {
  std::vector<ComplexVector> vectors;
  double residual = 0.0;
};

struct VerifyResult {
  bool ok = false;
  double residual = 0.0;  // max of orthonormality error and ‖Π_S(|φ_m⟩⟨φ_m'|)‖
};

VerifyResult verify_independent_set(const OperatorSpace& s, const std::vector<ComplexVector>& vectors,
                                    double tol = 1e-8);

struct SearchOptions {
  int restarts = 50;
  int iters = 200;
  double step = 0.1;
  std::uint64_t seed = 0;
  /// Levenberg-Marquardt iterations for a restart whose penalty fell below 1e-3.
  int polish_iters = 50;
};

/// Projected-gradient search for target_n independent vectors. Returns only
/// candidates that pass verify_independent_set at 1e-8.
std::optional<IndependentSetCandidate> alpha_lower_search(const OperatorSpace& s, int target_n,
                                                          const SearchOptions& opts = {});

struct AlphaLower {
  int size = 1;
  std::vector<ComplexVector> vectors;
  bool exact = false;  // true when the space is classical and alpha_brute ran
};

/// Classical spaces go to alpha_brute; otherwise targets 2, 3, ... are
/// searched until one fails.
AlphaLower best_alpha_lower(const OperatorSpace& s, const SearchOptions& opts = {});

/// Largest k with k(k−1) ≤ dim S⊥, capped at d.
int pair_dim_upper(const OperatorSpace& s);
/// 1 + dim S⊥.
int alpha_hat_upper(const OperatorSpace& s);

struct KlResult {
  bool ok = false;
  int code_dim = 0;
  double residual = 0.0;
};

/// Knill-Laflamme: PFP = λ_F P for every basis element F of s.
KlResult verify_kl_projector(const OperatorSpace& s, const ComplexMatrix& p, double tol = 1e-8);

struct BoundsReport {
  int alpha_lower = 1;
  std::vector<ComplexVector> alpha_lower_witness;
  bool alpha_lower_exact = false;
  double theta_tilde_upper = 0.0;
  int alpha_tilde_upper = 0;  // ⌊ϑ̃ + 1e-6⌋
  int pair_dim_upper = 0;
  int alpha_hat_upper = 0;
  int ambient_upper = 0;
  int alpha_upper = 0;  // min of pair, ⌊ϑ̃⌋, d
};

struct BoundsOptions {
  SearchOptions search;
  SolverOptions solver;
};

BoundsReport bounds(const OperatorSpace& s, const BoundsOptions& opts = {});

}  // namespace ncg
