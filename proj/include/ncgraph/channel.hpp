// Quantum channels in Kraus form and their confusability spaces.
#pragma once

#include "ncgraph/graph.hpp"
#include "ncgraph/operator_space.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace ncg {

class NotTracePreserving : public std::invalid_argument {
 public:
  explicit NotTracePreserving(double residual)
      : std::invalid_argument("NotTracePreserving: residual " + std::to_string(residual)),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class QuantumChannel {
 public:
  /// Validates shapes and trace preservation ‖Σ E†E − 1‖ ≤ tol · dim_in.
  static QuantumChannel make(std::vector<ComplexMatrix> kraus, double tol = kZeroTol);

  Eigen::Index dim_in() const { return dim_in_; }
  Eigen::Index dim_out() const { return dim_out_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

 private:
  QuantumChannel(Eigen::Index din, Eigen::Index dout, std::vector<ComplexMatrix> kraus)
      : dim_in_(din), dim_out_(dout), kraus_(std::move(kraus)) {}

  Eigen::Index dim_in_;
  Eigen::Index dim_out_;
  std::vector<ComplexMatrix> kraus_;
};

/// ‖Σ E†E − 1‖_HS; throws DimensionError on inconsistent shapes.
double trace_preservation_residual(const std::vector<ComplexMatrix>& kraus);

QuantumChannel make_channel(std::vector<ComplexMatrix> kraus, double tol = kZeroTol);

struct ClassicalChannel {
  int n_in = 0;
  int n_out = 0;
  RealMatrix probs;  // n_out x n_in, column-stochastic

  static ClassicalChannel make(RealMatrix probs);
};

ComplexMatrix apply(const QuantumChannel& ch, const ComplexMatrix& rho);
ComplexMatrix heisenberg(const QuantumChannel& ch, const ComplexMatrix& x);

/// span{E_j† E_k}.
OperatorSpace confusability(const QuantumChannel& ch);
/// Channel to the environment of the Stinespring dilation V|φ⟩ = Σ_j E_j|φ⟩ ⊗ |j⟩.
QuantumChannel complementary(const QuantumChannel& ch);
/// span{E_j} inside L(A -> B).
OperatorSpace bipartite_space(const QuantumChannel& ch);
/// span{X† Y : X, Y ∈ z}.
OperatorSpace products_span(const OperatorSpace& z);

QuantumChannel from_classical(const ClassicalChannel& nc);
/// Each vertex emits a uniformly random incident edge; isolated vertices get
/// a private output symbol.
ClassicalChannel channel_from_graph(const Graph& g);
/// post ∘ ch.
QuantumChannel compose(const QuantumChannel& post, const QuantumChannel& ch);
/// Tensor product channel, Kraus operators E_i ⊗ F_j.
QuantumChannel tensor(const QuantumChannel& a, const QuantumChannel& b);

QuantumChannel identity_channel(Eigen::Index d);
/// Discards the input and prepares |0⟩⟨0| on C^dout.
QuantumChannel constant_channel(Eigen::Index din, Eigen::Index dout = 1);
QuantumChannel dephasing_channel(Eigen::Index d);
/// Random channel with the given number of Kraus operators (Stinespring of a
/// random isometry). Deterministic in seed.
QuantumChannel random_channel(Eigen::Index din, Eigen::Index dout, int num_kraus,
                              std::uint64_t seed);

}  // namespace ncg
