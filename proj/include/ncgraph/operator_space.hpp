// Operator subspaces S < L(A) presented by a Hilbert-Schmidt orthonormal basis.
//
// A non-commutative graph is a space containing the identity and closed under
// adjoints. Every constructor below returns a space whose basis is orthonormal
// to kZeroTol and whose flags were recomputed from that basis.
#pragma once

#include "ncgraph/matrix.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace ncg {

class OperatorSpace {
 public:
  /// Empty subspace of L(C^cols -> C^rows).
  OperatorSpace(Eigen::Index rows, Eigen::Index cols);

  /// Takes ownership of a basis the caller guarantees to be HS-orthonormal.
  static OperatorSpace from_orthonormal(Eigen::Index rows, Eigen::Index cols,
                                        std::vector<ComplexMatrix> basis);

  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  /// Side length d of L(C^d); only meaningful for square spaces.
  Eigen::Index ambient_dim() const { return rows_; }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(basis_.size()); }
  const std::vector<ComplexMatrix>& basis() const { return basis_; }

  bool adjoint_closed() const { return adjoint_closed_; }
  bool contains_identity() const { return contains_identity_; }

  /// Π_S x = Σ_F F tr(F† x).
  ComplexMatrix project(const ComplexMatrix& x) const;
  /// ‖x − Π_S x‖ ≤ tol (1 + ‖x‖).
  bool contains(const ComplexMatrix& x, double tol = kZeroTol) const;

 private:
  void compute_flags();

  Eigen::Index rows_;
  Eigen::Index cols_;
  std::vector<ComplexMatrix> basis_;
  bool adjoint_closed_ = false;
  bool contains_identity_ = false;
};

OperatorSpace span(std::span<const ComplexMatrix> mats, double tol = kZeroTol);
/// Span of a rectangular family (used for bipartite spaces); all shapes must agree.
OperatorSpace span_rect(Eigen::Index rows, Eigen::Index cols, std::span<const ComplexMatrix> mats,
                        double tol = kZeroTol);

bool contains(const OperatorSpace& s, const ComplexMatrix& x, double tol = kZeroTol);
bool is_nc_graph(const OperatorSpace& s);

/// span{1_d}: the graph of a noiseless channel.
OperatorSpace identity_space(Eigen::Index d);
/// L(C^d): the complete graph.
OperatorSpace full_space(Eigen::Index d);

OperatorSpace orth_complement(const OperatorSpace& s);
/// span{1} + (S⊥ ∩ 1⊥): the complement relative to the trivial subalgebra C·1.
OperatorSpace nc_complement(const OperatorSpace& s);
/// S1 ∩ S2 = (S1⊥ + S2⊥)⊥. Intersections of nc-graphs are nc-graphs.
OperatorSpace intersection(const OperatorSpace& s1, const OperatorSpace& s2);

/// Real-orthonormal Hermitian matrices spanning {X ∈ S : X = X†} over the reals.
std::vector<ComplexMatrix> hermitian_basis(const OperatorSpace& s);

OperatorSpace tensor(const OperatorSpace& s1, const OperatorSpace& s2);
OperatorSpace direct_sum(const OperatorSpace& s1, const OperatorSpace& s2);
OperatorSpace complete_union(const OperatorSpace& s1, const OperatorSpace& s2);
/// span{U† F U}; u must be an isometry d x d0.
OperatorSpace induced_subgraph(const OperatorSpace& s, const ComplexMatrix& u);
/// S^t = S·S···S (t factors).
OperatorSpace distance_graph(const OperatorSpace& s, int t);

bool space_leq(const OperatorSpace& s1, const OperatorSpace& s2, double tol = kZeroTol);
bool space_equal(const OperatorSpace& s1, const OperatorSpace& s2, double tol = kZeroTol);

/// Random non-commutative graph of complex dimension dim in L(C^d), grown from
/// the identity by random Hermitian directions. Deterministic in seed.
OperatorSpace random_nc_graph(Eigen::Index d, Eigen::Index dim, std::uint64_t seed);

/// span(s ∪ {extra random Hermitian directions}); the result contains s.
OperatorSpace random_supergraph(const OperatorSpace& s, Eigen::Index extra, std::uint64_t seed);

}  // namespace ncg
