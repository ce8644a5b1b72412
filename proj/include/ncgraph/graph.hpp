// Finite simple graphs, strong products and exact independence numbers.
#pragma once

#include "ncgraph/operator_space.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace ncg {

class Graph {
 public:
  explicit Graph(int n);
  Graph(int n, const std::vector<std::pair<int, int>>& edges);

  int n() const { return n_; }
  bool adjacent(int u, int v) const { return adj_[index(u, v)] != 0; }
  void add_edge(int u, int v);
  int edge_count() const;
  int degree(int v) const;
  /// Each edge once, as (u, v) with u < v, lexicographic.
  std::vector<std::pair<int, int>> edges() const;

  bool operator==(const Graph& other) const = default;

 private:
  std::size_t index(int u, int v) const { return static_cast<std::size_t>(u) * n_ + v; }

  int n_;
  std::vector<std::uint8_t> adj_;
};

/// Largest vertex count accepted by strong_product.
inline constexpr int kMaxProductVertices = 4096;

Graph complete_graph(int n);
Graph empty_graph(int n);
Graph cycle_graph(int n);
Graph path_graph(int n);
Graph erdos_renyi(int n, double p, std::uint64_t seed);

/// Vertex (x, y) maps to x * h.n() + y, matching kron ordering.
Graph strong_product(const Graph& g, const Graph& h);
Graph complement_graph(const Graph& g);
/// Block-adjacency disjoint union.
Graph disjoint_union(const Graph& g, const Graph& h);
/// Disjoint union plus every edge between the two parts.
Graph join(const Graph& g, const Graph& h);
/// Vertex i of the result is vertex perm[i] of g.
Graph relabel(const Graph& g, const std::vector<int>& perm);
Graph induced(const Graph& g, const std::vector<int>& vertices);

struct IndependentSet {
  int size = 0;
  std::vector<int> vertices;
};

/// Exact maximum independent set by branch and bound with a greedy-colouring
/// bound on 64-bit masks. Throws DimensionError when n exceeds max_vertices.
IndependentSet alpha_brute(const Graph& g, int max_vertices = 30);

/// span{|x⟩⟨x'| : x = x' or x ~ x'}.
OperatorSpace to_operator_space(const Graph& g);

/// Recovers the graph when s is exactly the span of a symmetric matrix-unit
/// pattern containing the diagonal; std::nullopt otherwise.
std::optional<Graph> classical_graph_of(const OperatorSpace& s, double tol = kZeroTol);

/// All graphs on n vertices up to isomorphism (n <= 7), via canonical edge masks.
std::vector<Graph> nonisomorphic_graphs(int n);

}  // namespace ncg
