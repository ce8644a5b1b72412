#include "ncgraph/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace ncg {

Graph::Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n) * n, 0) {
  if (n < 1) throw DimensionError("Graph: vertex count must be positive");
}

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges) : Graph(n) {
  for (auto [u, v] : edges) add_edge(u, v);
}

void Graph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::out_of_range("Graph: vertex out of range");
  if (u == v) throw std::invalid_argument("Graph: self-loops are not allowed");
  adj_[index(u, v)] = 1;
  adj_[index(v, u)] = 1;
}

int Graph::edge_count() const {
  return static_cast<int>(std::count(adj_.begin(), adj_.end(), std::uint8_t{1}) / 2);
}

int Graph::degree(int v) const {
  int deg = 0;
  for (int u = 0; u < n_; ++u) deg += adjacent(v, u) ? 1 : 0;
  return deg;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n_; ++u) {
    for (int v = u + 1; v < n_; ++v) {
      if (adjacent(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph complete_graph(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

Graph empty_graph(int n) { return Graph(n); }

Graph cycle_graph(int n) {
  Graph g(n);
  if (n == 2) {
    g.add_edge(0, 1);
  } else if (n > 2) {
    for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
  }
  return g;
}

Graph path_graph(int n) {
  Graph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

Graph erdos_renyi(int n, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("erdos_renyi: p must lie in [0, 1]");
  Rng rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Graph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (unif(rng) < p) g.add_edge(u, v);
    }
  }
  return g;
}

Graph strong_product(const Graph& g, const Graph& h) {
  const int m = h.n();
  if (static_cast<long>(g.n()) * m > kMaxProductVertices) {
    throw DimensionError("strong_product: too many vertices");
  }
  Graph out(g.n() * m);
  for (int x1 = 0; x1 < g.n(); ++x1) {
    for (int x2 = 0; x2 < g.n(); ++x2) {
      if (x1 != x2 && !g.adjacent(x1, x2)) continue;
      for (int y1 = 0; y1 < m; ++y1) {
        for (int y2 = 0; y2 < m; ++y2) {
          if (y1 != y2 && !h.adjacent(y1, y2)) continue;
          const int a = x1 * m + y1, b = x2 * m + y2;
          if (a < b) out.add_edge(a, b);
        }
      }
    }
  }
  return out;
}

Graph complement_graph(const Graph& g) {
  Graph out(g.n());
  for (int u = 0; u < g.n(); ++u) {
    for (int v = u + 1; v < g.n(); ++v) {
      if (!g.adjacent(u, v)) out.add_edge(u, v);
    }
  }
  return out;
}

Graph disjoint_union(const Graph& g, const Graph& h) {
  Graph out(g.n() + h.n());
  for (auto [u, v] : g.edges()) out.add_edge(u, v);
  for (auto [u, v] : h.edges()) out.add_edge(g.n() + u, g.n() + v);
  return out;
}

Graph join(const Graph& g, const Graph& h) {
  Graph out = disjoint_union(g, h);
  for (int u = 0; u < g.n(); ++u) {
    for (int v = 0; v < h.n(); ++v) out.add_edge(u, g.n() + v);
  }
  return out;
}

Graph relabel(const Graph& g, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != g.n()) throw DimensionError("relabel: wrong size");
  Graph out(g.n());
  for (int i = 0; i < g.n(); ++i) {
    for (int j = i + 1; j < g.n(); ++j) {
      if (g.adjacent(perm[i], perm[j])) out.add_edge(i, j);
    }
  }
  return out;
}

Graph induced(const Graph& g, const std::vector<int>& vertices) {
  Graph out(static_cast<int>(vertices.size()));
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (g.adjacent(vertices[i], vertices[j])) {
        out.add_edge(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  return out;
}

namespace {

using Mask = std::uint64_t;

// Maximum independent set search. A colour class here is a clique of g, so an
// independent set meets each class at most once.
class MisSearch {
 public:
  explicit MisSearch(const Graph& g) : n_(g.n()), nonadj_(g.n(), 0), adj_(g.n(), 0) {
    for (int u = 0; u < n_; ++u) {
      for (int v = 0; v < n_; ++v) {
        if (u == v) continue;
        if (g.adjacent(u, v)) {
          adj_[u] |= Mask{1} << v;
        } else {
          nonadj_[u] |= Mask{1} << v;
        }
      }
    }
  }

  IndependentSet run() {
    const Mask all = n_ == 64 ? ~Mask{0} : ((Mask{1} << n_) - 1);
    expand(all);
    IndependentSet out;
    out.size = static_cast<int>(best_.size());
    out.vertices = best_;
    std::sort(out.vertices.begin(), out.vertices.end());
    return out;
  }

 private:
  void expand(Mask candidates) {
    std::vector<int> order;
    std::vector<int> colour;
    order.reserve(std::popcount(candidates));
    colour.reserve(order.capacity());
    Mask uncoloured = candidates;
    int k = 0;
    while (uncoloured) {
      ++k;
      Mask q = uncoloured;
      while (q) {
        const int v = std::countr_zero(q);
        q &= ~(Mask{1} << v);
        uncoloured &= ~(Mask{1} << v);
        order.push_back(v);
        colour.push_back(k);
        q &= adj_[v];
      }
    }
    for (int idx = static_cast<int>(order.size()) - 1; idx >= 0; --idx) {
      if (current_.size() + colour[idx] <= best_.size()) return;
      const int v = order[idx];
      current_.push_back(v);
      const Mask next = candidates & nonadj_[v];
      if (next == 0) {
        if (current_.size() > best_.size()) best_ = current_;
      } else {
        expand(next);
      }
      current_.pop_back();
      candidates &= ~(Mask{1} << v);
    }
  }

  int n_;
  std::vector<Mask> nonadj_;
  std::vector<Mask> adj_;
  std::vector<int> current_;
  std::vector<int> best_;
};

}  // namespace

IndependentSet alpha_brute(const Graph& g, int max_vertices) {
  if (g.n() > std::min(max_vertices, 64)) {
    throw DimensionError("alpha_brute: graph exceeds the vertex cap");
  }
  return MisSearch(g).run();
}

OperatorSpace to_operator_space(const Graph& g) {
  const int n = g.n();
  std::vector<ComplexMatrix> basis;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j || g.adjacent(i, j)) basis.push_back(matrix_unit(n, n, i, j));
    }
  }
  return OperatorSpace::from_orthonormal(n, n, std::move(basis));
}

std::optional<Graph> classical_graph_of(const OperatorSpace& s, double tol) {
  if (!s.is_square()) return std::nullopt;
  const Eigen::Index d = s.ambient_dim();
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> support =
      Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(d, d, false);
  for (const auto& f : s.basis()) {
    support = support.array() || (f.cwiseAbs().array() > tol);
  }
  for (Eigen::Index i = 0; i < d; ++i) {
    if (!support(i, i)) return std::nullopt;
    for (Eigen::Index j = 0; j < d; ++j) {
      if (support(i, j) != support(j, i)) return std::nullopt;
    }
  }
  if (support.count() != s.dim()) return std::nullopt;
  Graph g(static_cast<int>(d));
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      if (support(i, j)) g.add_edge(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return g;
}

std::vector<Graph> nonisomorphic_graphs(int n) {
  if (n < 1 || n > 6) throw DimensionError("nonisomorphic_graphs: supported for 1 <= n <= 6");
  std::vector<std::pair<int, int>> pairs;
  std::vector<std::vector<int>> pair_index(n, std::vector<int>(n, -1));
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      pair_index[u][v] = pair_index[v][u] = static_cast<int>(pairs.size());
      pairs.emplace_back(u, v);
    }
  }
  const int np = static_cast<int>(pairs.size());
  std::vector<std::vector<int>> maps;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<int> m(np);
    for (int e = 0; e < np; ++e) m[e] = pair_index[perm[pairs[e].first]][perm[pairs[e].second]];
    maps.push_back(std::move(m));
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<Graph> out;
  for (std::uint32_t mask = 0; mask < (1u << np); ++mask) {
    bool canonical = true;
    for (const auto& m : maps) {
      std::uint32_t image = 0;
      for (int e = 0; e < np; ++e) {
        if (mask & (1u << e)) image |= 1u << m[e];
      }
      if (image < mask) {
        canonical = false;
        break;
      }
    }
    if (!canonical) continue;
    Graph g(n);
    for (int e = 0; e < np; ++e) {
      if (mask & (1u << e)) g.add_edge(pairs[e].first, pairs[e].second);
    }
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace ncg
