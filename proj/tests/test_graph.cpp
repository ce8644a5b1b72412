#include "doctest.h"

#include "ncgraph/graph.hpp"

#include <algorithm>

using namespace ncg;

namespace {

// Exhaustive maximum independent set over all vertex subsets.
int alpha_exhaustive(const Graph& g) {
  int best = 0;
  for (std::uint32_t mask = 0; mask < (1u << g.n()); ++mask) {
    bool ok = true;
    for (int u = 0; u < g.n() && ok; ++u) {
      for (int v = u + 1; v < g.n() && ok; ++v) {
        if ((mask >> u & 1) && (mask >> v & 1) && g.adjacent(u, v)) ok = false;
      }
    }
    if (ok) best = std::max(best, __builtin_popcount(mask));
  }
  return best;
}

std::vector<int> degrees(const Graph& g) {
  std::vector<int> d;
  for (int v = 0; v < g.n(); ++v) d.push_back(g.degree(v));
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

TEST_CASE("constructors") {
  CHECK(cycle_graph(5).edge_count() == 5);
  CHECK(complete_graph(4).edge_count() == 6);
  CHECK(empty_graph(7).edge_count() == 0);
  CHECK(path_graph(4).edge_count() == 3);
  CHECK(erdos_renyi(10, 0.5, 1) == erdos_renyi(10, 0.5, 1));
  CHECK(erdos_renyi(10, 0.0, 3).edge_count() == 0);
  CHECK(erdos_renyi(10, 1.0, 3).edge_count() == 45);
  CHECK_THROWS(Graph(3, {{0, 0}}));
  CHECK_THROWS(Graph(3, {{0, 3}}));
  CHECK_THROWS(erdos_renyi(4, 1.5, 0));
}

TEST_CASE("edges are listed once in order") {
  Graph g(4);
  g.add_edge(2, 1);
  g.add_edge(0, 3);
  g.add_edge(1, 2);
  const std::vector<std::pair<int, int>> expected{{0, 3}, {1, 2}};
  CHECK(g.edges() == expected);
  CHECK(g.adjacent(1, 2));
  CHECK(g.adjacent(2, 1));
}

TEST_CASE("strong products") {
  const Graph c5 = cycle_graph(5);
  CHECK(strong_product(complete_graph(1), c5) == c5);
  CHECK(strong_product(complete_graph(2), complete_graph(2)) == complete_graph(4));
  // Three-case definition checked pair by pair.
  const Graph g = erdos_renyi(4, 0.5, 2), h = erdos_renyi(3, 0.5, 5);
  const Graph p = strong_product(g, h);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 4; ++c) {
        for (int d = 0; d < 3; ++d) {
          if (a == c && b == d) continue;
          const bool first = a == c || g.adjacent(a, c), second = b == d || h.adjacent(b, d);
          CHECK(p.adjacent(a * 3 + b, c * 3 + d) == (first && second));
        }
      }
    }
  }
  CHECK_THROWS(strong_product(empty_graph(100), empty_graph(100)));
}

TEST_CASE("alpha_brute") {
  CHECK(alpha_brute(empty_graph(9)).size == 9);
  CHECK(alpha_brute(complete_graph(9)).size == 1);
  CHECK(alpha_brute(cycle_graph(5)).size == 2);
  CHECK(alpha_brute(strong_product(cycle_graph(5), cycle_graph(5))).size == 5);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Graph g = erdos_renyi(3 + static_cast<int>(seed % 10), 0.1 + 0.03 * static_cast<double>(seed), seed);
    const IndependentSet s = alpha_brute(g);
    CHECK(s.size == alpha_exhaustive(g));
    CHECK(static_cast<int>(s.vertices.size()) == s.size);
    for (std::size_t i = 0; i < s.vertices.size(); ++i) {
      for (std::size_t j = i + 1; j < s.vertices.size(); ++j) CHECK_FALSE(g.adjacent(s.vertices[i], s.vertices[j]));
    }
  }
  CHECK_THROWS_AS(alpha_brute(empty_graph(31)), DimensionError);
  CHECK(alpha_brute(empty_graph(40), 64).size == 40);
}

TEST_CASE("alpha is invariant under relabeling and supermultiplicative") {
  Rng rng(9);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Graph g = erdos_renyi(8, 0.4, seed);
    std::vector<int> perm(8);
    for (int i = 0; i < 8; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    CHECK(alpha_brute(relabel(g, perm)).size == alpha_brute(g).size);
    const Graph h = erdos_renyi(4, 0.5, seed + 3);
    CHECK(alpha_brute(strong_product(g, h), 64).size >= alpha_brute(g).size * alpha_brute(h).size);
  }
}

TEST_CASE("complements") {
  CHECK(complement_graph(complete_graph(5)) == empty_graph(5));
  const Graph g = erdos_renyi(7, 0.4, 4);
  CHECK(complement_graph(complement_graph(g)) == g);
  // C5 is self-complementary: 0→0, 1→2, 2→4, 3→1, 4→3 maps C5 onto its complement.
  const Graph c5 = cycle_graph(5), cc = complement_graph(c5);
  CHECK(cc.edge_count() == 5);
  CHECK(degrees(cc) == degrees(c5));
  CHECK(relabel(c5, {0, 2, 4, 1, 3}) == cc);
}

TEST_CASE("to_operator_space") {
  // The diagonal algebra, strictly larger than span{1}.
  CHECK_FALSE(space_equal(to_operator_space(empty_graph(4)), identity_space(4)));
  CHECK(to_operator_space(empty_graph(4)).dim() == 4);
  CHECK(space_equal(to_operator_space(complete_graph(3)), full_space(3)));
  CHECK(to_operator_space(cycle_graph(5)).dim() == 15);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Graph g = erdos_renyi(6, 0.5, seed);
    const OperatorSpace s = to_operator_space(g);
    CHECK(s.dim() == 6 + 2 * g.edge_count());
    CHECK(is_nc_graph(s));
    const OperatorSpace perp = orth_complement(s);
    for (int u = 0; u < 6; ++u) {
      for (int v = 0; v < 6; ++v) {
        const bool off = u != v && !g.adjacent(u, v);
        CHECK(perp.contains(matrix_unit(6, 6, u, v)) == off);
      }
    }
    auto back = classical_graph_of(s);
    REQUIRE(back.has_value());
    CHECK(*back == g);
  }
  CHECK_FALSE(classical_graph_of(random_nc_graph(3, 4, 1)).has_value());
}

TEST_CASE("graph operations match space operations") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Graph g = erdos_renyi(1 + static_cast<int>(seed % 4), 0.5, seed);
    const Graph h = erdos_renyi(1 + static_cast<int>((seed + 2) % 4), 0.5, seed + 7);
    const OperatorSpace sg = to_operator_space(g), sh = to_operator_space(h);
    CHECK(space_equal(to_operator_space(strong_product(g, h)), tensor(sg, sh)));
    CHECK(space_equal(to_operator_space(disjoint_union(g, h)), direct_sum(sg, sh)));
    CHECK(space_equal(to_operator_space(join(g, h)), complete_union(sg, sh)));
  }
}

TEST_CASE("induced subgraphs of graphs") {
  const Graph g = cycle_graph(6);
  const Graph h = induced(g, {0, 1, 2, 4});
  CHECK(h == Graph(4, {{0, 1}, {1, 2}}));
}

TEST_CASE("non-isomorphic graph counts") {
  const int expected[] = {1, 1, 2, 4, 11, 34, 156};
  for (int n = 1; n <= 6; ++n) CHECK(static_cast<int>(nonisomorphic_graphs(n).size()) == expected[n]);
}
