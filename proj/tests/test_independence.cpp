#include "doctest.h"

#include "ncgraph/graph.hpp"
#include "ncgraph/independence.hpp"

#include <cmath>

using namespace ncg;

namespace {

ComplexVector basis_vector(Eigen::Index d, Eigen::Index i) {
  ComplexVector v = ComplexVector::Zero(d);
  v(i) = 1.0;
  return v;
}

OperatorSpace delta_perp(Eigen::Index d) {
  ComplexMatrix delta = -ComplexMatrix::Identity(d, d);
  delta(0, 0) = static_cast<double>(d - 1);
  const std::vector<ComplexMatrix> one{delta};
  return orth_complement(span(one));
}

// A †-closed space containing 1 with |a⟩⟨b|, |b⟩⟨a| ∈ S⊥ for an orthonormal
// random pair a, b.
OperatorSpace planted_pair_space(Eigen::Index d, Eigen::Index dim, std::uint64_t seed) {
  Rng rng(seed);
  const ComplexMatrix u = random_unitary(d, rng);
  const ComplexVector a = u.col(0), b = u.col(1);
  const ComplexMatrix ab = a * b.adjoint(), ba = b * a.adjoint();
  std::vector<ComplexMatrix> gens{ComplexMatrix::Identity(d, d)};
  while (static_cast<Eigen::Index>(gens.size()) < dim) {
    ComplexMatrix h = random_hermitian(d, rng);
    h -= hs_inner(ab, h) * ab + hs_inner(ba, h) * ba;
    gens.push_back(h);
  }
  return span(gens);
}

}  // namespace

TEST_CASE("verify_independent_set") {
  Rng rng(1);
  for (Eigen::Index d = 2; d <= 4; ++d) {
    const ComplexMatrix u = random_unitary(d, rng);
    std::vector<ComplexVector> onb;
    for (Eigen::Index i = 0; i < d; ++i) onb.push_back(u.col(i));
    CHECK(verify_independent_set(identity_space(d), onb).ok);
    const std::vector<ComplexVector> two{onb[0], onb[1]};
    CHECK_FALSE(verify_independent_set(full_space(d), two).ok);
  }

  const OperatorSpace c5 = to_operator_space(cycle_graph(5));
  const VerifyResult good = verify_independent_set(c5, {basis_vector(5, 0), basis_vector(5, 2)});
  CHECK(good.ok);
  CHECK(good.residual <= 1e-15);
  const VerifyResult bad = verify_independent_set(c5, {basis_vector(5, 0), basis_vector(5, 1)});
  CHECK_FALSE(bad.ok);
  // ‖Π_S(|0⟩⟨1|)‖ = 1 since |0⟩⟨1| ∈ S.
  CHECK(std::abs(bad.residual - 1.0) <= 1e-12);

  // Not orthonormal.
  const ComplexVector tilted = (basis_vector(5, 0) + basis_vector(5, 2)) / std::sqrt(2.0);
  CHECK_FALSE(verify_independent_set(c5, {basis_vector(5, 0), tilted}).ok);
  CHECK_THROWS(verify_independent_set(c5, {basis_vector(4, 0), basis_vector(4, 2)}));
}

TEST_CASE("alpha_lower_search finds easy sets and certifies them") {
  for (Eigen::Index d = 2; d <= 4; ++d) {
    const auto found = alpha_lower_search(identity_space(d), static_cast<int>(d));
    REQUIRE(found.has_value());
    CHECK(verify_independent_set(identity_space(d), found->vectors, 1e-8).ok);
  }
  const OperatorSpace c5 = to_operator_space(cycle_graph(5));
  const auto two = alpha_lower_search(c5, 2);
  REQUIRE(two.has_value());
  CHECK(verify_independent_set(c5, two->vectors, 1e-8).ok);
  CHECK_FALSE(alpha_lower_search(c5, 3).has_value());
  CHECK_FALSE(alpha_lower_search(full_space(3), 2).has_value());
}

TEST_CASE("alpha_lower_search reaches alpha_brute on small graphs") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const Graph g = erdos_renyi(5 + static_cast<int>(seed), 0.5, seed);
    const int alpha = alpha_brute(g).size;
    const OperatorSpace s = to_operator_space(g);
    SearchOptions opts;
    opts.seed = seed;
    const auto found = alpha_lower_search(s, alpha, opts);
    REQUIRE(found.has_value());
    CHECK(verify_independent_set(s, found->vectors, 1e-8).ok);
  }
}

TEST_CASE("planted pairs are recovered by most restarts") {
  // Spaces of dimension at most d; mid-range dimensions have spurious local minima.
  for (Eigen::Index d = 2; d <= 4; ++d) {
    int hits = 0, trials = 0;
    for (Eigen::Index dim = 2; dim <= d; ++dim) {
      for (std::uint64_t inst = 0; inst < 5; ++inst) {
        const OperatorSpace s = planted_pair_space(d, dim, 7919 * static_cast<std::uint64_t>(d) + 31 * dim + inst);
        REQUIRE(is_nc_graph(s));
        for (int t = 0; t < 20; ++t) {
          SearchOptions opts;
          opts.restarts = 1;
          opts.seed = static_cast<std::uint64_t>(t);
          if (alpha_lower_search(s, 2, opts)) ++hits;
          ++trials;
        }
      }
    }
    CAPTURE(d);
    CHECK(hits >= (9 * trials + 9) / 10);
  }
}

TEST_CASE("pair-dimension and hat bounds") {
  for (Eigen::Index d = 2; d <= 4; ++d) {
    CHECK(pair_dim_upper(full_space(d)) == 1);
    CHECK(pair_dim_upper(identity_space(d)) == d);
    CHECK(alpha_hat_upper(full_space(d)) == 1);
    CHECK(alpha_hat_upper(identity_space(d)) == d * d);
  }
  for (Eigen::Index d : {3, 4}) {
    CHECK(pair_dim_upper(delta_perp(d)) == 1);
    CHECK(alpha_hat_upper(delta_perp(d)) == 2);
  }
  // k(k−1) ≤ dim S⊥ = 10 gives k = 3 for C5.
  CHECK(pair_dim_upper(to_operator_space(cycle_graph(5))) == 3);

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const OperatorSpace s = random_nc_graph(3, 2, seed);
    const OperatorSpace t = random_supergraph(s, 1 + static_cast<Eigen::Index>(seed % 6), seed + 1);
    CHECK(pair_dim_upper(t) <= pair_dim_upper(s));
    CHECK(alpha_hat_upper(t) <= alpha_hat_upper(s));
  }
}

TEST_CASE("verify_kl_projector") {
  Rng rng(3);
  const ComplexMatrix u = random_unitary(3, rng);
  const ComplexMatrix p2 = u.leftCols(2) * u.leftCols(2).adjoint();
  const KlResult id = verify_kl_projector(identity_space(3), p2);
  CHECK(id.ok);
  CHECK(id.code_dim == 2);
  CHECK_FALSE(verify_kl_projector(full_space(3), p2).ok);

  const std::vector<ComplexMatrix> oz{ComplexMatrix::Identity(2, 2), pauli::z()};
  const OperatorSpace deph = span(oz);
  CHECK_FALSE(verify_kl_projector(deph, ComplexMatrix::Identity(2, 2)).ok);
  const ComplexMatrix p1 = u.col(0).head(2).normalized() * u.col(0).head(2).normalized().adjoint();
  const KlResult one = verify_kl_projector(deph, p1);
  CHECK(one.ok);
  CHECK(one.code_dim == 1);

  CHECK_THROWS_AS(verify_kl_projector(deph, 2.0 * p1), std::invalid_argument);
  CHECK_THROWS_AS(verify_kl_projector(deph, ComplexMatrix::Zero(2, 2)), std::invalid_argument);
}

TEST_CASE("bounds reports") {
  const BoundsReport c5 = bounds(to_operator_space(cycle_graph(5)));
  CHECK(c5.alpha_lower == 2);
  CHECK(c5.alpha_lower_exact);
  CHECK(c5.alpha_upper == 2);
  CHECK(std::abs(c5.theta_tilde_upper - std::sqrt(5.0)) <= 1e-5);

  const BoundsReport id2 = bounds(identity_space(2));
  CHECK(id2.alpha_lower == 2);
  CHECK(id2.alpha_upper == 2);
  CHECK(id2.alpha_tilde_upper == 4);
  CHECK(verify_independent_set(identity_space(2), id2.alpha_lower_witness).ok);

  const BoundsReport dp = bounds(delta_perp(4));
  CHECK(dp.alpha_lower == 1);
  CHECK(dp.alpha_upper == 1);
  CHECK(dp.pair_dim_upper == 1);
  CHECK(dp.alpha_hat_upper == 2);
  CHECK(dp.alpha_tilde_upper == 4);

  const BoundsReport full = bounds(full_space(3));
  CHECK(full.alpha_lower == 1);
  CHECK(full.alpha_upper == 1);

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const BoundsReport r = bounds(random_nc_graph(3, 2 + static_cast<Eigen::Index>(seed), seed));
    CHECK(r.alpha_lower <= r.alpha_upper);
    CHECK(r.alpha_lower <= r.alpha_tilde_upper);
    CHECK(r.alpha_lower <= r.alpha_hat_upper);
    CHECK(r.alpha_upper <= r.ambient_upper);
  }
}
