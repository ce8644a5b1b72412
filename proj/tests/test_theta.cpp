#include "doctest.h"

#include "ncgraph/channel.hpp"
#include "ncgraph/theta.hpp"

#include <cmath>

using namespace ncg;

namespace {

OperatorSpace delta_perp(Eigen::Index d) {
  ComplexMatrix delta = -ComplexMatrix::Identity(d, d);
  delta(0, 0) = static_cast<double>(d - 1);
  const std::vector<ComplexMatrix> one{delta};
  return orth_complement(span(one));
}

OperatorSpace duan_space(Eigen::Index d) {
  const OperatorSpace id2 = identity_space(2);
  const OperatorSpace diag = tensor(id2, identity_space(d));
  const OperatorSpace off = tensor(orth_complement(id2), full_space(d));
  std::vector<ComplexMatrix> gens = diag.basis();
  gens.insert(gens.end(), off.basis().begin(), off.basis().end());
  return span(gens);
}

}  // namespace

TEST_CASE("theta_classical on small graphs") {
  CHECK(theta_classical(empty_graph(4)).value == doctest::Approx(4.0).epsilon(1e-7));
  CHECK(theta_classical(complete_graph(5)).value == doctest::Approx(1.0).epsilon(1e-7));
  const ThetaResult c5 = theta_classical(cycle_graph(5));
  CHECK(std::abs(c5.value - std::sqrt(5.0)) <= 1e-6);
  CHECK(std::abs(*c5.primal_value - std::sqrt(5.0)) <= 1e-6);
  CHECK(c5.stats.min_validated_eig >= -1e-8);
  CHECK(theta_classical(empty_graph(1)).value == 1.0);
}

TEST_CASE("theta_classical matches the closed form for odd cycles") {
  // Lovász: ϑ(C_n) = n cos(π/n) / (1 + cos(π/n)) for odd n.
  for (int n : {5, 7, 9}) {
    const double c = std::cos(M_PI / n);
    CHECK(std::abs(theta_classical(cycle_graph(n)).value - n * c / (1 + c)) <= 1e-6);
  }
}

TEST_CASE("theta_tilde: complete and trivial graphs") {
  for (Eigen::Index d : {2, 3}) {
    const ThetaResult r = theta_tilde(full_space(d));
    CHECK(std::abs(r.value - 1.0) <= 1e-6);
    CHECK(theta_tilde_primal(full_space(d)).value == doctest::Approx(1.0).epsilon(1e-7));
  }
  CHECK(theta_tilde(full_space(1)).value == 1.0);
  const ThetaResult id2 = theta_tilde(identity_space(2));
  CHECK(std::abs(id2.value - 4.0) <= 1e-5);
  CHECK(std::abs(*id2.primal_value - 4.0) <= 1e-5);
}

TEST_CASE("theta_tilde of the pentagon equals the classical value") {
  const ThetaResult r = theta_tilde(to_operator_space(cycle_graph(5)));
  CHECK(std::abs(r.value - std::sqrt(5.0)) <= 1e-5);
  CHECK(r.gap <= 1e-5);
}

TEST_CASE("theta_tilde witnesses are feasible") {
  const OperatorSpace s = random_nc_graph(3, 4, 17);
  const ThetaResult r = theta_tilde(s);
  REQUIRE(r.witness.y);
  REQUIRE(r.witness.rho);
  REQUIRE(r.witness.t_prime);
  const ComplexMatrix& y = *r.witness.y;
  const OperatorSpace ext = tensor(s, full_space(3));
  CHECK(ext.contains(y, 1e-8));
  CHECK(eigvalsh(y - max_entangled(3).projector)(0) >= -1e-7);
  CHECK(eigvalsh(partial_trace(y, 3, 3, TraceSide::TraceOutA)).maxCoeff() <= r.value + 1e-9);

  const OperatorSpace ext_perp = tensor(orth_complement(s), full_space(3));
  CHECK(ext_perp.contains(*r.witness.t_prime, 1e-8));
  const ComplexMatrix joint = kron(ComplexMatrix::Identity(3, 3), *r.witness.rho) + *r.witness.t_prime;
  CHECK(eigvalsh(joint)(0) >= -1e-7);
  CHECK(std::abs(r.witness.rho->trace() - 1.0) <= 1e-12);
  const ComplexVector phi = max_entangled(3).vector;
  CHECK(std::abs(phi.dot(joint * phi).real() - *r.primal_value) <= 1e-6);
}

TEST_CASE("theta_tilde: the Δ example reaches d") {
  for (Eigen::Index d : {3, 4}) {
    CHECK(std::abs(theta_tilde(delta_perp(d)).value - static_cast<double>(d)) <= 1e-4);
  }
}

TEST_CASE("theta_tilde: Duan graph") {
  const OperatorSpace s = duan_space(2);
  REQUIRE(s.ambient_dim() == 4);
  REQUIRE(is_nc_graph(s));
  CHECK(std::abs(theta_tilde(s).value - 4.0) <= 1e-3);
}

TEST_CASE("theta_tilde: primal and dual agree on random graphs") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Eigen::Index d = 2 + static_cast<Eigen::Index>(seed % 2);
    const Eigen::Index dim = 1 + static_cast<Eigen::Index>(seed % (d * d - 1));
    const OperatorSpace s = random_nc_graph(d, dim, seed);
    const ThetaResult p = theta_tilde_primal(s), q = theta_tilde_dual(s);
    CHECK(std::abs(*p.primal_value - *q.dual_value) <= 1e-5 * (1 + *q.dual_value));
    CHECK(*q.dual_value >= 1.0 - 1e-6);
    CHECK(*q.dual_value <= static_cast<double>(d * d) + 1e-6);
  }
}

TEST_CASE("theta_tilde is multiplicative on the pentagon") {
  const OperatorSpace c5 = to_operator_space(cycle_graph(5));
  const OperatorSpace c5sq = to_operator_space(strong_product(cycle_graph(5), cycle_graph(5)));
  CHECK(space_equal(tensor(c5, c5), c5sq));
  // ϑ(C5 ⊠ C5) = 5; the classical program is the cheap route to the tensor square.
  CHECK(std::abs(theta_classical(strong_product(cycle_graph(5), cycle_graph(5))).value - 5.0) <= 1e-3);
}

TEST_CASE("theta_naive_lower") {
  CHECK(theta_naive_lower(full_space(3)).value == 1.0);

  const NaiveResult c5 = theta_naive_lower(to_operator_space(cycle_graph(5)));
  CHECK(c5.value >= std::sqrt(5.0) - 1e-4);
  CHECK(c5.value <= std::sqrt(5.0) + 1e-6);
  for (std::size_t k = 1; k < c5.trace.size(); ++k) CHECK(c5.trace[k] >= c5.trace[k - 1] - 1e-9);

  // ϑ(1_2 ⊗ L(C^2)) = 4 is attained at the maximally entangled vector.
  const OperatorSpace ext = tensor(identity_space(2), full_space(2));
  const NaiveResult r = theta_naive_lower(ext);
  CHECK(r.value >= 4.0 - 1e-3);
  CHECK(orth_complement(ext).contains(r.t, 1e-8));
  CHECK(eigvalsh(ComplexMatrix::Identity(4, 4) + r.t)(0) >= -1e-12);
  CHECK(std::abs(operator_norm(ComplexMatrix::Identity(4, 4) + r.t) - r.value) <= 1e-9);
}

TEST_CASE("theta_naive_lower never exceeds theta_tilde") {
  for (std::uint64_t seed = 3; seed <= 7; ++seed) {
    const OperatorSpace s = random_nc_graph(3, 3, seed);
    NaiveOptions opts;
    opts.seed = seed;
    CHECK(theta_naive_lower(s, opts).value <= theta_tilde(s).value + 1e-4);
  }
}

TEST_CASE("identity_witness") {
  CHECK(identity_witness(1).norm() == 0.0);
  for (Eigen::Index d = 2; d <= 4; ++d) {
    const ComplexMatrix t = identity_witness(d);
    const ComplexMatrix one = ComplexMatrix::Identity(d * d, d * d);
    CHECK(tensor(orth_complement(identity_space(d)), full_space(d)).contains(t, 1e-9));
    const RealVector ev = eigvalsh(one + t);
    CHECK(ev(0) >= -1e-9);
    CHECK(std::abs(ev(0)) <= 1e-9);
    CHECK(std::abs(operator_norm(one + t) - static_cast<double>(d * d)) <= 1e-9);
    // Blockwise: tr_A[(1⊗X) T] = 0 means each d×d block of T along A is traceless against 1.
    CHECK(partial_trace(t, d, d, TraceSide::TraceOutA).norm() <= 1e-9);
  }
}

TEST_CASE("capacity_report") {
  const CapacityReport c5 = capacity_report(to_operator_space(cycle_graph(5)));
  CHECK(std::abs(c5.c0e_upper - std::log2(std::sqrt(5.0))) <= 1e-5);
  CHECK(c5.alpha_lower == 2);
  CHECK(c5.c0_single_letter_lower == doctest::Approx(1.0));

  CHECK(std::abs(capacity_report(identity_space(2)).c0e_upper - 2.0) <= 1e-5);
  CHECK(std::abs(capacity_report(full_space(3)).c0e_upper) <= 1e-6);
}

TEST_CASE("theta functions reject non-graphs") {
  const std::vector<ComplexMatrix> z{pauli::z()};
  CHECK_THROWS_AS(theta_tilde(span(z)), std::invalid_argument);
  CHECK_THROWS_AS(theta_naive_lower(span(z)), std::invalid_argument);
}
