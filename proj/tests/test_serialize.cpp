#include "doctest.h"

#include "ncgraph/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

using namespace ncg;

namespace {

Json parse(const char* text) { return Json::parse(text); }

}  // namespace

TEST_CASE("round9") {
  CHECK(round9(2.2360679774997896) == 2.23606798);
  CHECK(round9(1.0) == 1.0);
  CHECK(round9(-0.000123456789123) == -0.000123456789);
  CHECK(std::isnan(round9(std::nan(""))));
}

TEST_CASE("matrices round-trip exactly") {
  Rng rng(1);
  const ComplexMatrix m = random_complex(3, 2, rng);
  CHECK(matrix_from_json(matrix_to_json(m)) == m);
  const ComplexMatrix back = matrix_from_json(Json::parse(matrix_to_json(m).dump()));
  CHECK(back == m);
  const ComplexVector v = m.col(0);
  CHECK(vector_from_json(vector_to_json(v)) == v);
  CHECK(matrix_artifact_from_json(matrix_to_json(m)) == m);
  const Json wrapped{{"kind", "matrix"}, {"matrix", matrix_to_json(m)}};
  CHECK(matrix_artifact_from_json(wrapped) == m);

  CHECK_THROWS_AS(matrix_from_json(parse("[[[1,0]],[[1,0],[2,0]]]")), ParseError);
  CHECK_THROWS_AS(matrix_from_json(parse("[[[1,0,0]]]")), ParseError);
  CHECK_THROWS_AS(matrix_from_json(parse("[[[\"a\",0]]]")), ParseError);
  CHECK_THROWS_AS(matrix_from_json(parse("[]")), ParseError);
}

TEST_CASE("graphs") {
  const Graph g = erdos_renyi(7, 0.5, 3);
  CHECK(graph_from_json(to_json(g)) == g);
  const Json c5 = to_json(cycle_graph(5));
  CHECK(c5.dump() == R"({"kind":"graph","n":5,"edges":[[0,1],[0,4],[1,2],[2,3],[3,4]]})");

  CHECK_THROWS_AS(graph_from_json(parse(R"({"kind":"graph","n":3,"edges":[[0,3]]})")), ParseError);
  CHECK_THROWS_AS(graph_from_json(parse(R"({"kind":"graph","n":3,"edges":[[1,1]]})")), ParseError);
  CHECK_THROWS_AS(graph_from_json(parse(R"({"kind":"graph","n":0,"edges":[]})")), ParseError);
  CHECK_THROWS_AS(graph_from_json(parse(R"({"kind":"graph","edges":[]})")), ParseError);
  CHECK_THROWS_AS(graph_from_json(parse(R"({"kind":"channel","n":2,"edges":[]})")), ParseError);
}

TEST_CASE("operator spaces") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const OperatorSpace s = random_nc_graph(3, 2 + static_cast<Eigen::Index>(seed), seed);
    const OperatorSpace back = space_from_json(to_json(s));
    CHECK(back.dim() == s.dim());
    CHECK(space_equal(back, s));
    CHECK(back.adjoint_closed());
    CHECK(back.contains_identity());
    // Re-orthonormalization is idempotent.
    const OperatorSpace again = space_from_json(to_json(back));
    REQUIRE(again.dim() == back.dim());
    for (Eigen::Index k = 0; k < back.dim(); ++k) CHECK((again.basis()[k] - back.basis()[k]).norm() <= 1e-10);
  }

  // Redundant, non-orthonormal input is reduced to an orthonormal basis.
  const Json redundant = parse(
      R"({"kind":"operator_space","dim":2,"basis":[
           [[[2,0],[0,0]],[[0,0],[2,0]]],
           [[[1,0],[0,0]],[[0,0],[1,0]]],
           [[[0,0],[3,0]],[[0,0],[0,0]]]]})");
  const OperatorSpace r = space_from_json(redundant);
  CHECK(r.dim() == 2);
  CHECK(r.contains(ComplexMatrix::Identity(2, 2)));
  CHECK(r.contains_identity());
  CHECK_FALSE(r.adjoint_closed());

  const Json rect = to_json(bipartite_space(random_channel(2, 3, 2, 4)));
  CHECK(rect.contains("rows"));
  const OperatorSpace rb = space_from_json(rect);
  CHECK(rb.rows() == 3);
  CHECK(rb.cols() == 2);

  CHECK_THROWS_AS(space_from_json(parse(R"({"kind":"operator_space","dim":2,"basis":[[[[1,0]]]]})")), ParseError);
  CHECK_THROWS_AS(space_from_json(parse(R"({"kind":"operator_space","dim":0,"basis":[]})")), ParseError);
  CHECK_THROWS_AS(space_from_json(parse(R"({"kind":"operator_space","dim":2})")), ParseError);
}

TEST_CASE("channels") {
  const QuantumChannel ch = random_channel(2, 3, 2, 9);
  const QuantumChannel back = channel_from_json(to_json(ch));
  REQUIRE(back.kraus().size() == ch.kraus().size());
  for (std::size_t k = 0; k < ch.kraus().size(); ++k) CHECK(back.kraus()[k] == ch.kraus()[k]);

  Json half = to_json(identity_channel(2));
  half["kraus"][0][0][0][0] = 0.5;
  half["kraus"][0][1][1][0] = 0.5;
  CHECK(kraus_from_json(half).size() == 1);
  CHECK_THROWS_AS(channel_from_json(half), NotTracePreserving);
  Json wrong_shape = to_json(identity_channel(2));
  wrong_shape["dim_out"] = 3;
  CHECK_THROWS_AS(channel_from_json(wrong_shape), ParseError);

  const ClassicalChannel cc = channel_from_graph(cycle_graph(5));
  const ClassicalChannel cb = classical_channel_from_json(to_json(cc));
  CHECK(cb.n_in == cc.n_in);
  CHECK(cb.n_out == cc.n_out);
  CHECK(cb.probs == cc.probs);
  Json bad = to_json(cc);
  bad["n_in"] = 4;
  CHECK_THROWS_AS(classical_channel_from_json(bad), ParseError);
}

TEST_CASE("lmi problems") {
  const LmiProblem p = theta_classical_program(cycle_graph(5));
  const Json j = to_json(p);
  const LmiProblem q = lmi_from_json(Json::parse(j.dump()));
  CHECK(q.num_vars == p.num_vars);
  CHECK(q.sense == p.sense);
  CHECK(q.objective == p.objective);
  REQUIRE(q.blocks.size() == p.blocks.size());
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    CHECK(q.blocks[b].f0 == p.blocks[b].f0);
    for (Eigen::Index i = 0; i < p.num_vars; ++i) {
      CHECK(RealMatrix(q.blocks[b].coeffs[i]) == RealMatrix(p.blocks[b].coeffs[i]));
    }
  }
  CHECK(to_json(q).dump() == j.dump());

  CHECK_THROWS_AS(lmi_from_json(parse(R"({"kind":"lmi","sense":"up","c":[1],"blocks":[]})")), ParseError);
  CHECK_THROWS_AS(lmi_from_json(parse(R"({"kind":"lmi","sense":"minimize","c":[1],
      "blocks":[{"F0":[[1,0],[0,1]],"Fi":[[[0,1],[0,0]]]}]})")),
                  ParseError);
  CHECK_THROWS_AS(lmi_from_json(parse(R"({"kind":"lmi","sense":"minimize","c":[1,2],
      "blocks":[{"F0":[[1]],"Fi":[[[1]]]}]})")),
                  ParseError);
}

TEST_CASE("results") {
  const ThetaResult r = theta_tilde(identity_space(2));
  const Json j = to_json(r);
  CHECK(j["kind"] == "theta_result");
  CHECK(std::abs(j["value"].get<double>() - 4.0) <= 1e-5);
  CHECK(j["value"].get<double>() == round9(r.value));
  CHECK(j["witness"].contains("y"));
  CHECK(j["witness"].contains("rho"));
  CHECK(j["solver_stats"]["solves"].get<int>() == r.stats.solves);

  const IndependentSetCandidate c{{ComplexVector::Unit(3, 0), ComplexVector::Unit(3, 2)}, 1e-17};
  const Json cj = to_json(c);
  CHECK(cj["kind"] == "independent_set");
  const auto vs = vectors_from_json(Json::parse(cj.dump()));
  REQUIRE(vs.size() == 2);
  CHECK(vs[1] == c.vectors[1]);
  CHECK(vectors_from_json(cj["vectors"]).size() == 2);
  CHECK_THROWS_AS(vectors_from_json(parse(R"({"kind":"independent_set","vectors":[]})")), ParseError);

  const BoundsReport b = bounds(to_operator_space(cycle_graph(5)));
  const Json bj = to_json(b);
  CHECK(bj["alpha_lower"] == 2);
  CHECK(bj["alpha_upper"] == 2);
  CHECK(vectors_from_json(bj["alpha_lower_witness"]).size() == 2);
}

TEST_CASE("artifacts and files") {
  CHECK(std::holds_alternative<Graph>(artifact_from_json(to_json(cycle_graph(4)))));
  CHECK(std::holds_alternative<OperatorSpace>(artifact_from_json(to_json(identity_space(2)))));
  CHECK(std::holds_alternative<QuantumChannel>(artifact_from_json(to_json(dephasing_channel(2)))));
  CHECK(std::holds_alternative<ClassicalChannel>(artifact_from_json(to_json(channel_from_graph(cycle_graph(5))))));
  CHECK_THROWS_AS(artifact_from_json(parse(R"({"kind":"lmi"})")), ParseError);
  CHECK_THROWS_AS(artifact_from_json(parse(R"({"n":3})")), ParseError);

  CHECK(space_equal(as_space(artifact_from_json(to_json(cycle_graph(5)))), to_operator_space(cycle_graph(5))));
  CHECK(space_equal(as_space(artifact_from_json(to_json(dephasing_channel(2)))),
                    confusability(dephasing_channel(2))));

  const auto path = std::filesystem::temp_directory_path() / "ncgraph_serialize_test.json";
  const Json g = to_json(erdos_renyi(6, 0.5, 2));
  write_json_file(path.string(), g);
  CHECK(read_json_file(path.string()) == g);
  std::FILE* f = std::fopen(path.string().c_str(), "w");
  std::fputs("{not json", f);
  std::fclose(f);
  CHECK_THROWS(read_json_file(path.string()));
  std::filesystem::remove(path);
  CHECK_THROWS(read_json_file(path.string()));
}
