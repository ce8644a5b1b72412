// JSON encodings shared by the CLI and tests.
//
// Complex matrices are row-major nested arrays of [re, im] pairs. Every
// artifact carries a "kind" tag. Reported scalars are rounded to 9
// significant digits; matrix and probability entries keep full precision so
// that artifacts round-trip exactly.
#pragma once

#include "ncgraph/channel.hpp"
#include "ncgraph/graph.hpp"
#include "ncgraph/independence.hpp"
#include "ncgraph/lmi.hpp"
#include "ncgraph/operator_space.hpp"
#include "ncgraph/theta.hpp"

#include "json.hpp"

#include <stdexcept>
#include <string>
#include <variant>

namespace ncg {

using Json = nlohmann::ordered_json;

class ParseError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

double round9(double x);

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);
Json real_matrix_to_json(const RealMatrix& m);
RealMatrix real_matrix_from_json(const Json& j);
Json vector_to_json(const ComplexVector& v);
ComplexVector vector_from_json(const Json& j);

Json to_json(const OperatorSpace& s);
Json to_json(const QuantumChannel& ch);
Json to_json(const ClassicalChannel& ch);
Json to_json(const Graph& g);
Json to_json(const LmiProblem& p);
Json to_json(const ThetaResult& r);
Json to_json(const IndependentSetCandidate& c);
Json to_json(const BoundsReport& r);

/// Re-orthonormalizes the basis and recomputes flags.
OperatorSpace space_from_json(const Json& j);
/// Kraus list of a "channel" artifact, without the trace-preservation check.
std::vector<ComplexMatrix> kraus_from_json(const Json& j);
QuantumChannel channel_from_json(const Json& j);
ClassicalChannel classical_channel_from_json(const Json& j);
Graph graph_from_json(const Json& j);
LmiProblem lmi_from_json(const Json& j);
std::vector<ComplexVector> vectors_from_json(const Json& j);
/// A bare matrix, or {"kind":"matrix","matrix":...}.
ComplexMatrix matrix_artifact_from_json(const Json& j);

using Artifact = std::variant<Graph, OperatorSpace, QuantumChannel, ClassicalChannel>;

Artifact artifact_from_json(const Json& j);
/// Graphs lift via to_operator_space, channels via confusability.
OperatorSpace as_space(const Artifact& a);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace ncg
