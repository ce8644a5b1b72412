#include "ncgraph/channel.hpp"

#include <cmath>

namespace ncg {

double trace_preservation_residual(const std::vector<ComplexMatrix>& kraus) {
  if (kraus.empty()) throw DimensionError("channel: Kraus list is empty");
  const Eigen::Index din = kraus.front().cols(), dout = kraus.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(din, din);
  for (const auto& e : kraus) {
    if (e.rows() != dout || e.cols() != din) {
      throw DimensionError("channel: Kraus operators differ in shape");
    }
    sum += e.adjoint() * e;
  }
  return (sum - ComplexMatrix::Identity(din, din)).norm();
}

QuantumChannel QuantumChannel::make(std::vector<ComplexMatrix> kraus, double tol) {
  const double residual = trace_preservation_residual(kraus);
  const Eigen::Index din = kraus.front().cols(), dout = kraus.front().rows();
  if (residual > tol * static_cast<double>(din)) throw NotTracePreserving(residual);
  return QuantumChannel(din, dout, std::move(kraus));
}

QuantumChannel make_channel(std::vector<ComplexMatrix> kraus, double tol) {
  return QuantumChannel::make(std::move(kraus), tol);
}

ClassicalChannel ClassicalChannel::make(RealMatrix probs) {
  if (probs.rows() < 1 || probs.cols() < 1) {
    throw DimensionError("classical channel: empty transition matrix");
  }
  if ((probs.array() < 0.0).any()) {
    throw std::invalid_argument("classical channel: negative probability");
  }
  for (Eigen::Index x = 0; x < probs.cols(); ++x) {
    if (std::abs(probs.col(x).sum() - 1.0) > 1e-12) {
      throw std::invalid_argument("classical channel: column " + std::to_string(x) +
                                  " does not sum to 1");
    }
  }
  ClassicalChannel out;
  out.n_in = static_cast<int>(probs.cols());
  out.n_out = static_cast<int>(probs.rows());
  out.probs = std::move(probs);
  return out;
}

ComplexMatrix apply(const QuantumChannel& ch, const ComplexMatrix& rho) {
  if (rho.rows() != ch.dim_in() || rho.cols() != ch.dim_in()) {
    throw DimensionError("apply: state has wrong shape");
  }
  ComplexMatrix out = ComplexMatrix::Zero(ch.dim_out(), ch.dim_out());
  for (const auto& e : ch.kraus()) out += e * rho * e.adjoint();
  return out;
}

ComplexMatrix heisenberg(const QuantumChannel& ch, const ComplexMatrix& x) {
  if (x.rows() != ch.dim_out() || x.cols() != ch.dim_out()) {
    throw DimensionError("heisenberg: observable has wrong shape");
  }
  ComplexMatrix out = ComplexMatrix::Zero(ch.dim_in(), ch.dim_in());
  for (const auto& e : ch.kraus()) out += e.adjoint() * x * e;
  return out;
}

OperatorSpace confusability(const QuantumChannel& ch) {
  std::vector<ComplexMatrix> gens;
  gens.reserve(ch.kraus().size() * ch.kraus().size());
  for (const auto& ej : ch.kraus()) {
    for (const auto& ek : ch.kraus()) gens.push_back(ej.adjoint() * ek);
  }
  return span(gens);
}

QuantumChannel complementary(const QuantumChannel& ch) {
  const Eigen::Index env = static_cast<Eigen::Index>(ch.kraus().size());
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(ch.dim_out());
  for (Eigen::Index b = 0; b < ch.dim_out(); ++b) {
    ComplexMatrix f(env, ch.dim_in());
    for (Eigen::Index j = 0; j < env; ++j) f.row(j) = ch.kraus()[j].row(b);
    kraus.push_back(std::move(f));
  }
  return QuantumChannel::make(std::move(kraus), 1e-8);
}

OperatorSpace bipartite_space(const QuantumChannel& ch) {
  return span_rect(ch.dim_out(), ch.dim_in(), ch.kraus());
}

OperatorSpace products_span(const OperatorSpace& z) {
  std::vector<ComplexMatrix> gens;
  for (const auto& x : z.basis()) {
    for (const auto& y : z.basis()) gens.push_back(x.adjoint() * y);
  }
  return span_rect(z.cols(), z.cols(), gens);
}

QuantumChannel from_classical(const ClassicalChannel& nc) {
  std::vector<ComplexMatrix> kraus;
  for (int x = 0; x < nc.n_in; ++x) {
    for (int y = 0; y < nc.n_out; ++y) {
      const double p = nc.probs(y, x);
      if (p <= 0.0) continue;
      ComplexMatrix e = ComplexMatrix::Zero(nc.n_out, nc.n_in);
      e(y, x) = std::sqrt(p);
      kraus.push_back(std::move(e));
    }
  }
  return QuantumChannel::make(std::move(kraus), 1e-8);
}

ClassicalChannel channel_from_graph(const Graph& g) {
  const auto edges = g.edges();
  int isolated = 0;
  for (int v = 0; v < g.n(); ++v) isolated += g.degree(v) == 0 ? 1 : 0;
  const int n_out = static_cast<int>(edges.size()) + isolated;
  RealMatrix probs = RealMatrix::Zero(n_out, g.n());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [u, v] = edges[e];
    probs(static_cast<Eigen::Index>(e), u) = 1.0 / g.degree(u);
    probs(static_cast<Eigen::Index>(e), v) = 1.0 / g.degree(v);
  }
  int next_private = static_cast<int>(edges.size());
  for (int v = 0; v < g.n(); ++v) {
    if (g.degree(v) == 0) probs(next_private++, v) = 1.0;
  }
  // Column sums of 1/deg terms can miss 1 by an ulp; renormalize exactly.
  for (Eigen::Index x = 0; x < probs.cols(); ++x) probs.col(x) /= probs.col(x).sum();
  return ClassicalChannel::make(std::move(probs));
}

QuantumChannel compose(const QuantumChannel& post, const QuantumChannel& ch) {
  if (post.dim_in() != ch.dim_out()) throw DimensionError("compose: dimension mismatch");
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(post.kraus().size() * ch.kraus().size());
  for (const auto& p : post.kraus()) {
    for (const auto& e : ch.kraus()) kraus.push_back(p * e);
  }
  return QuantumChannel::make(std::move(kraus), 1e-8);
}

QuantumChannel tensor(const QuantumChannel& a, const QuantumChannel& b) {
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(a.kraus().size() * b.kraus().size());
  for (const auto& e : a.kraus()) {
    for (const auto& f : b.kraus()) kraus.push_back(kron(e, f));
  }
  return QuantumChannel::make(std::move(kraus), 1e-8);
}

QuantumChannel identity_channel(Eigen::Index d) {
  return QuantumChannel::make({ComplexMatrix::Identity(d, d)});
}

QuantumChannel constant_channel(Eigen::Index din, Eigen::Index dout) {
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index a = 0; a < din; ++a) kraus.push_back(matrix_unit(dout, din, 0, a));
  return QuantumChannel::make(std::move(kraus));
}

QuantumChannel dephasing_channel(Eigen::Index d) {
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index b = 0; b < d; ++b) kraus.push_back(matrix_unit(d, d, b, b));
  return QuantumChannel::make(std::move(kraus));
}

QuantumChannel random_channel(Eigen::Index din, Eigen::Index dout, int num_kraus,
                              std::uint64_t seed) {
  if (num_kraus < 1 || dout * num_kraus < din) {
    throw std::invalid_argument("random_channel: dout * num_kraus must be at least din");
  }
  Rng rng(seed);
  const ComplexMatrix v = random_isometry(dout * num_kraus, din, rng);
  std::vector<ComplexMatrix> kraus;
  for (int j = 0; j < num_kraus; ++j) kraus.push_back(v.middleRows(j * dout, dout));
  return QuantumChannel::make(std::move(kraus), 1e-8);
}

}  // namespace ncg
