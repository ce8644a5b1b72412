#include "ncgraph/operator_space.hpp"

#include <cmath>

namespace ncg {

OperatorSpace::OperatorSpace(Eigen::Index rows, Eigen::Index cols) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw DimensionError("OperatorSpace: dimensions must be positive");
  compute_flags();
}

OperatorSpace OperatorSpace::from_orthonormal(Eigen::Index rows, Eigen::Index cols,
                                              std::vector<ComplexMatrix> basis) {
  OperatorSpace s(rows, cols);
  for (const auto& f : basis) {
    if (f.rows() != rows || f.cols() != cols) {
      throw DimensionError("OperatorSpace: basis element has wrong shape");
    }
  }
  if (static_cast<Eigen::Index>(basis.size()) > rows * cols) {
    throw DimensionError("OperatorSpace: more basis elements than the ambient dimension");
  }
  s.basis_ = std::move(basis);
  s.compute_flags();
  return s;
}

ComplexMatrix OperatorSpace::project(const ComplexMatrix& x) const {
  if (x.rows() != rows_ || x.cols() != cols_) {
    throw DimensionError("project: dimension mismatch");
  }
  ComplexMatrix out = ComplexMatrix::Zero(rows_, cols_);
  for (const auto& f : basis_) out += hs_inner(f, x) * f;
  return out;
}

bool OperatorSpace::contains(const ComplexMatrix& x, double tol) const {
  return (x - project(x)).norm() <= tol * (1.0 + x.norm());
}

void OperatorSpace::compute_flags() {
  adjoint_closed_ = false;
  contains_identity_ = false;
  if (!is_square()) return;
  contains_identity_ = contains(ComplexMatrix::Identity(rows_, cols_));
  adjoint_closed_ = true;
  for (const auto& f : basis_) {
    if (!contains(f.adjoint())) {
      adjoint_closed_ = false;
      break;
    }
  }
}

OperatorSpace span_rect(Eigen::Index rows, Eigen::Index cols, std::span<const ComplexMatrix> mats,
                        double tol) {
  for (const auto& m : mats) {
    if (m.rows() != rows || m.cols() != cols) {
      throw DimensionError("span: mixed dimensions");
    }
  }
  return OperatorSpace::from_orthonormal(rows, cols, gram_schmidt_hs(mats, tol));
}

OperatorSpace span(std::span<const ComplexMatrix> mats, double tol) {
  if (mats.empty()) throw DimensionError("span: empty generating set has no ambient dimension");
  const Eigen::Index d = mats.front().rows();
  for (const auto& m : mats) {
    if (m.rows() != d || m.cols() != d) throw DimensionError("span: mixed dimensions");
  }
  return span_rect(d, d, mats, tol);
}

bool contains(const OperatorSpace& s, const ComplexMatrix& x, double tol) {
  return s.contains(x, tol);
}

bool is_nc_graph(const OperatorSpace& s) {
  return s.is_square() && s.contains_identity() && s.adjoint_closed();
}

OperatorSpace identity_space(Eigen::Index d) {
  return OperatorSpace::from_orthonormal(
      d, d, {ComplexMatrix::Identity(d, d) / std::sqrt(static_cast<double>(d))});
}

OperatorSpace full_space(Eigen::Index d) {
  std::vector<ComplexMatrix> units;
  units.reserve(d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) units.push_back(matrix_unit(d, d, i, j));
  }
  return OperatorSpace::from_orthonormal(d, d, std::move(units));
}

OperatorSpace orth_complement(const OperatorSpace& s) {
  const Eigen::Index r = s.rows(), c = s.cols();
  // Gram-Schmidt of the matrix units against S keeps complements of
  // matrix-unit spaces (classical graphs) sparse.
  std::vector<ComplexMatrix> work = s.basis();
  std::vector<ComplexMatrix> comp;
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) {
      if (static_cast<Eigen::Index>(work.size()) == r * c) break;
      ComplexMatrix v = matrix_unit(r, c, i, j);
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& q : work) v -= hs_inner(q, v) * q;
      }
      const double res = v.norm();
      if (res <= 1e-6) continue;
      v /= res;
      work.push_back(v);
      comp.push_back(std::move(v));
    }
  }
  if (static_cast<Eigen::Index>(work.size()) != r * c) {
    throw std::runtime_error("orth_complement: failed to complete the basis");
  }
  return OperatorSpace::from_orthonormal(r, c, std::move(comp));
}

OperatorSpace nc_complement(const OperatorSpace& s) {
  if (!s.is_square()) throw DimensionError("nc_complement: space must be square");
  const Eigen::Index d = s.rows();
  std::vector<ComplexMatrix> with_one = s.basis();
  with_one.push_back(ComplexMatrix::Identity(d, d));
  // S⊥ ∩ 1⊥ = (S + C1)⊥.
  std::vector<ComplexMatrix> gens = orth_complement(span(with_one)).basis();
  gens.push_back(ComplexMatrix::Identity(d, d));
  return span(gens);
}

OperatorSpace intersection(const OperatorSpace& s1, const OperatorSpace& s2) {
  if (s1.rows() != s2.rows() || s1.cols() != s2.cols()) throw DimensionError("intersection: shapes differ");
  std::vector<ComplexMatrix> gens = orth_complement(s1).basis();
  const std::vector<ComplexMatrix> more = orth_complement(s2).basis();
  gens.insert(gens.end(), more.begin(), more.end());
  return orth_complement(span_rect(s1.rows(), s1.cols(), gens));
}

std::vector<ComplexMatrix> hermitian_basis(const OperatorSpace& s) {
  if (!s.adjoint_closed()) {
    throw std::invalid_argument("hermitian_basis: space is not closed under adjoints");
  }
  std::vector<ComplexMatrix> out;
  const Complex two_i(0.0, 2.0);
  auto add = [&](ComplexMatrix v) {
    const double input_norm = v.norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : out) v -= hs_inner(q, v).real() * q;
    }
    const double res = v.norm();
    if (res <= kZeroTol * (1.0 + input_norm)) return;
    v /= res;
    out.push_back((v + v.adjoint()) / 2.0);
  };
  for (const auto& f : s.basis()) {
    if (static_cast<Eigen::Index>(out.size()) == s.dim()) break;
    add((f + f.adjoint()) / 2.0);
    if (static_cast<Eigen::Index>(out.size()) == s.dim()) break;
    add((f - f.adjoint()) / two_i);
  }
  return out;
}

OperatorSpace tensor(const OperatorSpace& s1, const OperatorSpace& s2) {
  if (s1.rows() * s2.rows() > kMaxAmbientDim || s1.cols() * s2.cols() > kMaxAmbientDim) {
    throw DimensionError("tensor: ambient dimension overflow");
  }
  std::vector<ComplexMatrix> basis;
  basis.reserve(s1.dim() * s2.dim());
  for (const auto& f : s1.basis()) {
    for (const auto& g : s2.basis()) basis.push_back(kron(f, g));
  }
  return OperatorSpace::from_orthonormal(s1.rows() * s2.rows(), s1.cols() * s2.cols(),
                                         std::move(basis));
}

namespace {

ComplexMatrix embed_block(const ComplexMatrix& m, Eigen::Index d, Eigen::Index row0,
                          Eigen::Index col0) {
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  out.block(row0, col0, m.rows(), m.cols()) = m;
  return out;
}

void require_square(const OperatorSpace& s, const char* what) {
  if (!s.is_square()) throw DimensionError(std::string(what) + ": space is not square");
}

}  // namespace

OperatorSpace direct_sum(const OperatorSpace& s1, const OperatorSpace& s2) {
  require_square(s1, "direct_sum");
  require_square(s2, "direct_sum");
  const Eigen::Index d1 = s1.ambient_dim(), d = d1 + s2.ambient_dim();
  std::vector<ComplexMatrix> basis;
  basis.reserve(s1.dim() + s2.dim());
  for (const auto& f : s1.basis()) basis.push_back(embed_block(f, d, 0, 0));
  for (const auto& g : s2.basis()) basis.push_back(embed_block(g, d, d1, d1));
  return OperatorSpace::from_orthonormal(d, d, std::move(basis));
}

OperatorSpace complete_union(const OperatorSpace& s1, const OperatorSpace& s2) {
  require_square(s1, "complete_union");
  require_square(s2, "complete_union");
  const Eigen::Index d1 = s1.ambient_dim(), d2 = s2.ambient_dim(), d = d1 + d2;
  std::vector<ComplexMatrix> basis = direct_sum(s1, s2).basis();
  for (Eigen::Index i = 0; i < d1; ++i) {
    for (Eigen::Index j = 0; j < d2; ++j) {
      basis.push_back(matrix_unit(d, d, i, d1 + j));
      basis.push_back(matrix_unit(d, d, d1 + j, i));
    }
  }
  return OperatorSpace::from_orthonormal(d, d, std::move(basis));
}

OperatorSpace induced_subgraph(const OperatorSpace& s, const ComplexMatrix& u) {
  require_square(s, "induced_subgraph");
  if (u.rows() != s.ambient_dim() || u.cols() > u.rows()) {
    throw DimensionError("induced_subgraph: isometry has wrong shape");
  }
  const Eigen::Index d0 = u.cols();
  if ((u.adjoint() * u - ComplexMatrix::Identity(d0, d0)).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("induced_subgraph: u is not an isometry");
  }
  std::vector<ComplexMatrix> gens;
  gens.reserve(s.dim());
  for (const auto& f : s.basis()) gens.push_back(u.adjoint() * f * u);
  return span_rect(d0, d0, gens);
}

OperatorSpace distance_graph(const OperatorSpace& s, int t) {
  require_square(s, "distance_graph");
  if (t < 1) throw std::invalid_argument("distance_graph: t must be at least 1");
  OperatorSpace cur = s;
  const Eigen::Index d = s.ambient_dim();
  for (int step = 1; step < t; ++step) {
    if (cur.dim() == d * d) break;
    std::vector<ComplexMatrix> gens;
    gens.reserve(cur.dim() * s.dim());
    for (const auto& a : cur.basis()) {
      for (const auto& f : s.basis()) gens.push_back(a * f);
    }
    cur = span_rect(d, d, gens);
  }
  return cur;
}

bool space_leq(const OperatorSpace& s1, const OperatorSpace& s2, double tol) {
  if (s1.rows() != s2.rows() || s1.cols() != s2.cols()) {
    throw DimensionError("space_leq: dimension mismatch");
  }
  for (const auto& f : s1.basis()) {
    if (!s2.contains(f, tol)) return false;
  }
  return true;
}

bool space_equal(const OperatorSpace& s1, const OperatorSpace& s2, double tol) {
  return s1.dim() == s2.dim() && space_leq(s1, s2, tol) && space_leq(s2, s1, tol);
}

namespace {

// Appends random Hermitian directions to basis until it holds target elements.
void grow_hermitian(std::vector<ComplexMatrix>& basis, Eigen::Index d, Eigen::Index target,
                    Rng& rng) {
  while (static_cast<Eigen::Index>(basis.size()) < target) {
    ComplexMatrix h = random_hermitian(d, rng);
    const double input_norm = h.norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) h -= hs_inner(q, h) * q;
    }
    const double res = h.norm();
    if (res <= 1e-6 * (1.0 + input_norm)) continue;
    basis.push_back(h / res);
  }
}

}  // namespace

OperatorSpace random_nc_graph(Eigen::Index d, Eigen::Index dim, std::uint64_t seed) {
  if (d < 1 || dim < 1 || dim > d * d) {
    throw std::invalid_argument("random_nc_graph: need 1 <= dim <= d^2");
  }
  if (dim == d * d) return full_space(d);
  Rng rng(seed);
  std::vector<ComplexMatrix> basis = identity_space(d).basis();
  grow_hermitian(basis, d, dim, rng);
  return OperatorSpace::from_orthonormal(d, d, std::move(basis));
}

OperatorSpace random_supergraph(const OperatorSpace& s, Eigen::Index extra, std::uint64_t seed) {
  require_square(s, "random_supergraph");
  const Eigen::Index d = s.ambient_dim();
  const Eigen::Index target = std::min(s.dim() + extra, d * d);
  Rng rng(seed);
  std::vector<ComplexMatrix> basis = s.basis();
  grow_hermitian(basis, d, target, rng);
  return OperatorSpace::from_orthonormal(d, d, std::move(basis));
}

}  // namespace ncg
