#include "ncgraph/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace ncg {

ComplexMatrix partial_trace(const ComplexMatrix& m, Eigen::Index dim_a, Eigen::Index dim_b,
                            TraceSide side) {
  if (dim_a < 1 || dim_b < 1 || m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b) {
    throw DimensionError("partial_trace: matrix is not (dimA*dimB) square");
  }
  if (side == TraceSide::TraceOutA) {
    ComplexMatrix out = ComplexMatrix::Zero(dim_b, dim_b);
    for (Eigen::Index a = 0; a < dim_a; ++a) {
      out += m.block(a * dim_b, a * dim_b, dim_b, dim_b);
    }
    return out;
  }
  ComplexMatrix out(dim_a, dim_a);
  for (Eigen::Index i = 0; i < dim_a; ++i) {
    for (Eigen::Index j = 0; j < dim_a; ++j) {
      out(i, j) = m.block(i * dim_b, j * dim_b, dim_b, dim_b).trace();
    }
  }
  return out;
}

double hermitian_asymmetry(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) {
    throw DimensionError("hermitian check: matrix is not square");
  }
  if (h.size() == 0) return 0.0;
  const double scale = 1.0 + h.cwiseAbs().maxCoeff();
  return (h - h.adjoint()).cwiseAbs().maxCoeff() / scale;
}

bool is_hermitian(const ComplexMatrix& h, double tol) {
  return h.rows() == h.cols() && hermitian_asymmetry(h) <= tol;
}

ComplexMatrix symmetrized(const ComplexMatrix& h, double tol) {
  const double asym = hermitian_asymmetry(h);
  if (asym > tol) {
    throw NotHermitianError(asym);
  }
  return (h + h.adjoint()) / 2.0;
}

EigDecomposition eigh(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(symmetrized(h));
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigh: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector eigvalsh(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(symmetrized(h), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigvalsh: eigensolver did not converge");
  }
  return solver.eigenvalues();
}

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

MaxEntangled max_entangled(Eigen::Index d) {
  if (d < 1) throw DimensionError("max_entangled: d must be positive");
  ComplexVector v = ComplexVector::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) v(i * d + i) = 1.0;
  ComplexMatrix p = v * v.adjoint();
  return {std::move(v), std::move(p)};
}

RealMatrix real_embed(const ComplexMatrix& h) {
  const ComplexMatrix s = symmetrized(h);
  const Eigen::Index n = s.rows();
  RealMatrix out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = s.real();
  out.topRightCorner(n, n) = -s.imag();
  out.bottomLeftCorner(n, n) = s.imag();
  out.bottomRightCorner(n, n) = s.real();
  return out;
}

std::vector<ComplexMatrix> gram_schmidt_hs(std::span<const ComplexMatrix> mats, double tol) {
  std::vector<ComplexMatrix> basis;
  if (mats.empty()) return basis;
  const Eigen::Index rows = mats.front().rows(), cols = mats.front().cols();
  for (const auto& m : mats) {
    if (m.rows() != rows || m.cols() != cols) {
      throw DimensionError("gram_schmidt_hs: inputs differ in shape");
    }
    const double input_norm = m.norm();
    ComplexMatrix v = m;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) {
        v -= hs_inner(q, v) * q;
      }
    }
    const double residual = v.norm();
    if (residual <= tol * (1.0 + input_norm)) continue;
    basis.push_back(v / residual);
  }
  return basis;
}

Eigen::Index hs_rank(std::span<const ComplexMatrix> mats, double tol) {
  const Eigen::Index k = static_cast<Eigen::Index>(mats.size());
  if (k == 0) return 0;
  ComplexMatrix gram(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) gram(i, j) = hs_inner(mats[i], mats[j]);
  }
  const RealVector ev = eigvalsh(gram);
  const double top = std::max(ev.cwiseAbs().maxCoeff(), 1.0);
  return static_cast<Eigen::Index>((ev.array() > tol * top).count());
}

ComplexMatrix matrix_unit(Eigen::Index rows, Eigen::Index cols, Eigen::Index i, Eigen::Index j) {
  ComplexMatrix m = ComplexMatrix::Zero(rows, cols);
  m(i, j) = 1.0;
  return m;
}

namespace pauli {
ComplexMatrix x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}
ComplexMatrix y() {
  ComplexMatrix m(2, 2);
  m << 0.0, Complex(0, -1), Complex(0, 1), 0.0;
  return m;
}
ComplexMatrix z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}
}  // namespace pauli

ComplexMatrix random_complex(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

ComplexMatrix random_hermitian(Eigen::Index d, Rng& rng) {
  const ComplexMatrix g = random_complex(d, d, rng);
  return (g + g.adjoint()) / 2.0;
}

ComplexMatrix random_isometry(Eigen::Index d, Eigen::Index d0, Rng& rng) {
  if (d0 > d) throw DimensionError("random_isometry: d0 > d");
  const ComplexMatrix g = random_complex(d, d0, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d0);
  return q;
}

ComplexMatrix random_unitary(Eigen::Index d, Rng& rng) { return random_isometry(d, d, rng); }

ComplexVector random_unit_vector(Eigen::Index d, Rng& rng) {
  ComplexVector v = random_complex(d, 1, rng);
  return v / v.norm();
}

}  // namespace ncg
