// Dense complex linear algebra shared by every ncgraph module.
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncg {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Rng = std::mt19937_64;

/// Relative threshold below which a Hilbert-Schmidt residual counts as zero.
/// Shared by Gram-Schmidt, span containment and rank decisions.
inline constexpr double kZeroTol = 1e-9;

/// Allowed asymmetry before a "Hermitian" input is rejected.
inline constexpr double kHermitianTol = 1e-10;

/// Largest ambient dimension produced by kron / tensor products.
inline constexpr Eigen::Index kMaxAmbientDim = 4096;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotHermitianError : public std::invalid_argument {
 public:
  explicit NotHermitianError(double asymmetry)
      : std::invalid_argument("matrix is not Hermitian (asymmetry " +
                              std::to_string(asymmetry) + ")"),
        asymmetry_(asymmetry) {}
  double asymmetry() const { return asymmetry_; }

 private:
  double asymmetry_;
};

/// Kronecker product, (a⊗b)[i*rb+k, j*cb+l] = a[i,j] b[k,l].
template <typename DA, typename DB>
Eigen::Matrix<typename Eigen::ScalarBinaryOpTraits<typename DA::Scalar,
                                                   typename DB::Scalar>::ReturnType,
              Eigen::Dynamic, Eigen::Dynamic>
kron(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using Scalar =
      typename Eigen::ScalarBinaryOpTraits<typename DA::Scalar, typename DB::Scalar>::ReturnType;
  const Eigen::Index rb = b.rows(), cb = b.cols();
  if (a.rows() * rb > kMaxAmbientDim || a.cols() * cb > kMaxAmbientDim) {
    throw DimensionError("kron: result exceeds maximum ambient dimension");
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * rb, a.cols() * cb);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * rb, j * cb, rb, cb) = Scalar(a(i, j)) * b.template cast<Scalar>();
    }
  }
  return out;
}

/// tr(x† y).
template <typename DX, typename DY>
Complex hs_inner(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw DimensionError("hs_inner: shape mismatch");
  }
  return Complex(x.template cast<Complex>().conjugate().cwiseProduct(
                     y.template cast<Complex>()).sum());
}

template <typename D>
double hs_norm(const Eigen::MatrixBase<D>& x) {
  return x.norm();
}

enum class TraceSide { TraceOutA, TraceOutB };

/// Partial trace of an operator on A⊗B (A is the major index).
ComplexMatrix partial_trace(const ComplexMatrix& m, Eigen::Index dim_a, Eigen::Index dim_b,
                            TraceSide side);

struct EigDecomposition {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // columns orthonormal
};

/// Largest entrywise |h - h†| relative to 1 + max |h|.
double hermitian_asymmetry(const ComplexMatrix& h);
bool is_hermitian(const ComplexMatrix& h, double tol = kHermitianTol);

/// (h + h†)/2, or NotHermitianError when the asymmetry exceeds tol.
ComplexMatrix symmetrized(const ComplexMatrix& h, double tol = kHermitianTol);

EigDecomposition eigh(const ComplexMatrix& h);
RealVector eigvalsh(const ComplexMatrix& h);

/// Largest singular value.
double operator_norm(const ComplexMatrix& m);

struct MaxEntangled {
  ComplexVector vector;    // Σ_i |i⟩|i⟩, unnormalized
  ComplexMatrix projector; // |Φ⟩⟨Φ|, trace d
};
MaxEntangled max_entangled(Eigen::Index d);

/// [[Re h, -Im h], [Im h, Re h]]; PSD iff h is.
RealMatrix real_embed(const ComplexMatrix& h);

/// Modified Gram-Schmidt under the HS inner product with one reorthogonalization
/// pass. Inputs whose residual is below tol * (1 + ‖input‖) are dropped.
std::vector<ComplexMatrix> gram_schmidt_hs(std::span<const ComplexMatrix> mats,
                                           double tol = kZeroTol);

/// Numerical rank of the HS Gram matrix of mats.
Eigen::Index hs_rank(std::span<const ComplexMatrix> mats, double tol = kZeroTol);

/// Matrix unit |i⟩⟨j| of shape rows x cols.
ComplexMatrix matrix_unit(Eigen::Index rows, Eigen::Index cols, Eigen::Index i, Eigen::Index j);

namespace pauli {
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

ComplexMatrix random_complex(Eigen::Index rows, Eigen::Index cols, Rng& rng);
ComplexMatrix random_hermitian(Eigen::Index d, Rng& rng);
/// Haar-ish isometry d x d0 from the QR factor of a Gaussian matrix.
ComplexMatrix random_isometry(Eigen::Index d, Eigen::Index d0, Rng& rng);
ComplexMatrix random_unitary(Eigen::Index d, Rng& rng);
ComplexVector random_unit_vector(Eigen::Index d, Rng& rng);

}  // namespace ncg
