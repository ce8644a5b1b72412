#include "ncgraph/independence.hpp"

#include "ncgraph/graph.hpp"
#include "ncgraph/theta.hpp"

#include <algorithm>
#include <cmath>

namespace ncg {

namespace {

ComplexMatrix frame_of(const std::vector<ComplexVector>& vectors, Eigen::Index d) {
  ComplexMatrix f(d, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t m = 0; m < vectors.size(); ++m) {
    if (vectors[m].size() != d) throw DimensionError("independent set: vector has wrong length");
    f.col(static_cast<Eigen::Index>(m)) = vectors[m];
  }
  return f;
}

// Σ_F Σ_{m≠m'} |φ_m† F φ_m'|², and its gradient with respect to the conjugate frame.
double penalty(const OperatorSpace& s, const ComplexMatrix& frame, ComplexMatrix* grad) {
  const Eigen::Index n = frame.cols();
  double f = 0.0;
  if (grad) grad->setZero(frame.rows(), n);
  for (const auto& op : s.basis()) {
    const ComplexMatrix fphi = op * frame;
    ComplexMatrix c = frame.adjoint() * fphi;
    c.diagonal().setZero();
    f += c.squaredNorm();
    if (grad) *grad += fphi * c.adjoint() + op.adjoint() * frame * c;
  }
  return f;
}

ComplexMatrix polar(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

// Real residual vector: Re/Im of φ_m† F φ_m' (m ≠ m') per F, then of Φ†Φ − 1.
RealVector lm_residual(const OperatorSpace& s, const ComplexMatrix& frame) {
  const Eigen::Index n = frame.cols();
  const Eigen::Index nf = static_cast<Eigen::Index>(s.basis().size());
  RealVector r(2 * (nf * n * (n - 1) + n * n));
  Eigen::Index k = 0;
  for (const auto& op : s.basis()) {
    const ComplexMatrix c = frame.adjoint() * op * frame;
    for (Eigen::Index a = 0; a < n; ++a) {
      for (Eigen::Index b = 0; b < n; ++b) {
        if (a == b) continue;
        r(k++) = c(a, b).real();
        r(k++) = c(a, b).imag();
      }
    }
  }
  const ComplexMatrix g = frame.adjoint() * frame - ComplexMatrix::Identity(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      r(k++) = g(a, b).real();
      r(k++) = g(a, b).imag();
    }
  }
  return r;
}

RealMatrix lm_jacobian(const OperatorSpace& s, const ComplexMatrix& frame) {
  const Eigen::Index d = frame.rows(), n = frame.cols();
  const Eigen::Index nf = static_cast<Eigen::Index>(s.basis().size());
  RealMatrix jac(2 * (nf * n * (n - 1) + n * n), 2 * d * n);
  const Complex iu(0.0, 1.0);
  // Column (i, m, part) perturbs Φ(i, m) by 1 (part 0) or i (part 1):
  // d(Φ†AΦ)_ab = δ_am conj(u) (AΦ)_ib + δ_bm u (Φ†A)_ai.
  auto fill_block = [&](Eigen::Index row0, const ComplexMatrix& left, const ComplexMatrix& right, bool skip_diag) {
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index m = 0; m < n; ++m) {
        for (int part = 0; part < 2; ++part) {
          const Complex u = part == 0 ? Complex(1.0) : iu;
          Eigen::Index k = row0;
          for (Eigen::Index a = 0; a < n; ++a) {
            for (Eigen::Index b = 0; b < n; ++b) {
              if (skip_diag && a == b) continue;
              Complex v = 0.0;
              if (a == m) v += std::conj(u) * right(i, b);
              if (b == m) v += u * left(a, i);
              jac(k++, 2 * (i * n + m) + part) = v.real();
              jac(k++, 2 * (i * n + m) + part) = v.imag();
            }
          }
        }
      }
    }
  };
  Eigen::Index row = 0;
  for (const auto& op : s.basis()) {
    fill_block(row, frame.adjoint() * op, op * frame, true);
    row += 2 * n * (n - 1);
  }
  fill_block(row, frame.adjoint(), frame, false);
  return jac;
}

// Levenberg-Marquardt on the penalty residuals, for frames already near a
// zero; gradient steps stall there when the zero is poorly conditioned.
ComplexMatrix lm_polish(const OperatorSpace& s, ComplexMatrix frame, int max_iter) {
  const Eigen::Index d = frame.rows(), n = frame.cols();
  RealVector r = lm_residual(s, frame);
  double cost = r.squaredNorm(), lambda = 1e-6;
  for (int it = 0; it < max_iter && cost > 1e-28; ++it) {
    const RealMatrix jac = lm_jacobian(s, frame);
    RealMatrix h = jac.transpose() * jac;
    const RealVector g = jac.transpose() * r;
    bool improved = false;
    for (int tries = 0; tries < 10 && !improved; ++tries) {
      RealMatrix damped = h;
      damped.diagonal().array() += lambda * (1.0 + h.diagonal().array());
      const RealVector step = damped.ldlt().solve(-g);
      ComplexMatrix trial = frame;
      for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index m = 0; m < n; ++m) {
          trial(i, m) += Complex(step(2 * (i * n + m)), step(2 * (i * n + m) + 1));
        }
      }
      const RealVector rt = lm_residual(s, trial);
      if (rt.squaredNorm() < cost) {
        frame = trial;
        r = rt;
        cost = rt.squaredNorm();
        lambda = std::max(1e-12, lambda / 10.0);
        improved = true;
      } else {
        lambda *= 10.0;
      }
    }
    if (!improved) break;
  }
  return frame;
}

}  // namespace

VerifyResult verify_independent_set(const OperatorSpace& s, const std::vector<ComplexVector>& vectors,
                                    double tol) {
  const Eigen::Index d = s.cols();
  const ComplexMatrix frame = frame_of(vectors, d);
  const Eigen::Index n = frame.cols();
  VerifyResult r;
  r.residual = (frame.adjoint() * frame - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  // proj(m, m')² = Σ_F |tr(F† φ_m φ_m'†)|² = Σ_F |φ_m'† F† φ_m|².
  RealMatrix proj = RealMatrix::Zero(n, n);
  for (const auto& op : s.basis()) {
    proj += (frame.adjoint() * op * frame).cwiseAbs2();
  }
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index mp = 0; mp < n; ++mp) {
      if (m != mp) r.residual = std::max(r.residual, std::sqrt(proj(m, mp)));
    }
  }
  r.ok = r.residual <= tol;
  return r;
}

std::optional<IndependentSetCandidate> alpha_lower_search(const OperatorSpace& s, int target_n,
                                                          const SearchOptions& opts) {
  if (!is_nc_graph(s)) throw std::invalid_argument("alpha_lower_search: not a non-commutative graph");
  const Eigen::Index d = s.ambient_dim();
  if (target_n < 1 || target_n > d) {
    throw std::invalid_argument("alpha_lower_search: target must lie in [1, d]");
  }
  Rng rng(opts.seed);
  ComplexMatrix grad;
  for (int restart = 0; restart < opts.restarts; ++restart) {
    ComplexMatrix frame = random_isometry(d, target_n, rng);
    double f = penalty(s, frame, &grad);
    for (int it = 0; it < opts.iters && f > 1e-24; ++it) {
      frame = polar(ComplexMatrix(frame - opts.step * grad));
      f = penalty(s, frame, &grad);
    }
    if (f > 1e-24 && f < 1e-3 && opts.polish_iters > 0) {
      frame = polar(lm_polish(s, frame, opts.polish_iters));
    }
    std::vector<ComplexVector> vectors;
    for (Eigen::Index m = 0; m < target_n; ++m) vectors.push_back(frame.col(m));
    const VerifyResult v = verify_independent_set(s, vectors, 1e-8);
    if (v.ok) return IndependentSetCandidate{std::move(vectors), v.residual};
  }
  return std::nullopt;
}

AlphaLower best_alpha_lower(const OperatorSpace& s, const SearchOptions& opts) {
  const Eigen::Index d = s.ambient_dim();
  AlphaLower out;
  if (const auto g = classical_graph_of(s); g && g->n() <= 30) {
    const IndependentSet is = alpha_brute(*g);
    out.size = is.size;
    out.exact = true;
    for (int v : is.vertices) {
      ComplexVector e = ComplexVector::Zero(d);
      e(v) = 1.0;
      out.vectors.push_back(std::move(e));
    }
    return out;
  }
  ComplexVector e0 = ComplexVector::Zero(d);
  e0(0) = 1.0;
  out.vectors = {e0};
  for (int k = 2; k <= d; ++k) {
    auto found = alpha_lower_search(s, k, opts);
    if (!found) break;
    out.size = k;
    out.vectors = std::move(found->vectors);
  }
  return out;
}

int pair_dim_upper(const OperatorSpace& s) {
  const Eigen::Index d = s.ambient_dim();
  const Eigen::Index perp = d * d - s.dim();
  Eigen::Index k = 1;
  while ((k + 1) * k <= perp) ++k;
  return static_cast<int>(std::min(k, d));
}

int alpha_hat_upper(const OperatorSpace& s) {
  const Eigen::Index d = s.ambient_dim();
  return static_cast<int>(1 + d * d - s.dim());
}

KlResult verify_kl_projector(const OperatorSpace& s, const ComplexMatrix& p, double tol) {
  if (p.rows() != s.cols() || p.cols() != s.cols()) {
    throw DimensionError("verify_kl_projector: projector has wrong shape");
  }
  if ((p - p.adjoint()).norm() > tol || (p * p - p).norm() > tol) {
    throw std::invalid_argument("verify_kl_projector: input is not an orthogonal projector");
  }
  const double rank = p.trace().real();
  if (rank < 0.5) throw std::invalid_argument("verify_kl_projector: zero projector");
  KlResult r;
  r.code_dim = static_cast<int>(std::llround(rank));
  for (const auto& f : s.basis()) {
    const ComplexMatrix pfp = p * f * p;
    const Complex lambda = pfp.trace() / rank;
    r.residual = std::max(r.residual, (pfp - lambda * p).norm());
  }
  r.ok = r.residual <= tol;
  return r;
}

BoundsReport bounds(const OperatorSpace& s, const BoundsOptions& opts) {
  if (!is_nc_graph(s)) throw std::invalid_argument("bounds: not a non-commutative graph");
  BoundsReport r;
  AlphaLower lower = best_alpha_lower(s, opts.search);
  r.alpha_lower = lower.size;
  r.alpha_lower_witness = std::move(lower.vectors);
  r.alpha_lower_exact = lower.exact;
  r.theta_tilde_upper = theta_tilde(s, opts.solver).value;
  r.alpha_tilde_upper = static_cast<int>(std::floor(r.theta_tilde_upper + 1e-6));
  r.pair_dim_upper = pair_dim_upper(s);
  r.alpha_hat_upper = alpha_hat_upper(s);
  r.ambient_upper = static_cast<int>(s.ambient_dim());
  r.alpha_upper = std::min({r.pair_dim_upper, r.alpha_tilde_upper, r.ambient_upper});
  return r;
}

}  // namespace ncg
