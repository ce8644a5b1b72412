#include "ncgraph/lmi.hpp"

#include <algorithm>
#include <tuple>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace ncg {

LmiBlock::LmiBlock(Eigen::Index size, Eigen::Index num_vars)
    : f0(RealMatrix::Zero(size, size)), coeffs(num_vars, SparseMatrix(size, size)) {}

void LmiBlock::set_coeff(Eigen::Index var, const RealMatrix& m) {
  if (m.rows() != size() || m.cols() != size()) {
    throw DimensionError("LmiBlock::set_coeff: wrong shape");
  }
  coeffs.at(var) = m.sparseView(0.0, 0.0);
  coeffs[var].makeCompressed();
}

LmiProblem::LmiProblem(Eigen::Index m, Sense s)
    : num_vars(m), objective(RealVector::Zero(m)), sense(s) {}

void LmiProblem::check() const {
  if (objective.size() != num_vars) throw std::invalid_argument("LmiProblem: objective length");
  for (const auto& b : blocks) {
    const Eigen::Index n = b.size();
    if (b.f0.cols() != n) throw std::invalid_argument("LmiProblem: F0 is not square");
    if (static_cast<Eigen::Index>(b.coeffs.size()) != num_vars) {
      throw std::invalid_argument("LmiProblem: coefficient count differs from num_vars");
    }
    const double scale0 = 1.0 + b.f0.cwiseAbs().maxCoeff();
    if ((b.f0 - b.f0.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale0) {
      throw std::invalid_argument("LmiProblem: F0 is not symmetric");
    }
    for (const auto& f : b.coeffs) {
      if (f.rows() != n || f.cols() != n) throw std::invalid_argument("LmiProblem: Fi shape");
      if (f.nonZeros() == 0) continue;
      const SparseMatrix diff = f - SparseMatrix(f.transpose());
      double asym = 0.0, scale = 0.0;
      for (Eigen::Index k = 0; k < diff.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(diff, k); it; ++it) {
          asym = std::max(asym, std::abs(it.value()));
        }
      }
      for (Eigen::Index k = 0; k < f.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(f, k); it; ++it) {
          scale = std::max(scale, std::abs(it.value()));
        }
      }
      if (asym > 1e-10 * (1.0 + scale)) throw std::invalid_argument("LmiProblem: Fi not symmetric");
    }
  }
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::IterationLimit: return "IterationLimit";
    case SolveStatus::PrimalInfeasible: return "PrimalInfeasible";
    case SolveStatus::DualInfeasible: return "DualInfeasible";
    case SolveStatus::NumericalTrouble: return "NumericalTrouble";
  }
  return "Unknown";
}

namespace {

struct Triplets {
  std::vector<int> row;
  std::vector<int> col;
  std::vector<double> val;
  double fro = 0.0;

  // Lower triangle only, off-diagonal values doubled, column-major offsets.
  std::vector<int> lower_idx;
  std::vector<double> lower_val;

  std::size_t nnz() const { return val.size(); }

  // F•P for symmetric P.
  double dot_sym(const RealMatrix& p) const {
    const double* d = p.data();
    double s = 0.0;
    for (std::size_t t = 0; t < lower_val.size(); ++t) s += lower_val[t] * d[lower_idx[t]];
    return s;
  }

  double dot(const RealMatrix& k) const {
    double s = 0.0;
    for (std::size_t t = 0; t < val.size(); ++t) s += val[t] * k(row[t], col[t]);
    return s;
  }
  void add_to(RealMatrix& out, double a) const {
    for (std::size_t t = 0; t < val.size(); ++t) out(row[t], col[t]) += a * val[t];
  }
};

Triplets to_triplets(const SparseMatrix& f) {
  Triplets t;
  for (Eigen::Index k = 0; k < f.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(f, k); it; ++it) {
      if (it.value() == 0.0) continue;
      t.row.push_back(static_cast<int>(it.row()));
      t.col.push_back(static_cast<int>(it.col()));
      t.val.push_back(it.value());
      t.fro += it.value() * it.value();
    }
  }
  t.fro = std::sqrt(t.fro);
  for (std::size_t q = 0; q < t.val.size(); ++q) {
    if (t.row[q] < t.col[q]) continue;
    t.lower_idx.push_back(t.row[q] + t.col[q] * static_cast<int>(f.rows()));
    t.lower_val.push_back(t.row[q] == t.col[q] ? t.val[q] : 2.0 * t.val[q]);
  }
  return t;
}

struct Block {
  Eigen::Index n = 0;
  RealMatrix f0;
  std::vector<Eigen::Index> vars;  // global indices of active variables
  std::vector<Triplets> mats;
  enum class Route { Outer, Gemm, Svec } route = Route::Outer;

  // Iterates.
  RealMatrix x, z;
  // Residual F0 + Σ y F − Z.
  RealMatrix rz;
  // NT scaling: W = G Gᵀ, Gᵀ Z G = G⁻¹ X G⁻ᵀ = diag(lambda).
  RealMatrix g, w;
  RealVector lambda;
};

struct Direction {
  RealVector dy;
  std::vector<RealMatrix> dxs;  // scaled dX̃ per block
  std::vector<RealMatrix> dzs;  // scaled dZ̃ per block
  std::vector<RealMatrix> dz;   // unscaled dZ per block
};

class NumericalFailure : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

RealMatrix lyap_inverse(const RealVector& lambda, const RealMatrix& r) {
  RealMatrix out(r.rows(), r.cols());
  for (Eigen::Index j = 0; j < r.cols(); ++j) {
    for (Eigen::Index i = 0; i < r.rows(); ++i) {
      out(i, j) = 2.0 * r(i, j) / (lambda(i) + lambda(j));
    }
  }
  return out;
}

// Largest step α with diag(lambda) + α d ⪰ 0 (infinity if unbounded).
double max_step(const RealVector& lambda, const RealMatrix& d) {
  const RealVector s = lambda.cwiseSqrt().cwiseInverse();
  RealMatrix scaled = s.asDiagonal() * d * s.asDiagonal();
  scaled = (scaled + scaled.transpose()) / 2.0;
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(scaled, Eigen::EigenvaluesOnly);
  const double nu = es.eigenvalues()(0);
  if (nu >= 0.0) return std::numeric_limits<double>::infinity();
  return -1.0 / nu;
}

void compute_scaling(Block& b) {
  Eigen::LLT<RealMatrix> lx(b.x), lz(b.z);
  if (lx.info() != Eigen::Success || lz.info() != Eigen::Success) {
    throw NumericalFailure("iterate lost positive definiteness");
  }
  const RealMatrix lxm = lx.matrixL();
  const RealMatrix lzm = lz.matrixL();
  Eigen::BDCSVD<RealMatrix> svd(lzm.transpose() * lxm, Eigen::ComputeFullV);
  b.lambda = svd.singularValues();
  if ((b.lambda.array() <= 0.0).any()) throw NumericalFailure("degenerate NT scaling");
  b.g = lxm * svd.matrixV() * b.lambda.cwiseSqrt().cwiseInverse().asDiagonal();
  b.w = b.g * b.g.transpose();
}

// Accumulates Σ_b Fi(b)•(W Fj(b) W) into the lower triangle of m.
void add_schur(const Block& b, RealMatrix& m) {
  const Eigen::Index k = static_cast<Eigen::Index>(b.vars.size());
  if (k == 0) return;
  const Eigen::Index n = b.n;
  if (b.route != Block::Route::Svec) {
    RealMatrix p(n, n), t(n, n);
    for (Eigen::Index a = 0; a < k; ++a) {
      const Triplets& fa = b.mats[a];
      if (b.route == Block::Route::Outer) {
        p.setZero();
        for (std::size_t q = 0; q < fa.nnz(); ++q) {
          p.noalias() += fa.val[q] * b.w.col(fa.row[q]) * b.w.col(fa.col[q]).transpose();
        }
      } else {
        t.setZero();
        for (std::size_t q = 0; q < fa.nnz(); ++q) t.row(fa.row[q]) += fa.val[q] * b.w.row(fa.col[q]);
        p.noalias() = b.w * t;
      }
      for (Eigen::Index c = a; c < k; ++c) {
        const double v = b.mats[c].dot_sym(p);
        const Eigen::Index gi = b.vars[a], gj = b.vars[c];
        m(std::max(gi, gj), std::min(gi, gj)) += v;
      }
    }
    return;
  }
  const Eigen::Index len = n * (n + 1) / 2;
  RealMatrix rows(k, len);
  RealMatrix t(n, n), ft(n, n);
  const double root2 = std::sqrt(2.0);
  for (Eigen::Index a = 0; a < k; ++a) {
    t.setZero();
    const Triplets& fa = b.mats[a];
    for (std::size_t q = 0; q < fa.nnz(); ++q) t.row(fa.row[q]) += fa.val[q] * b.g.row(fa.col[q]);
    ft.noalias() = b.g.transpose() * t;
    Eigen::Index pos = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      rows(a, pos++) = ft(j, j);
      for (Eigen::Index i = j + 1; i < n; ++i) rows(a, pos++) = root2 * 0.5 * (ft(i, j) + ft(j, i));
    }
  }
  RealMatrix local = RealMatrix::Zero(k, k);
  local.selfadjointView<Eigen::Lower>().rankUpdate(rows);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index c = a; c < k; ++c) {
      const Eigen::Index gi = b.vars[a], gj = b.vars[c];
      m(std::max(gi, gj), std::min(gi, gj)) += local(c, a);
    }
  }
}

double frob(const std::vector<RealMatrix>& ms) {
  double s = 0.0;
  for (const auto& m : ms) s += m.squaredNorm();
  return std::sqrt(s);
}

}  // namespace

Validation validate(const LmiProblem& p, const RealVector& y) {
  if (y.size() != p.num_vars) throw DimensionError("validate: y has wrong length");
  Validation v;
  v.objective = p.objective.dot(y);
  for (const auto& b : p.blocks) {
    RealMatrix s = b.f0;
    for (Eigen::Index i = 0; i < p.num_vars; ++i) {
      if (b.coeffs[i].nonZeros() == 0 || y(i) == 0.0) continue;
      s += y(i) * RealMatrix(b.coeffs[i]);
    }
    s = (s + s.transpose()) / 2.0;
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(s, Eigen::EigenvaluesOnly);
    v.min_block_eigs.push_back(es.eigenvalues()(0));
  }
  return v;
}

LmiSolution solve(const LmiProblem& p, const SolverOptions& opts) {
  p.check();
  const Eigen::Index m = p.num_vars;
  const RealVector c = p.sense == Sense::Minimize ? p.objective : RealVector(-p.objective);

  LmiSolution sol;
  sol.y = RealVector::Zero(m);

  if (m == 0) {
    const Validation v = validate(p, sol.y);
    sol.min_block_eigs = v.min_block_eigs;
    const bool feasible = std::all_of(v.min_block_eigs.begin(), v.min_block_eigs.end(),
                                      [&](double e) { return e >= -opts.feas_tol; });
    sol.status = feasible ? SolveStatus::Optimal : SolveStatus::PrimalInfeasible;
    return sol;
  }

  std::vector<Block> blocks;
  Eigen::Index total_n = 0;
  double f0_norm = 0.0;
  for (const auto& pb : p.blocks) {
    Block b;
    b.n = pb.size();
    b.f0 = (pb.f0 + pb.f0.transpose()) / 2.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (pb.coeffs[i].nonZeros() == 0) continue;
      Triplets t = to_triplets(pb.coeffs[i]);
      if (t.nnz() == 0) continue;
      b.vars.push_back(i);
      b.mats.push_back(std::move(t));
    }
    const double k = static_cast<double>(b.vars.size());
    double nnz = 0.0;
    for (const auto& t : b.mats) nnz += static_cast<double>(t.nnz());
    const double avg = k > 0 ? nnz / k : 0.0;
    const double n = static_cast<double>(b.n);
    // Rough flop counts, weighted for memory-bound rank-1 updates and
    // scattered triplet dots against blocked BLAS-3 kernels.
    const double outer_cost = 4.0 * k * avg * n * n + k * k * avg;
    const double gemm_cost = k * (avg * n + 2.0 * n * n * n) + k * k * avg;
    const double svec_cost = k * (avg * n + 2.0 * n * n * n) + 0.5 * k * k * n * n;
    if (outer_cost <= std::min(gemm_cost, svec_cost)) {
      b.route = Block::Route::Outer;
    } else {
      b.route = gemm_cost <= svec_cost ? Block::Route::Gemm : Block::Route::Svec;
    }

    // Starting point in the style of SDPT3's infeasible start.
    double xi = std::max(10.0, std::sqrt(n));
    double eta = std::max({10.0, std::sqrt(n), b.f0.norm()});
    for (std::size_t a = 0; a < b.vars.size(); ++a) {
      xi = std::max(xi, n * (1.0 + std::abs(c(b.vars[a]))) / (1.0 + b.mats[a].fro));
      eta = std::max(eta, b.mats[a].fro);
    }
    b.x = xi * RealMatrix::Identity(b.n, b.n);
    b.z = eta * RealMatrix::Identity(b.n, b.n);
    total_n += b.n;
    f0_norm += b.f0.squaredNorm();
    blocks.push_back(std::move(b));
  }
  f0_norm = std::sqrt(f0_norm);
  const double c_norm = c.norm();

  double x0_norm = 0.0, z0_norm = 0.0;
  for (const auto& b : blocks) {
    x0_norm += b.x.squaredNorm();
    z0_norm += b.z.squaredNorm();
  }
  x0_norm = std::sqrt(x0_norm);
  z0_norm = std::sqrt(z0_norm);

  RealVector y = RealVector::Zero(m);
  RealVector r(m);
  const double nn = static_cast<double>(total_n);

  auto finish = [&](SolveStatus status, int iter) {
    sol.y = y;
    sol.status = status;
    sol.iterations = iter;
    const Validation v = validate(p, y);
    sol.value = v.objective;
    sol.min_block_eigs = v.min_block_eigs;
    sol.dual.clear();
    for (const auto& b : blocks) sol.dual.push_back(b.x);
    return sol;
  };

  for (int iter = 0; iter <= opts.max_iter; ++iter) {
    // Residuals and objective values.
    r = c;
    double pobj = c.dot(y), dobj = 0.0, xz = 0.0;
    std::vector<RealMatrix> rzs;
    for (auto& b : blocks) {
      b.rz = b.f0 - b.z;
      for (std::size_t a = 0; a < b.vars.size(); ++a) {
        b.mats[a].add_to(b.rz, y(b.vars[a]));
        r(b.vars[a]) -= b.mats[a].dot(b.x);
      }
      dobj -= b.f0.cwiseProduct(b.x).sum();
      xz += b.x.cwiseProduct(b.z).sum();
      rzs.push_back(b.rz);
    }
    const double mu = xz / nn;
    const double pinf = frob(rzs) / (1.0 + f0_norm);
    const double dinf = r.norm() / (1.0 + c_norm);
    const double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj));
    sol.gap = gap;
    sol.primal_infeasibility = pinf;
    sol.dual_infeasibility = dinf;
    sol.bound = p.sense == Sense::Minimize ? dobj : -dobj;
    sol.gap_history.push_back(gap);
    if (opts.verbose) {
      std::fprintf(stderr, "iter %3d  pobj % .10e  dobj % .10e  gap %.2e  pinf %.2e  dinf %.2e\n",
                   iter, pobj, dobj, gap, pinf, dinf);
    }

    if (gap <= opts.gap_tol && pinf <= opts.feas_tol && dinf <= opts.feas_tol) {
      const Validation v = validate(p, y);
      const bool feasible = std::all_of(v.min_block_eigs.begin(), v.min_block_eigs.end(),
                                        [&](double e) { return e >= -opts.feas_tol; });
      if (feasible) return finish(SolveStatus::Optimal, iter);
    }
    if (iter == opts.max_iter) return finish(SolveStatus::IterationLimit, iter);

    double xnorm = 0.0, znorm = 0.0;
    for (const auto& b : blocks) {
      xnorm += b.x.squaredNorm();
      znorm += b.z.squaredNorm();
    }
    if (std::sqrt(xnorm) > 1e8 * std::max(1.0, x0_norm)) {
      return finish(SolveStatus::PrimalInfeasible, iter);
    }
    if (std::sqrt(znorm) > 1e8 * std::max(1.0, z0_norm) || y.norm() > 1e8 * std::max(1.0, z0_norm)) {
      return finish(SolveStatus::DualInfeasible, iter);
    }

    try {
      for (auto& b : blocks) compute_scaling(b);
    } catch (const NumericalFailure&) {
      return finish(SolveStatus::NumericalTrouble, iter);
    }

    RealMatrix schur = RealMatrix::Zero(m, m);
    for (const auto& b : blocks) add_schur(b, schur);
    Eigen::LLT<RealMatrix, Eigen::Lower> chol(schur);
    if (chol.info() != Eigen::Success) {
      const double shift = 1e-13 * std::max(1.0, schur.diagonal().cwiseAbs().maxCoeff());
      schur.diagonal().array() += shift;
      chol.compute(schur);
      if (chol.info() != Eigen::Success) return finish(SolveStatus::NumericalTrouble, iter);
    }

    std::vector<RealMatrix> rz_scaled;
    for (const auto& b : blocks) rz_scaled.push_back(b.g.transpose() * b.rz * b.g);

    auto direction = [&](const std::vector<RealMatrix>& rc) {
      Direction d;
      RealVector rhs = -r;
      std::vector<RealMatrix> lyap;
      for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        const Block& b = blocks[bi];
        lyap.push_back(lyap_inverse(b.lambda, rc[bi]));
        const RealMatrix k = b.g * (lyap.back() - rz_scaled[bi]) * b.g.transpose();
        for (std::size_t a = 0; a < b.vars.size(); ++a) rhs(b.vars[a]) += b.mats[a].dot(k);
      }
      d.dy = chol.solve(rhs);
      auto fill = [&] {
        d.dzs.clear();
        d.dxs.clear();
        d.dz.clear();
        for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
          const Block& b = blocks[bi];
          RealMatrix dz = b.rz;
          for (std::size_t a = 0; a < b.vars.size(); ++a) b.mats[a].add_to(dz, d.dy(b.vars[a]));
          RealMatrix dzs = b.g.transpose() * dz * b.g;
          dzs = (dzs + dzs.transpose()) / 2.0;
          RealMatrix dxs = lyap[bi] - dzs;
          dxs = (dxs + dxs.transpose()) / 2.0;
          d.dzs.push_back(std::move(dzs));
          d.dxs.push_back(std::move(dxs));
          d.dz.push_back(std::move(dz));
        }
      };
      fill();
      // Iterative refinement against the operator actually applied to dX;
      // the formed Schur matrix drifts from it as W becomes ill-conditioned.
      // Stops once a pass no longer halves the residual, keeping the better dy.
      double last = std::numeric_limits<double>::infinity();
      RealVector prev;
      for (int pass = 0; pass < 10; ++pass) {
        RealVector e = -r;
        for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
          const Block& b = blocks[bi];
          const RealMatrix dx = b.g * d.dxs[bi] * b.g.transpose();
          for (std::size_t a = 0; a < b.vars.size(); ++a) e(b.vars[a]) += b.mats[a].dot(dx);
        }
        const double en = e.norm();
        if (en > last) {
          d.dy = prev;
          fill();
          break;
        }
        if (en <= 1e-15 * (1.0 + r.norm()) || en > 0.5 * last) break;
        last = en;
        prev = d.dy;
        d.dy += chol.solve(e);
        fill();
      }
      return d;
    };
    auto step_lengths = [&](const Direction& d) {
      double ap = std::numeric_limits<double>::infinity(), ad = ap;
      for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        ap = std::min(ap, max_step(blocks[bi].lambda, d.dxs[bi]));
        ad = std::min(ad, max_step(blocks[bi].lambda, d.dzs[bi]));
      }
      return std::pair{ap, ad};
    };

    // Predictor.
    std::vector<RealMatrix> rc;
    for (const auto& b : blocks) rc.push_back(-RealMatrix(b.lambda.cwiseAbs2().asDiagonal()));
    const Direction aff = direction(rc);
    auto [ap_aff, ad_aff] = step_lengths(aff);
    ap_aff = std::min(1.0, ap_aff);
    ad_aff = std::min(1.0, ad_aff);
    double xz_aff = 0.0;
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
      const RealMatrix xa = RealMatrix(blocks[bi].lambda.asDiagonal()) + ap_aff * aff.dxs[bi];
      const RealMatrix za = RealMatrix(blocks[bi].lambda.asDiagonal()) + ad_aff * aff.dzs[bi];
      xz_aff += xa.cwiseProduct(za).sum();
    }
    const double mu_aff = xz_aff / nn;
    const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

    // Corrector.
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
      const RealMatrix prod = aff.dxs[bi] * aff.dzs[bi];
      rc[bi] = sigma * mu * RealMatrix::Identity(blocks[bi].n, blocks[bi].n) -
               RealMatrix(blocks[bi].lambda.cwiseAbs2().asDiagonal()) - 0.5 * (prod + prod.transpose());
    }
    Direction dir = direction(rc);
    auto [ap, ad] = step_lengths(dir);
    if (ap < 1e-8 && ad < 1e-8) {
      // The corrector stalled; fall back to a pure centering step.
      for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        rc[bi] = mu * RealMatrix::Identity(blocks[bi].n, blocks[bi].n) -
                 RealMatrix(blocks[bi].lambda.cwiseAbs2().asDiagonal());
      }
      dir = direction(rc);
      std::tie(ap, ad) = step_lengths(dir);
    }
    ap = std::min(1.0, opts.step_fraction * ap);
    ad = std::min(1.0, opts.step_fraction * ad);
    if (ap < 1e-12 && ad < 1e-12) return finish(SolveStatus::NumericalTrouble, iter);

    y += ad * dir.dy;
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
      Block& b = blocks[bi];
      b.x += ap * (b.g * dir.dxs[bi] * b.g.transpose());
      b.z += ad * dir.dz[bi];
      b.x = (b.x + b.x.transpose()) / 2.0;
      b.z = (b.z + b.z.transpose()) / 2.0;
    }
  }
  return finish(SolveStatus::IterationLimit, opts.max_iter);
}

}  // namespace ncg
