#include "phaselift/eigensolver.hpp"

#include <algorithm>
#include <cmath>

#include "phaselift/error.hpp"
#include "phaselift/rng.hpp"

namespace phaselift {
namespace {

/// Orthonormalizes `block` against the first `used` columns of `basis` and
/// appends the surviving columns. Returns how many were appended.
Eigen::Index append_orthonormal(Eigen::MatrixXcd& basis, Eigen::Index used, Eigen::MatrixXcd block, Eigen::Index limit) {
  for (int pass = 0; pass < 2 && used > 0; ++pass) {
    block -= basis.leftCols(used) * (basis.leftCols(used).adjoint() * block);
  }
  Eigen::Index added = 0;
  for (Eigen::Index c = 0; c < block.cols() && used + added < limit; ++c) {
    Eigen::VectorXcd v = block.col(c);
    const double original = v.norm();
    if (original == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass) {
      v -= basis.leftCols(used + added) * (basis.leftCols(used + added).adjoint() * v);
    }
    const double norm = v.norm();
    if (norm <= 1e-10 * original) continue;
    basis.col(used + added) = v / norm;
    ++added;
  }
  return added;
}

Eigen::MatrixXcd random_block(Rng& rng, Eigen::Index n, Eigen::Index cols, bool real) {
  Eigen::MatrixXcd out(n, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index i = 0; i < n; ++i) out(i, c) = real ? cplx(rng.normal(), 0.0) : rng.complex_normal();
  }
  return out;
}

}  // namespace

EigenPairs top_eigenpairs(const HermitianAction& action, std::size_t n_size, int k, const Eigen::MatrixXcd& warm_start,
                          const EigenOptions& options) {
  if (k < 1) throw ArgumentError("top_eigenpairs: k must be >= 1");
  const auto n = static_cast<Eigen::Index>(n_size);
  const Eigen::Index want = std::min<Eigen::Index>(k, n);
  const Eigen::Index block = std::min<Eigen::Index>(n, want + std::max(0, options.extra_vectors));
  const Eigen::Index max_dim = std::min<Eigen::Index>(n, block * std::max(1, options.krylov_blocks));
  Rng rng(options.seed);

  auto apply = [&](const Eigen::MatrixXcd& v) {
    Eigen::MatrixXcd out = action(v);
    if (options.real_symmetric) out = out.real().cast<cplx>();
    return out;
  };

  Eigen::MatrixXcd start(n, 0);
  if (warm_start.cols() > 0) {
    if (warm_start.rows() != n) throw ArgumentError("top_eigenpairs: warm start has the wrong row count");
    start = options.real_symmetric ? Eigen::MatrixXcd(warm_start.real().cast<cplx>()) : warm_start;
    if (start.cols() > block) start = start.leftCols(block).eval();
  }

  EigenPairs result;
  for (int restart = 0; restart <= options.max_restarts; ++restart) {
    Eigen::MatrixXcd basis(n, max_dim);
    Eigen::MatrixXcd image(n, max_dim);
    Eigen::Index used = append_orthonormal(basis, 0, start, max_dim);
    if (used < block) used += append_orthonormal(basis, used, random_block(rng, n, block - used, options.real_symmetric), max_dim);

    Eigen::Index applied = 0;
    while (true) {
      const Eigen::Index fresh = used - applied;
      if (fresh > 0) {
        image.middleCols(applied, fresh) = apply(basis.middleCols(applied, fresh));
        result.matvecs += static_cast<int>(fresh);
      }
      const Eigen::Index prev = applied;
      applied = used;
      if (used >= max_dim) break;
      Eigen::Index added = append_orthonormal(basis, used, image.middleCols(prev, applied - prev), max_dim);
      if (added == 0) {
        // Invariant subspace reached; continue from fresh random directions.
        added = append_orthonormal(basis, used, random_block(rng, n, std::min(block, max_dim - used), options.real_symmetric), max_dim);
        if (added == 0) break;
      }
      used += added;
    }

    const Eigen::MatrixXcd q = basis.leftCols(used);
    const Eigen::MatrixXcd hq = image.leftCols(used);
    Eigen::MatrixXcd projected = q.adjoint() * hq;
    projected = (0.5 * (projected + projected.adjoint())).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(projected);
    if (eig.info() != Eigen::Success) throw EigensolverError("top_eigenpairs: Rayleigh-Ritz step failed");

    const Eigen::Index r = std::min(want, used);
    const Eigen::Index keep = std::min(block, used);
    Eigen::VectorXd theta(keep);
    Eigen::MatrixXcd coeffs(used, keep);
    for (Eigen::Index i = 0; i < keep; ++i) {
      theta[i] = eig.eigenvalues()[used - 1 - i];
      coeffs.col(i) = eig.eigenvectors().col(used - 1 - i);
    }
    const Eigen::MatrixXcd ritz = q * coeffs;
    const Eigen::MatrixXcd residual = hq * coeffs.leftCols(r) - ritz.leftCols(r) * theta.head(r).asDiagonal();
    const double scale = std::max(eig.eigenvalues().cwiseAbs().maxCoeff(), 1e-300);
    const Eigen::VectorXd res_norms = residual.colwise().norm().transpose();
    double worst = 0.0;
    for (Eigen::Index i = 0; i < r; ++i) {
      if (options.positive_only && theta[i] + res_norms[i] <= 0.0) continue;
      worst = std::max(worst, res_norms[i]);
    }

    result.values = theta.head(r);
    result.vectors = ritz.leftCols(r);
    result.restarts = restart;
    if (used == n || worst <= options.tolerance * scale) return result;
    start = ritz;
  }
  throw EigensolverError("top_eigenpairs: no convergence after " + std::to_string(options.max_restarts) + " restarts");
}

}  // namespace phaselift
