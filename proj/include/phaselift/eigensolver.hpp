#pragma once

#include <cstdint>
#include <functional>

#include <Eigen/Dense>

namespace phaselift {

/// out = H * in for a Hermitian operator H, applied to a block of columns.
using HermitianAction = std::function<Eigen::MatrixXcd(const Eigen::MatrixXcd&)>;

struct EigenOptions {
  int extra_vectors = 6;        ///< block size = k + extra_vectors
  int krylov_blocks = 3;        ///< depth of the block Krylov space per restart
  int max_restarts = 60;
  double tolerance = 1e-10;     ///< residual tolerance relative to the spectral scale
  bool real_symmetric = false;  ///< restrict to the real part of H on real vectors
  /// Only positive Ritz values must converge; a pair whose residual bound
  /// keeps it at or below zero is accepted as is.
  bool positive_only = false;
  std::uint64_t seed = 0;
};

struct EigenPairs {
  Eigen::VectorXd values;  ///< descending
  Eigen::MatrixXcd vectors;
  int restarts = 0;
  int matvecs = 0;
};

/// Algebraically largest k eigenpairs of a Hermitian action on C^n (or R^n
/// when real_symmetric). `warm_start` columns seed the first Krylov block.
/// Restarted block Krylov iteration with Rayleigh-Ritz; once the search
/// space reaches n the decomposition is exact. Throws EigensolverError when
/// the residuals do not converge.
EigenPairs top_eigenpairs(const HermitianAction& action, std::size_t n, int k, const Eigen::MatrixXcd& warm_start,
                          const EigenOptions& options);

}  // namespace phaselift
