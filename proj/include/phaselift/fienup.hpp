#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "phaselift/signal.hpp"

namespace phaselift {

enum class SpatialConstraint { Complex, Real, RealNonnegative };
enum class FienupStatus { Converged, Stagnated, MaxIters };

std::string to_string(FienupStatus status);
std::string to_string(SpatialConstraint constraint);
SpatialConstraint spatial_constraint_from_string(const std::string& name);

struct FienupConfig {
  Shape signal_shape{1};
  std::vector<std::size_t> support;  ///< flat indices; empty means the whole signal
  std::size_t oversample = 2;
  int max_iters = 5000;
  double tol_residual = 1e-3;    ///< ||  |F x| - y || / ||y||
  double tol_stagnation = 1e-6;  ///< ||x_k - x_{k-1}|| / ||x_k||
  SpatialConstraint constraint = SpatialConstraint::RealNonnegative;
  std::uint64_t seed = 0;
};

struct FienupResult {
  ComplexSignal x;         ///< best iterate by residual
  double residual = 0.0;   ///< relative Fourier magnitude residual of x
  int iterations = 0;
  FienupStatus status = FienupStatus::MaxIters;
  std::vector<double> residual_trace;
};

/// Error reduction: alternate the spatial projection (support and realness
/// or nonnegativity) with Fourier magnitude replacement on the oversampled
/// grid. `y` holds magnitudes |x^| on that grid. A random complex Gaussian
/// guess on the support is drawn from the seed unless `initial` is given.
FienupResult error_reduction(const Eigen::VectorXd& y, const FienupConfig& config, const ComplexSignal* initial = nullptr);

/// Spatial projection used by error_reduction.
Eigen::VectorXcd project_spatial(const Eigen::VectorXcd& x, const std::vector<bool>& in_support, SpatialConstraint constraint);

}  // namespace phaselift
