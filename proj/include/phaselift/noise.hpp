#pragma once

#include <cstdint>
#include <variant>

#include "phaselift/measurement.hpp"

namespace phaselift {

/// Noise model for intensity data. Poisson draws Poi(scale * mu) / scale, so
/// `scale` acts as a photon budget; Gaussian adds sigma_k * z_k.
using NoiseModel = std::variant<PoissonNoise, GaussianNoise>;

IntensityData corrupt(const IntensityData& clean, const NoiseModel& model, std::uint64_t seed);

/// 10 log10(||clean||^2 / ||noisy - clean||^2), saturating at kSnrCapDb.
inline constexpr double kSnrCapDb = 300.0;
double snr_db(const IntensityData& clean, const IntensityData& noisy);

/// Value and gradient with respect to mu of a negative log-likelihood.
struct NllValue {
  double value = 0.0;
  Eigen::VectorXd gradient;
};

/// sum_k (b_k - mu_k)^2 / (2 sigma_k^2). An empty sigma means all ones.
NllValue nll_gaussian(const Eigen::VectorXd& b, const Eigen::VectorXd& mu, const Eigen::VectorXd& sigma = {});

/// sum_k mu_k - b_k log mu_k with mu clamped below at poisson_floor(b).
NllValue nll_poisson(const Eigen::VectorXd& b, const Eigen::VectorXd& mu);

/// 1e-12 * max(max_k b_k, 1)
double poisson_floor(const Eigen::VectorXd& b);

}  // namespace phaselift
