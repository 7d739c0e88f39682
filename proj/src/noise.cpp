#include "phaselift/noise.hpp"

#include <algorithm>
#include <cmath>

#include "phaselift/error.hpp"
#include "phaselift/rng.hpp"

namespace phaselift {

IntensityData corrupt(const IntensityData& clean, const NoiseModel& model, std::uint64_t seed) {
  if (!std::holds_alternative<CleanNoise>(clean.noise)) throw ArgumentError("corrupt: input data is already noisy");
  Rng rng(seed);
  IntensityData out{clean.values, CleanNoise{}};
  if (const auto* poisson = std::get_if<PoissonNoise>(&model)) {
    if (!(poisson->scale > 0.0)) throw ArgumentError("corrupt: Poisson scale must be positive");
    for (Eigen::Index k = 0; k < out.values.size(); ++k) {
      const double mu = clean.values[k];
      if (mu < 0.0) throw ArgumentError("corrupt: negative intensity under Poisson noise");
      out.values[k] = static_cast<double>(rng.poisson(poisson->scale * mu)) / poisson->scale;
    }
    out.noise = *poisson;
    return out;
  }
  const auto& gauss = std::get<GaussianNoise>(model);
  if (gauss.sigma.size() != clean.values.size()) throw ShapeError("corrupt: sigma length mismatch");
  if ((gauss.sigma.array() <= 0.0).any()) throw ArgumentError("corrupt: sigma must be positive");
  for (Eigen::Index k = 0; k < out.values.size(); ++k) out.values[k] += gauss.sigma[k] * rng.normal();
  out.noise = gauss;
  return out;
}

double snr_db(const IntensityData& clean, const IntensityData& noisy) {
  if (clean.size() != noisy.size()) throw ShapeError("snr_db: length mismatch");
  const double signal = clean.values.squaredNorm();
  const double error = (noisy.values - clean.values).squaredNorm();
  if (error == 0.0) return kSnrCapDb;
  if (signal == 0.0) return -kSnrCapDb;
  return std::clamp(10.0 * std::log10(signal / error), -kSnrCapDb, kSnrCapDb);
}

NllValue nll_gaussian(const Eigen::VectorXd& b, const Eigen::VectorXd& mu, const Eigen::VectorXd& sigma) {
  if (b.size() != mu.size()) throw ShapeError("nll_gaussian: length mismatch");
  const Eigen::VectorXd r = mu - b;
  if (sigma.size() == 0) return {0.5 * r.squaredNorm(), r};
  if (sigma.size() != b.size()) throw ShapeError("nll_gaussian: sigma length mismatch");
  if ((sigma.array() <= 0.0).any()) throw ArgumentError("nll_gaussian: sigma must be positive");
  const Eigen::VectorXd inv_var = sigma.array().square().inverse();
  return {0.5 * r.cwiseAbs2().dot(inv_var), r.cwiseProduct(inv_var)};
}

double poisson_floor(const Eigen::VectorXd& b) {
  const double bmax = b.size() > 0 ? b.maxCoeff() : 0.0;
  return 1e-12 * std::max(bmax, 1.0);
}

NllValue nll_poisson(const Eigen::VectorXd& b, const Eigen::VectorXd& mu) {
  if (b.size() != mu.size()) throw ShapeError("nll_poisson: length mismatch");
  if ((b.array() < 0.0).any()) throw ArgumentError("nll_poisson: negative counts");
  const double floor = poisson_floor(b);
  const Eigen::ArrayXd m = mu.array().max(floor);
  NllValue out;
  // b_k log mu_k vanishes when b_k = 0 regardless of mu_k.
  const Eigen::ArrayXd blog = (b.array() > 0.0).select(b.array() * m.log(), 0.0);
  out.value = (m - blog).sum();
  out.gradient = (1.0 - b.array() / m).matrix();
  return out;
}

}  // namespace phaselift
