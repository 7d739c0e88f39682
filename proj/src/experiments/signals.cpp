#include "phaselift/experiments/signals.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "phaselift/error.hpp"
#include "phaselift/experiments/image_io.hpp"
#include "phaselift/rng.hpp"

namespace phaselift::experiments {
namespace {

constexpr std::array<double, 3> kFrequencies{2.0, 5.0, 11.0};
constexpr std::array<double, 3> kAmplitudes{1.0, 0.7, 0.4};

Eigen::VectorXd sinusoids(std::size_t n, Rng& rng) {
  std::array<double, 3> phases{};
  for (double& p : phases) p = 2.0 * std::numbers::pi * rng.uniform();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t i = 0; i < 3; ++i) {
      out[static_cast<Eigen::Index>(t)] +=
          kAmplitudes[i] * std::cos(2.0 * std::numbers::pi * kFrequencies[i] * static_cast<double>(t) / static_cast<double>(n) + phases[i]);
    }
  }
  return out;
}

}  // namespace

ComplexSignal make_signal(const SignalSpec& spec, std::uint64_t seed) {
  if (spec.kind == SignalKind::ImageFile) {
    ComplexSignal img = spec.phase_path.empty() ? load_pgm(spec.image_path) : load_complex_image(spec.image_path, spec.phase_path);
    return img;
  }
  Rng rng(seed);
  const Shape& shape = spec.shape;
  Eigen::VectorXcd x(static_cast<Eigen::Index>(shape.size()));
  switch (spec.kind) {
    case SignalKind::ComplexGaussian:
      for (Eigen::Index t = 0; t < x.size(); ++t) x[t] = rng.complex_normal();
      break;
    case SignalKind::RealNonnegRandom:
      for (Eigen::Index t = 0; t < x.size(); ++t) {
        const double z = rng.normal();
        x[t] = z * z;
      }
      break;
    case SignalKind::SinusoidMix:
      if (shape.rank() == 1) {
        x = sinusoids(shape.extent(0), rng).cast<cplx>();
      } else {
        const Eigen::VectorXd rows = sinusoids(shape.extent(0), rng);
        const Eigen::VectorXd cols = sinusoids(shape.extent(1), rng);
        for (std::size_t i = 0; i < shape.extent(0); ++i)
          for (std::size_t j = 0; j < shape.extent(1); ++j)
            x[static_cast<Eigen::Index>(shape.index(i, j))] = rows[static_cast<Eigen::Index>(i)] * cols[static_cast<Eigen::Index>(j)];
      }
      break;
    case SignalKind::ImageFile: break;
  }
  return ComplexSignal(shape, x);
}

}  // namespace phaselift::experiments
