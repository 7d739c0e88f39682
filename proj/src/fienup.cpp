#include "phaselift/fienup.hpp"

#include <cmath>

#include "phaselift/error.hpp"
#include "phaselift/fft.hpp"
#include "phaselift/rng.hpp"

namespace phaselift {

std::string to_string(FienupStatus status) {
  switch (status) {
    case FienupStatus::Converged: return "converged";
    case FienupStatus::Stagnated: return "stagnated";
    case FienupStatus::MaxIters: return "max-iters";
  }
  return "unknown";
}

std::string to_string(SpatialConstraint constraint) {
  switch (constraint) {
    case SpatialConstraint::Complex: return "complex";
    case SpatialConstraint::Real: return "real";
    case SpatialConstraint::RealNonnegative: return "real-nonnegative";
  }
  return "unknown";
}

SpatialConstraint spatial_constraint_from_string(const std::string& name) {
  if (name == "complex") return SpatialConstraint::Complex;
  if (name == "real") return SpatialConstraint::Real;
  if (name == "real-nonnegative" || name == "real_nonnegative") return SpatialConstraint::RealNonnegative;
  throw ArgumentError("unknown spatial constraint: " + name);
}

Eigen::VectorXcd project_spatial(const Eigen::VectorXcd& x, const std::vector<bool>& in_support, SpatialConstraint constraint) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(x.size());
  for (Eigen::Index t = 0; t < x.size(); ++t) {
    if (!in_support[static_cast<std::size_t>(t)]) continue;
    switch (constraint) {
      case SpatialConstraint::Complex: out[t] = x[t]; break;
      case SpatialConstraint::Real: out[t] = x[t].real(); break;
      case SpatialConstraint::RealNonnegative: out[t] = std::max(x[t].real(), 0.0); break;
    }
  }
  return out;
}

FienupResult error_reduction(const Eigen::VectorXd& y, const FienupConfig& config, const ComplexSignal* initial) {
  const Shape& shape = config.signal_shape;
  if (config.oversample < 1) throw ArgumentError("error_reduction: oversample must be >= 1");
  if (config.max_iters < 1) throw ArgumentError("error_reduction: max_iters must be >= 1");
  const Shape grid = shape.scaled(config.oversample);
  if (y.size() != static_cast<Eigen::Index>(grid.size())) throw ShapeError("error_reduction: magnitude data does not match the grid");
  if (y.size() > 0 && y.minCoeff() < 0.0) throw ArgumentError("error_reduction: magnitudes must be nonnegative");

  std::vector<bool> in_support(shape.size(), config.support.empty());
  for (std::size_t t : config.support) {
    if (t >= shape.size()) throw ArgumentError("error_reduction: support index out of range");
    in_support[t] = true;
  }

  Eigen::VectorXcd x;
  if (initial) {
    if (!(initial->shape() == shape)) throw ShapeError("error_reduction: initial guess shape mismatch");
    x = initial->data();
  } else {
    Rng rng(derive_seed(config.seed, streams::kFienup, 0));
    x.resize(static_cast<Eigen::Index>(shape.size()));
    for (Eigen::Index t = 0; t < x.size(); ++t) x[t] = rng.complex_normal();
  }
  x = project_spatial(x, in_support, config.constraint);

  const double ynorm = y.norm();
  auto relative = [&](double v) { return ynorm > 0.0 ? v / ynorm : v; };
  Eigen::VectorXcd phase = Eigen::VectorXcd::Ones(y.size());

  // Fourier residual of the current spatial iterate.
  auto fourier = [&](const Eigen::VectorXcd& v) {
    Eigen::VectorXcd z = zero_pad(v, shape, grid);
    fft::transform(std::span<cplx>(z.data(), static_cast<std::size_t>(z.size())), grid, fft::Direction::Forward);
    return z;
  };

  FienupResult out;
  Eigen::VectorXcd z = fourier(x);
  double res = relative((z.cwiseAbs() - y).norm());
  out.x = ComplexSignal(shape, x);
  out.residual = res;
  out.residual_trace.push_back(res);

  for (int it = 1; it <= config.max_iters; ++it) {
    // Magnitude replacement; bins with |z| = 0 keep their previous phase.
    for (Eigen::Index w = 0; w < z.size(); ++w) {
      const double mag = std::abs(z[w]);
      if (mag > 0.0) phase[w] = z[w] / mag;
      z[w] = y[w] * phase[w];
    }
    fft::transform(std::span<cplx>(z.data(), static_cast<std::size_t>(z.size())), grid, fft::Direction::Inverse);
    const Eigen::VectorXcd next = project_spatial(crop(z, grid, shape), in_support, config.constraint);
    const double change = (next - x).norm();
    const double scale = next.norm();
    x = next;
    z = fourier(x);
    res = relative((z.cwiseAbs() - y).norm());
    out.residual_trace.push_back(res);
    out.iterations = it;
    if (res < out.residual) {
      out.residual = res;
      out.x = ComplexSignal(shape, x);
    }
    if (res <= config.tol_residual) {
      out.status = FienupStatus::Converged;
      return out;
    }
    if (scale == 0.0 ? change == 0.0 : change <= config.tol_stagnation * scale) {
      out.status = FienupStatus::Stagnated;
      return out;
    }
  }
  out.status = FienupStatus::MaxIters;
  return out;
}

}  // namespace phaselift
