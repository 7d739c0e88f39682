#include "phaselift/signal.hpp"

#include "phaselift/error.hpp"
#include "phaselift/fft.hpp"

namespace phaselift {

Shape::Shape(std::size_t n) : dims_{n, 1}, rank_(1) {
  if (n == 0) throw ShapeError("shape entries must be >= 1");
}

Shape::Shape(std::size_t n1, std::size_t n2) : dims_{n1, n2}, rank_(2) {
  if (n1 == 0 || n2 == 0) throw ShapeError("shape entries must be >= 1");
}

std::size_t Shape::extent(int axis) const {
  if (axis < 0 || axis >= rank_) throw ShapeError("axis out of range for shape " + to_string());
  return dims_[static_cast<std::size_t>(axis)];
}

std::size_t Shape::size() const noexcept { return rank_ == 0 ? 0 : dims_[0] * dims_[1]; }

bool Shape::valid() const noexcept { return (rank_ == 1 || rank_ == 2) && dims_[0] >= 1 && dims_[1] >= 1; }

Shape Shape::scaled(std::size_t factor) const {
  if (factor == 0) throw ArgumentError("oversampling factor must be >= 1");
  if (rank_ == 1) return Shape(dims_[0] * factor);
  if (rank_ == 2) return Shape(dims_[0] * factor, dims_[1] * factor);
  throw ShapeError("cannot scale an empty shape");
}

std::string Shape::to_string() const {
  if (rank_ == 1) return "(" + std::to_string(dims_[0]) + ")";
  if (rank_ == 2) return "(" + std::to_string(dims_[0]) + ", " + std::to_string(dims_[1]) + ")";
  return "()";
}

ComplexArray::ComplexArray(const Shape& shape)
    : shape_(shape), data_(Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(shape.size()))) {
  if (!shape.valid()) throw ShapeError("invalid shape");
}

ComplexArray::ComplexArray(const Shape& shape, Eigen::VectorXcd data) : shape_(shape), data_(std::move(data)) {
  if (!shape.valid()) throw ShapeError("invalid shape");
  if (static_cast<std::size_t>(data_.size()) != shape.size()) {
    throw ShapeError("data length " + std::to_string(data_.size()) + " does not match shape " + shape.to_string());
  }
}

Eigen::VectorXcd zero_pad(const Eigen::VectorXcd& values, const Shape& shape, const Shape& grid) {
  if (shape == grid) return values;
  if (shape.rank() != grid.rank()) throw ShapeError("zero_pad: rank mismatch");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(grid.size()));
  if (shape.rank() == 1) {
    out.head(values.size()) = values;
    return out;
  }
  const std::size_t n1 = shape.extent(0), n2 = shape.extent(1);
  for (std::size_t t1 = 0; t1 < n1; ++t1) {
    for (std::size_t t2 = 0; t2 < n2; ++t2) {
      out[static_cast<Eigen::Index>(grid.index(t1, t2))] = values[static_cast<Eigen::Index>(shape.index(t1, t2))];
    }
  }
  return out;
}

Eigen::VectorXcd crop(const Eigen::VectorXcd& values, const Shape& grid, const Shape& shape) {
  if (shape == grid) return values;
  if (shape.rank() != grid.rank()) throw ShapeError("crop: rank mismatch");
  if (shape.rank() == 1) return values.head(static_cast<Eigen::Index>(shape.size()));
  Eigen::VectorXcd out(static_cast<Eigen::Index>(shape.size()));
  const std::size_t n1 = shape.extent(0), n2 = shape.extent(1);
  for (std::size_t t1 = 0; t1 < n1; ++t1) {
    for (std::size_t t2 = 0; t2 < n2; ++t2) {
      out[static_cast<Eigen::Index>(shape.index(t1, t2))] = values[static_cast<Eigen::Index>(grid.index(t1, t2))];
    }
  }
  return out;
}

Spectrum dft_unitary(const ComplexSignal& signal) { return oversampled_dft(signal, 1); }

ComplexSignal idft_unitary(const Spectrum& spectrum) {
  Eigen::VectorXcd data = spectrum.data();
  fft::transform({data.data(), static_cast<std::size_t>(data.size())}, spectrum.grid_shape(), fft::Direction::Inverse);
  return ComplexSignal(spectrum.grid_shape(), std::move(data));
}

ComplexSignal idft_unitary(const Spectrum& spectrum, const Shape& signal_shape) {
  const Shape& grid = spectrum.grid_shape();
  if (grid.rank() != signal_shape.rank()) throw ShapeError("idft: grid and signal rank differ");
  const std::size_t factor = grid.extent(0) / signal_shape.extent(0);
  if (factor == 0 || !(signal_shape.scaled(factor) == grid)) {
    throw ShapeError("idft: grid " + grid.to_string() + " is not an oversampling of " + signal_shape.to_string());
  }
  ComplexSignal full = idft_unitary(spectrum);
  return ComplexSignal(signal_shape, crop(full.data(), grid, signal_shape));
}

Spectrum oversampled_dft(const ComplexSignal& signal, std::size_t factor) {
  const Shape grid = signal.shape().scaled(factor);
  Eigen::VectorXcd data = zero_pad(signal.data(), signal.shape(), grid);
  fft::transform({data.data(), static_cast<std::size_t>(data.size())}, grid, fft::Direction::Forward);
  return Spectrum(grid, std::move(data));
}

}  // namespace phaselift
