#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string>

#include <Eigen/Dense>

namespace phaselift {

using cplx = std::complex<double>;

/// Dimensions of a 1D (n) or 2D (n1, n2) array. Storage is row-major, so
/// index t = t1 * n2 + t2 in 2D.
class Shape {
 public:
  Shape() = default;
  explicit Shape(std::size_t n);
  Shape(std::size_t n1, std::size_t n2);

  int rank() const noexcept { return rank_; }
  std::size_t extent(int axis) const;
  std::size_t size() const noexcept;
  bool valid() const noexcept;

  /// Shape with every axis multiplied by `factor`.
  Shape scaled(std::size_t factor) const;

  std::size_t index(std::size_t t1, std::size_t t2) const noexcept { return t1 * dims_[1] + t2; }

  std::string to_string() const;

  friend bool operator==(const Shape& a, const Shape& b) noexcept {
    return a.rank_ == b.rank_ && a.dims_ == b.dims_;
  }

 private:
  std::array<std::size_t, 2> dims_{0, 1};
  int rank_ = 0;
};

/// A shaped block of complex scalars. Invariant: shape().size() == data().size().
class ComplexArray {
 public:
  ComplexArray() = default;
  explicit ComplexArray(const Shape& shape);
  ComplexArray(const Shape& shape, Eigen::VectorXcd data);

  const Shape& shape() const noexcept { return shape_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(data_.size()); }
  const Eigen::VectorXcd& data() const noexcept { return data_; }
  Eigen::VectorXcd& data() noexcept { return data_; }

  cplx& operator[](std::size_t t) { return data_[static_cast<Eigen::Index>(t)]; }
  const cplx& operator[](std::size_t t) const { return data_[static_cast<Eigen::Index>(t)]; }

  double norm() const { return data_.norm(); }

 protected:
  Shape shape_;
  Eigen::VectorXcd data_;
};

/// A 1D or 2D complex signal on its native grid.
class ComplexSignal : public ComplexArray {
 public:
  using ComplexArray::ComplexArray;
};

/// Fourier coefficients on a (possibly oversampled) frequency grid.
class Spectrum : public ComplexArray {
 public:
  using ComplexArray::ComplexArray;
  const Shape& grid_shape() const noexcept { return shape_; }
};

/// Unitary DFT: 1/sqrt(n) sum_t x[t] exp(-i 2 pi w t / n), per axis.
Spectrum dft_unitary(const ComplexSignal& signal);

/// Inverse of dft_unitary on the full grid.
ComplexSignal idft_unitary(const Spectrum& spectrum);

/// Inverse transform followed by cropping to `signal_shape`. The grid must be
/// an integer multiple of the signal shape on every axis.
ComplexSignal idft_unitary(const Spectrum& spectrum, const Shape& signal_shape);

/// Zero-pads each axis to factor * n, then applies the unitary DFT of the
/// padded grid.
Spectrum oversampled_dft(const ComplexSignal& signal, std::size_t factor);

/// Embeds `signal` in the top-left corner of a zero grid of shape `grid`.
Eigen::VectorXcd zero_pad(const Eigen::VectorXcd& values, const Shape& shape, const Shape& grid);

/// Inverse of zero_pad: the top-left `shape` block of a `grid` array.
Eigen::VectorXcd crop(const Eigen::VectorXcd& values, const Shape& grid, const Shape& shape);

}  // namespace phaselift
