#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "phaselift/signal.hpp"

namespace phaselift {

enum class MaskKind {
  Constant,         ///< all weights 1
  Binary,           ///< iid {0, 1} with probability 1/2
  GaussianReal,     ///< iid N(0, 1)
  GaussianComplex,  ///< a + ib with a, b iid N(0, 1)
  Modulation,       ///< exp(i 2 pi s t / n) per axis
  Custom,           ///< arbitrary diagonal weights
};

std::string to_string(MaskKind kind);
MaskKind mask_kind_from_string(const std::string& name);

/// Diagonal modulation w[t], applied pointwise before the DFT.
class Mask {
 public:
  Mask(Shape shape, MaskKind kind, Eigen::VectorXcd weights, std::uint64_t seed = 0,
       std::array<std::int64_t, 2> shift = {0, 0});

  /// Wraps arbitrary weights as a Custom mask.
  static Mask custom(const Shape& shape, Eigen::VectorXcd weights);

  const Shape& shape() const noexcept { return shape_; }
  MaskKind kind() const noexcept { return kind_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const std::array<std::int64_t, 2>& shift() const noexcept { return shift_; }
  const Eigen::VectorXcd& weights() const noexcept { return weights_; }

  /// Pointwise product of two masks (a Custom mask unless both are
  /// modulations, in which case the shifts add).
  Mask operator*(const Mask& other) const;
  Mask scaled(cplx factor) const;

 private:
  Shape shape_;
  MaskKind kind_;
  std::uint64_t seed_;
  std::array<std::int64_t, 2> shift_;
  Eigen::VectorXcd weights_;
};

/// Deterministic mask constructor. `shift` is only read for Modulation and
/// must lie in [0, n) per axis. `seed` feeds the random kinds.
Mask make_mask(const Shape& shape, MaskKind kind, std::uint64_t seed = 0, std::array<std::int64_t, 2> shift = {0, 0});

/// output[t] = w[t] * x[t]
ComplexSignal apply_mask(const ComplexSignal& signal, const Mask& mask);

}  // namespace phaselift
