#include "phaselift/mask.hpp"

#include <cmath>
#include <numbers>

#include "phaselift/error.hpp"
#include "phaselift/rng.hpp"

namespace phaselift {

std::string to_string(MaskKind kind) {
  switch (kind) {
    case MaskKind::Constant: return "constant";
    case MaskKind::Binary: return "binary";
    case MaskKind::GaussianReal: return "gaussian-real";
    case MaskKind::GaussianComplex: return "gaussian-complex";
    case MaskKind::Modulation: return "modulation";
    case MaskKind::Custom: return "custom";
  }
  return "unknown";
}

MaskKind mask_kind_from_string(const std::string& name) {
  if (name == "constant") return MaskKind::Constant;
  if (name == "binary") return MaskKind::Binary;
  if (name == "gaussian-real") return MaskKind::GaussianReal;
  if (name == "gaussian-complex") return MaskKind::GaussianComplex;
  if (name == "modulation") return MaskKind::Modulation;
  if (name == "custom") return MaskKind::Custom;
  throw ArgumentError("unknown mask kind '" + name + "'");
}

Mask::Mask(Shape shape, MaskKind kind, Eigen::VectorXcd weights, std::uint64_t seed, std::array<std::int64_t, 2> shift)
    : shape_(shape), kind_(kind), seed_(seed), shift_(shift), weights_(std::move(weights)) {
  if (!shape_.valid()) throw ShapeError("mask: invalid shape");
  if (static_cast<std::size_t>(weights_.size()) != shape_.size()) throw ShapeError("mask: weight count does not match shape");
}

Mask Mask::custom(const Shape& shape, Eigen::VectorXcd weights) {
  return Mask(shape, MaskKind::Custom, std::move(weights));
}

Mask Mask::operator*(const Mask& other) const {
  if (!(shape_ == other.shape_)) throw ShapeError("mask product: shape mismatch");
  Eigen::VectorXcd w = weights_.cwiseProduct(other.weights_);
  if (kind_ == MaskKind::Modulation && other.kind_ == MaskKind::Modulation) {
    std::array<std::int64_t, 2> s{};
    for (int axis = 0; axis < shape_.rank(); ++axis) {
      const auto n = static_cast<std::int64_t>(shape_.extent(axis));
      s[static_cast<std::size_t>(axis)] = (shift_[static_cast<std::size_t>(axis)] + other.shift_[static_cast<std::size_t>(axis)]) % n;
    }
    return Mask(shape_, MaskKind::Modulation, std::move(w), 0, s);
  }
  if (kind_ == MaskKind::Constant) return Mask(other.shape_, other.kind_, std::move(w), other.seed_, other.shift_);
  if (other.kind_ == MaskKind::Constant) return Mask(shape_, kind_, std::move(w), seed_, shift_);
  return custom(shape_, std::move(w));
}

Mask Mask::scaled(cplx factor) const { return custom(shape_, weights_ * factor); }

Mask make_mask(const Shape& shape, MaskKind kind, std::uint64_t seed, std::array<std::int64_t, 2> shift) {
  if (!shape.valid()) throw ShapeError("make_mask: invalid shape");
  const auto size = static_cast<Eigen::Index>(shape.size());
  Eigen::VectorXcd w(size);
  Rng rng(seed);
  switch (kind) {
    case MaskKind::Constant:
      w.setOnes();
      return Mask(shape, kind, std::move(w));
    case MaskKind::Binary:
      for (Eigen::Index t = 0; t < size; ++t) w[t] = rng.coin() ? 1.0 : 0.0;
      return Mask(shape, kind, std::move(w), seed);
    case MaskKind::GaussianReal:
      for (Eigen::Index t = 0; t < size; ++t) w[t] = rng.normal();
      return Mask(shape, kind, std::move(w), seed);
    case MaskKind::GaussianComplex:
      for (Eigen::Index t = 0; t < size; ++t) w[t] = rng.complex_normal();
      return Mask(shape, kind, std::move(w), seed);
    case MaskKind::Modulation: {
      for (int axis = 0; axis < shape.rank(); ++axis) {
        const auto n = static_cast<std::int64_t>(shape.extent(axis));
        const auto s = shift[static_cast<std::size_t>(axis)];
        if (s < 0 || s >= n) throw ArgumentError("modulation shift " + std::to_string(s) + " outside [0, " + std::to_string(n) + ")");
      }
      if (shape.rank() == 1) shift[1] = 0;
      const std::size_t n1 = shape.extent(0);
      const std::size_t n2 = shape.rank() == 2 ? shape.extent(1) : 1;
      for (std::size_t t1 = 0; t1 < n1; ++t1) {
        for (std::size_t t2 = 0; t2 < n2; ++t2) {
          // Reduce s*t mod n before the division so large indices keep full precision.
          const auto p1 = (shift[0] * static_cast<std::int64_t>(t1)) % static_cast<std::int64_t>(n1);
          const auto p2 = (shift[1] * static_cast<std::int64_t>(t2)) % static_cast<std::int64_t>(n2);
          const double angle = 2.0 * std::numbers::pi *
                               (static_cast<double>(p1) / static_cast<double>(n1) + static_cast<double>(p2) / static_cast<double>(n2));
          w[static_cast<Eigen::Index>(t1 * n2 + t2)] = std::polar(1.0, angle);
        }
      }
      return Mask(shape, kind, std::move(w), 0, shift);
    }
    case MaskKind::Custom:
      throw ArgumentError("make_mask: Custom masks are built from explicit weights");
  }
  throw ArgumentError("make_mask: unknown kind");
}

ComplexSignal apply_mask(const ComplexSignal& signal, const Mask& mask) {
  if (!(signal.shape() == mask.shape())) throw ShapeError("apply_mask: signal " + signal.shape().to_string() + " vs mask " + mask.shape().to_string());
  return ComplexSignal(signal.shape(), signal.data().cwiseProduct(mask.weights()));
}

}  // namespace phaselift
