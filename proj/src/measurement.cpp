#include "phaselift/measurement.hpp"

#include <algorithm>
#include <cmath>

#include "phaselift/error.hpp"
#include "phaselift/fft.hpp"
#include "phaselift/rng.hpp"

namespace phaselift {
namespace {

std::span<cplx> as_span(Eigen::VectorXcd& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

/// FFT_grid(pad(w .* v)) for block j.
Eigen::VectorXcd forward_block(const MeasurementEnsemble& ens, std::size_t j, const Eigen::VectorXcd& v) {
  const auto& ill = ens.illumination(j);
  Eigen::VectorXcd buf = zero_pad(ill.mask.weights().cwiseProduct(v), ens.signal_shape(), ens.block_grid(j));
  fft::transform(as_span(buf), ens.block_grid(j), fft::Direction::Forward);
  return buf;
}

void check_vector(const MeasurementEnsemble& ens, Eigen::Index size) {
  if (static_cast<std::size_t>(size) != ens.signal_size()) {
    throw ShapeError("signal length " + std::to_string(size) + " does not match ensemble dimension " +
                     std::to_string(ens.signal_size()));
  }
}

Eigen::VectorXd weighted(const Eigen::VectorXd& values, const Eigen::VectorXd& weights) {
  if (weights.size() == 0) return values;
  if (weights.size() != values.size()) throw ShapeError("weight vector length mismatch");
  return values.cwiseProduct(weights);
}

}  // namespace

MeasurementEnsemble::MeasurementEnsemble(Shape signal_shape, std::vector<Illumination> illuminations)
    : signal_shape_(signal_shape), illuminations_(std::move(illuminations)) {
  if (!signal_shape_.valid()) throw ShapeError("ensemble: invalid signal shape");
  if (illuminations_.empty()) throw ArgumentError("ensemble: at least one illumination is required");
  for (const auto& ill : illuminations_) {
    if (!(ill.mask.shape() == signal_shape_)) {
      throw ShapeError("ensemble: mask shape " + ill.mask.shape().to_string() + " differs from signal shape " +
                       signal_shape_.to_string());
    }
    if (ill.oversample < 1) throw ArgumentError("ensemble: oversampling factor must be >= 1");
    grids_.push_back(signal_shape_.scaled(ill.oversample));
    offsets_.push_back(m_);
    m_ += grids_.back().size();
  }
}

MeasurementEnsemble MeasurementEnsemble::scaled(cplx factor) const {
  std::vector<Illumination> out;
  out.reserve(illuminations_.size());
  for (const auto& ill : illuminations_) out.push_back({ill.mask.scaled(factor), ill.oversample});
  return MeasurementEnsemble(signal_shape_, std::move(out));
}

Eigen::MatrixXcd FactoredPsd::dense() const { return vectors * values.asDiagonal() * vectors.adjoint(); }

FactoredPsd FactoredPsd::zero(std::size_t dimension) {
  return {dimension, Eigen::MatrixXcd(static_cast<Eigen::Index>(dimension), 0), Eigen::VectorXd(0)};
}

FactoredPsd FactoredPsd::rank_one(const Eigen::VectorXcd& x) {
  const double n2 = x.squaredNorm();
  if (n2 == 0.0) return zero(static_cast<std::size_t>(x.size()));
  Eigen::MatrixXcd v = x / std::sqrt(n2);
  Eigen::VectorXd lam(1);
  lam[0] = n2;
  return {static_cast<std::size_t>(x.size()), std::move(v), std::move(lam)};
}

LowRankHermitian LowRankHermitian::from(const FactoredPsd& X) { return {X.dimension, X.vectors, X.values}; }

LowRankHermitian LowRankHermitian::combine(double a, const FactoredPsd& A, double b, const FactoredPsd& B) {
  const auto n = static_cast<Eigen::Index>(A.dimension);
  const Eigen::Index ra = A.vectors.cols();
  const Eigen::Index rb = b == 0.0 ? 0 : B.vectors.cols();
  LowRankHermitian out{A.dimension, Eigen::MatrixXcd(n, ra + rb), Eigen::VectorXd(ra + rb)};
  out.basis.leftCols(ra) = A.vectors;
  out.coeffs.head(ra) = a * A.values;
  if (rb > 0) {
    out.basis.rightCols(rb) = B.vectors;
    out.coeffs.tail(rb) = b * B.values;
  }
  return out;
}

Eigen::MatrixXcd LowRankHermitian::apply(const Eigen::MatrixXcd& v) const {
  if (basis.cols() == 0) return Eigen::MatrixXcd::Zero(v.rows(), v.cols());
  return basis * (coeffs.asDiagonal() * (basis.adjoint() * v));
}

double LowRankHermitian::frobenius_norm_squared() const {
  if (basis.cols() == 0) return 0.0;
  // ||U C U^*||_F^2 = Tr(C G C G) with G = U^* U.
  const Eigen::MatrixXcd gram = basis.adjoint() * basis;
  const Eigen::MatrixXcd cg = coeffs.asDiagonal() * gram;
  return (cg * cg).trace().real();
}

Eigen::VectorXd sense(const MeasurementEnsemble& ensemble, const Eigen::VectorXcd& x) {
  check_vector(ensemble, x.size());
  Eigen::VectorXd out(static_cast<Eigen::Index>(ensemble.measurement_count()));
  for (std::size_t j = 0; j < ensemble.block_count(); ++j) {
    const Eigen::VectorXcd spec = forward_block(ensemble, j, x);
    out.segment(static_cast<Eigen::Index>(ensemble.block_offset(j)), spec.size()) = spec.cwiseAbs2();
  }
  return out;
}

IntensityData sense(const MeasurementEnsemble& ensemble, const ComplexSignal& x) {
  if (!(x.shape() == ensemble.signal_shape())) {
    throw ShapeError("sense: signal shape " + x.shape().to_string() + " vs ensemble " + ensemble.signal_shape().to_string());
  }
  return {sense(ensemble, x.data()), CleanNoise{}};
}

Eigen::VectorXd apply_lifted(const MeasurementEnsemble& ensemble, const LowRankHermitian& X) {
  if (X.dimension != ensemble.signal_size()) throw ShapeError("apply_lifted: dimension mismatch");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ensemble.measurement_count()));
  for (Eigen::Index c = 0; c < X.basis.cols(); ++c) {
    if (X.coeffs[c] == 0.0) continue;
    out += X.coeffs[c] * sense(ensemble, Eigen::VectorXcd(X.basis.col(c)));
  }
  return out;
}

Eigen::VectorXd apply_lifted(const MeasurementEnsemble& ensemble, const FactoredPsd& X) {
  return apply_lifted(ensemble, LowRankHermitian::from(X));
}

Eigen::MatrixXcd apply_adjoint_action(const MeasurementEnsemble& ensemble, const Eigen::VectorXd& y, const Eigen::MatrixXcd& v) {
  if (static_cast<std::size_t>(y.size()) != ensemble.measurement_count()) {
    throw ShapeError("adjoint: y has length " + std::to_string(y.size()) + ", expected " +
                     std::to_string(ensemble.measurement_count()));
  }
  check_vector(ensemble, v.rows());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(v.rows(), v.cols());
  for (std::size_t j = 0; j < ensemble.block_count(); ++j) {
    const auto& ill = ensemble.illumination(j);
    const auto offset = static_cast<Eigen::Index>(ensemble.block_offset(j));
    const auto len = static_cast<Eigen::Index>(ensemble.block_size(j));
    const auto yj = y.segment(offset, len);
    if (yj.isZero(0.0)) continue;
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
      Eigen::VectorXcd buf = forward_block(ensemble, j, v.col(c));
      buf.array() *= yj.array();
      fft::transform(as_span(buf), ensemble.block_grid(j), fft::Direction::Inverse);
      out.col(c) += ill.mask.weights().conjugate().cwiseProduct(crop(buf, ensemble.block_grid(j), ensemble.signal_shape()));
    }
  }
  return out;
}

ComplexSignal apply_adjoint_action(const MeasurementEnsemble& ensemble, const Eigen::VectorXd& y, const ComplexSignal& v) {
  if (!(v.shape() == ensemble.signal_shape())) throw ShapeError("adjoint: signal shape mismatch");
  Eigen::MatrixXcd out = apply_adjoint_action(ensemble, y, Eigen::MatrixXcd(v.data()));
  return ComplexSignal(v.shape(), out.col(0));
}

namespace {

// A(X) for a dense Hermitian X: with Z = diag(w) X diag(conj w), A(X)_k is the
// padded DFT of the wrapped diagonal sums c(d) = sum_{t - t' = d} Z(t, t').
Eigen::VectorXd lifted_dense(const MeasurementEnsemble& ensemble, const Eigen::MatrixXcd& X) {
  const Shape& shape = ensemble.signal_shape();
  const auto n = static_cast<Eigen::Index>(ensemble.signal_size());
  const bool two_d = shape.rank() == 2;
  const Eigen::Index n2 = two_d ? static_cast<Eigen::Index>(shape.extent(1)) : 1;
  Eigen::VectorXd out(static_cast<Eigen::Index>(ensemble.measurement_count()));
  for (std::size_t j = 0; j < ensemble.block_count(); ++j) {
    const Shape& grid = ensemble.block_grid(j);
    const auto len = static_cast<Eigen::Index>(ensemble.block_size(j));
    const Eigen::Index m1 = static_cast<Eigen::Index>(grid.extent(0));
    const Eigen::Index m2 = two_d ? static_cast<Eigen::Index>(grid.extent(1)) : 1;
    const Eigen::VectorXcd& w = ensemble.illumination(j).mask.weights();
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(len);
    for (Eigen::Index col = 0; col < n; ++col) {
      const Eigen::Index c1 = col / n2, c2 = col % n2;
      const cplx wc = std::conj(w[col]);
      if (wc == cplx(0.0, 0.0)) continue;
      for (Eigen::Index r = 0; r < n; ++r) {
        const Eigen::Index d1 = (r / n2 - c1 + m1) % m1;
        const Eigen::Index d2 = (r % n2 - c2 + m2) % m2;
        c[d1 * m2 + d2] += w[r] * X(r, col) * wc;
      }
    }
    fft::transform(as_span(c), grid, fft::Direction::Forward);
    out.segment(static_cast<Eigen::Index>(ensemble.block_offset(j)), len) = c.real() / std::sqrt(static_cast<double>(len));
  }
  return out;
}

}  // namespace

Eigen::MatrixXcd adjoint_matrix(const MeasurementEnsemble& ensemble, const Eigen::VectorXd& y) {
  if (static_cast<std::size_t>(y.size()) != ensemble.measurement_count()) {
    throw ShapeError("adjoint_matrix: y has length " + std::to_string(y.size()) + ", expected " +
                     std::to_string(ensemble.measurement_count()));
  }
  const Shape& shape = ensemble.signal_shape();
  const auto n = static_cast<Eigen::Index>(ensemble.signal_size());
  const bool two_d = shape.rank() == 2;
  const Eigen::Index n2 = two_d ? static_cast<Eigen::Index>(shape.extent(1)) : 1;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t j = 0; j < ensemble.block_count(); ++j) {
    const Shape& grid = ensemble.block_grid(j);
    const auto len = static_cast<Eigen::Index>(ensemble.block_size(j));
    const auto yj = y.segment(static_cast<Eigen::Index>(ensemble.block_offset(j)), len);
    if (yj.isZero(0.0)) continue;
    const Eigen::Index m1 = static_cast<Eigen::Index>(grid.extent(0));
    const Eigen::Index m2 = two_d ? static_cast<Eigen::Index>(grid.extent(1)) : 1;
    // Kernel h(d) = (1/M) sum_k y_k exp(+i 2 pi k d / M).
    Eigen::VectorXcd h = yj.cast<cplx>();
    fft::transform(as_span(h), grid, fft::Direction::Inverse);
    h /= std::sqrt(static_cast<double>(len));
    const Eigen::VectorXcd& w = ensemble.illumination(j).mask.weights();
    for (Eigen::Index c = 0; c < n; ++c) {
      const Eigen::Index c1 = c / n2, c2 = c % n2;
      const cplx wc = w[c];
      if (wc == cplx(0.0, 0.0)) continue;
      for (Eigen::Index r = 0; r < n; ++r) {
        const Eigen::Index d1 = (r / n2 - c1 + m1) % m1;
        const Eigen::Index d2 = (r % n2 - c2 + m2) % m2;
        out(r, c) += std::conj(w[r]) * h[d1 * m2 + d2] * wc;
      }
    }
  }
  return out;
}

double lipschitz_upper_bound(const MeasurementEnsemble& ensemble, const Eigen::VectorXd& weights) {
  // ||A(D)||_w^2 = sum_k w_k (a_k^* D a_k)^2 <= max_k w_k ||a_k||^2 * Tr(D (sum_k A_k) D),
  // and sum_k A_k = sum_j diag(|w_j|^2) because each padded DFT is unitary.
  Eigen::VectorXd diag_sum = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ensemble.signal_size()));
  double max_row = 0.0;
  for (std::size_t j = 0; j < ensemble.block_count(); ++j) {
    const auto& w = ensemble.illumination(j).mask.weights();
    const double row_norm2 = w.squaredNorm() / static_cast<double>(ensemble.block_size(j));
    double wmax = 1.0;
    if (weights.size() > 0) {
      wmax = weights.segment(static_cast<Eigen::Index>(ensemble.block_offset(j)), static_cast<Eigen::Index>(ensemble.block_size(j))).maxCoeff();
    }
    max_row = std::max(max_row, row_norm2 * wmax);
    diag_sum += w.cwiseAbs2();
  }
  return max_row * diag_sum.maxCoeff();
}

double lipschitz_estimate(const MeasurementEnsemble& ensemble, int iterations, std::uint64_t seed, const Eigen::VectorXd& weights) {
  if (iterations < 1) throw ArgumentError("lipschitz_estimate: iterations must be >= 1");
  const auto n = static_cast<Eigen::Index>(ensemble.signal_size());
  auto forward = [&](const Eigen::MatrixXcd& X) -> Eigen::VectorXd { return lifted_dense(ensemble, X); };

  Rng rng(seed);
  Eigen::MatrixXcd X(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) X(i, k) = rng.complex_normal();
  }
  X = (X + X.adjoint()).eval() * 0.5;
  X /= X.norm();
  double estimate = 0.0;
  for (int it = 0; it < iterations; ++it) {
    const Eigen::VectorXd ax = forward(X);
    const Eigen::VectorXd wax = weighted(ax, weights);
    estimate = ax.dot(wax);  // Rayleigh quotient, ||X||_F = 1
    Eigen::MatrixXcd next = adjoint_matrix(ensemble, wax);
    next = (next + next.adjoint()).eval() * 0.5;
    const double norm = next.norm();
    if (norm == 0.0) return 0.0;
    X = next / norm;
  }
  const Eigen::VectorXd ax = forward(X);
  return std::max(estimate, ax.dot(weighted(ax, weights)));
}

}  // namespace phaselift
