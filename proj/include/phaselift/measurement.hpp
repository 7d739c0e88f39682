#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "phaselift/mask.hpp"
#include "phaselift/signal.hpp"

namespace phaselift {

/// One illumination: a mask followed by a (possibly oversampled) unitary DFT.
struct Illumination {
  Mask mask;
  std::size_t oversample = 1;
};

/// Ordered list of illuminations. Measurement k of block j is
/// |DFT_grid(pad(w_j .* x))[k]|^2; blocks follow illumination order and
/// frequencies follow row-major grid order.
class MeasurementEnsemble {
 public:
  MeasurementEnsemble(Shape signal_shape, std::vector<Illumination> illuminations);

  const Shape& signal_shape() const noexcept { return signal_shape_; }
  std::size_t signal_size() const noexcept { return signal_shape_.size(); }
  std::size_t measurement_count() const noexcept { return m_; }
  std::size_t block_count() const noexcept { return illuminations_.size(); }
  const Illumination& illumination(std::size_t j) const { return illuminations_.at(j); }
  const std::vector<Illumination>& illuminations() const noexcept { return illuminations_; }
  std::size_t block_offset(std::size_t j) const { return offsets_.at(j); }
  std::size_t block_size(std::size_t j) const { return grids_.at(j).size(); }
  const Shape& block_grid(std::size_t j) const { return grids_.at(j); }

  /// Same ensemble with every mask multiplied by `factor`.
  MeasurementEnsemble scaled(cplx factor) const;

 private:
  Shape signal_shape_;
  std::vector<Illumination> illuminations_;
  std::vector<Shape> grids_;
  std::vector<std::size_t> offsets_;
  std::size_t m_ = 0;
};

struct CleanNoise {};
struct PoissonNoise {
  double scale = 1.0;  ///< photons per unit intensity
};
struct GaussianNoise {
  Eigen::VectorXd sigma;
};
using NoiseTag = std::variant<CleanNoise, PoissonNoise, GaussianNoise>;

/// Intensity vector b of length m.
struct IntensityData {
  Eigen::VectorXd values;
  NoiseTag noise = CleanNoise{};

  std::size_t size() const noexcept { return static_cast<std::size_t>(values.size()); }
};

/// Hermitian PSD matrix V diag(lambda) V^* with orthonormal V and
/// descending nonnegative lambda.
struct FactoredPsd {
  std::size_t dimension = 0;
  Eigen::MatrixXcd vectors;
  Eigen::VectorXd values;

  std::size_t rank() const noexcept { return static_cast<std::size_t>(values.size()); }
  double trace() const { return values.sum(); }
  double frobenius_norm() const { return values.norm(); }
  Eigen::MatrixXcd dense() const;

  static FactoredPsd zero(std::size_t dimension);
  static FactoredPsd rank_one(const Eigen::VectorXcd& x);
};

/// Hermitian matrix U diag(c) U^* with arbitrary (not necessarily orthonormal)
/// columns and signed coefficients. Used for FISTA extrapolation points.
struct LowRankHermitian {
  std::size_t dimension = 0;
  Eigen::MatrixXcd basis;
  Eigen::VectorXd coeffs;

  static LowRankHermitian from(const FactoredPsd& X);
  /// a * A + b * B
  static LowRankHermitian combine(double a, const FactoredPsd& A, double b, const FactoredPsd& B);

  Eigen::MatrixXcd apply(const Eigen::MatrixXcd& v) const;
  double frobenius_norm_squared() const;
};

/// b_k = |<a_k, x>|^2 for every sensing vector.
IntensityData sense(const MeasurementEnsemble& ensemble, const ComplexSignal& x);
Eigen::VectorXd sense(const MeasurementEnsemble& ensemble, const Eigen::VectorXcd& x);

/// A(X)_k = Tr(A_k X) = sum_j lambda_j |<a_k, v_j>|^2.
Eigen::VectorXd apply_lifted(const MeasurementEnsemble& ensemble, const FactoredPsd& X);
Eigen::VectorXd apply_lifted(const MeasurementEnsemble& ensemble, const LowRankHermitian& X);

/// (sum_k y_k a_k a_k^*) v
ComplexSignal apply_adjoint_action(const MeasurementEnsemble& ensemble, const Eigen::VectorXd& y, const ComplexSignal& v);

/// Column-wise adjoint action on a block of vectors.
Eigen::MatrixXcd apply_adjoint_action(const MeasurementEnsemble& ensemble, const Eigen::VectorXd& y, const Eigen::MatrixXcd& v);

/// Dense N x N matrix sum_k y_k a_k a_k^*. Each mask block is a circulant
/// convolution over the padded grid sandwiched between diag(conj w) and
/// diag(w), so one inverse FFT per block suffices.
Eigen::MatrixXcd adjoint_matrix(const MeasurementEnsemble& ensemble, const Eigen::VectorXd& y);

/// Power iteration for the largest eigenvalue of X -> A^*(w .* A(X)) over
/// Hermitian matrices, w = `weights` (empty means all ones). Works on dense
/// N x N iterates.
double lipschitz_estimate(const MeasurementEnsemble& ensemble, int iterations, std::uint64_t seed = 0,
                          const Eigen::VectorXd& weights = {});

/// Cheap bound max_k ||a_k||^2 * max_t sum_j |w_j[t]|^2 on the same norm,
/// used when N is too large for dense power iteration.
double lipschitz_upper_bound(const MeasurementEnsemble& ensemble, const Eigen::VectorXd& weights = {});

}  // namespace phaselift
