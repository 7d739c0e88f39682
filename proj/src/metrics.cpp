#include "phaselift/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "phaselift/error.hpp"

namespace phaselift {

double to_db(double ratio) {
  if (!(ratio > 0.0)) return -kDbCap;
  return std::clamp(10.0 * std::log10(ratio), -kDbCap, kDbCap);
}

cplx optimal_phase(const Eigen::VectorXcd& x0, const Eigen::VectorXcd& x_hat) {
  // ||c x0 - xh||^2 = ||x0||^2 + ||xh||^2 - 2 Re(conj(c) <x0, xh>), with
  // <x0, xh> = x0^* xh; the minimizer is c = <x0, xh> / |<x0, xh>|.
  const cplx inner = x0.dot(x_hat);
  const double mag = std::abs(inner);
  return mag == 0.0 ? cplx(1.0, 0.0) : inner / mag;
}

double relative_mse(const Eigen::VectorXcd& x0, const Eigen::VectorXcd& x_hat) {
  if (x0.size() != x_hat.size()) throw ShapeError("relative_mse: length mismatch");
  const double n0 = x0.squaredNorm();
  if (n0 == 0.0) throw ArgumentError("relative_mse: reference signal is zero");
  const double value = (n0 + x_hat.squaredNorm() - 2.0 * std::abs(x0.dot(x_hat))) / n0;
  return std::max(value, 0.0);
}

double relative_mse(const ComplexSignal& x0, const ComplexSignal& x_hat) {
  if (!(x0.shape() == x_hat.shape())) throw ShapeError("relative_mse: shape mismatch");
  return relative_mse(x0.data(), x_hat.data());
}

double matrix_relative_error(const ComplexSignal& x0, const ComplexSignal& x_hat) {
  if (!(x0.shape() == x_hat.shape())) throw ShapeError("matrix_relative_error: shape mismatch");
  const double a = x0.data().squaredNorm();
  if (a == 0.0) throw ArgumentError("matrix_relative_error: reference signal is zero");
  const double b = x_hat.data().squaredNorm();
  const double cross = std::norm(x0.data().dot(x_hat.data()));
  // ||xx^* - yy^*||_F^2 = ||x||^4 + ||y||^4 - 2 |<x, y>|^2
  const double num = std::max(a * a + b * b - 2.0 * cross, 0.0);
  return std::sqrt(num) / a;
}

double residual(const MeasurementEnsemble& ensemble, const ComplexSignal& x_hat, const IntensityData& b) {
  const double bn = b.values.norm();
  if (bn == 0.0) throw ArgumentError("residual: data vector is zero");
  return (sense(ensemble, x_hat).values - b.values).norm() / bn;
}

double lifted_residual(const MeasurementEnsemble& ensemble, const FactoredPsd& X, const IntensityData& b) {
  const double bn = b.values.norm();
  if (bn == 0.0) throw ArgumentError("lifted_residual: data vector is zero");
  return (apply_lifted(ensemble, X) - b.values).norm() / bn;
}

Report make_report(const ComplexSignal& x0, const ComplexSignal& x_hat, double residual_value, double rank_gap) {
  Report r;
  r.relative_mse = relative_mse(x0, x_hat);
  r.mse_db = to_db(r.relative_mse);
  r.residual = residual_value;
  r.rank_gap = rank_gap;
  return r;
}

}  // namespace phaselift
