#pragma once

#include "phaselift/measurement.hpp"
#include "phaselift/signal.hpp"

namespace phaselift {

inline constexpr double kDbCap = 300.0;

/// Per-reconstruction error summary.
struct Report {
  double relative_mse = 0.0;
  double mse_db = 0.0;  ///< 10 log10(relative_mse), clamped to [-300, 300]
  double residual = 0.0;
  double rank_gap = 0.0;  ///< lambda_2 / lambda_1 of the lifted solution
};

double to_db(double ratio);

/// min_{|c|=1} ||c x0 - x_hat||^2 / ||x0||^2 in closed form.
double relative_mse(const ComplexSignal& x0, const ComplexSignal& x_hat);
double relative_mse(const Eigen::VectorXcd& x0, const Eigen::VectorXcd& x_hat);

/// Unimodular c minimizing ||c x0 - x_hat||, i.e. the phase of <x0, x_hat>.
cplx optimal_phase(const Eigen::VectorXcd& x0, const Eigen::VectorXcd& x_hat);

/// ||x0 x0^* - xh xh^*||_F / ||x0 x0^*||_F from inner products only.
double matrix_relative_error(const ComplexSignal& x0, const ComplexSignal& x_hat);

/// ||sense(x_hat) - b|| / ||b||
double residual(const MeasurementEnsemble& ensemble, const ComplexSignal& x_hat, const IntensityData& b);

/// ||A(X) - b|| / ||b||
double lifted_residual(const MeasurementEnsemble& ensemble, const FactoredPsd& X, const IntensityData& b);

Report make_report(const ComplexSignal& x0, const ComplexSignal& x_hat, double residual_value, double rank_gap);

}  // namespace phaselift
