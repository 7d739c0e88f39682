#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "phaselift/measurement.hpp"
#include "phaselift/signal.hpp"
#include "phaselift/solver.hpp"

namespace phaselift {

inline constexpr double kGoldenRatioConjugate = 0.6180339887498949;  // (sqrt(5) - 1) / 2

struct GoldenProbe {
  double x = 0.0;
  double value = 0.0;
};

struct GoldenResult {
  double x_best = 0.0;
  double value_best = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int shrinks = 0;
  std::vector<GoldenProbe> probes;  ///< every evaluation, in order
};

/// Golden-section search for a minimum of f on [lo, hi]. The endpoints are
/// evaluated as well, so the returned value never exceeds f(lo) or f(hi).
/// Stops when the bracket width is <= tol or after max_evals evaluations.
GoldenResult golden_section_minimize(const std::function<double(double)>& f, double lo, double hi, double tol,
                                     int max_evals = 60);

struct LambdaSearchOptions {
  bool log_space = true;  ///< search over log(lambda)
  double tol = 0.05;      ///< bracket width (in log units when log_space)
  int max_evals = 14;
  std::optional<double> target_norm;
};

struct LambdaSearchResult {
  double lambda = 0.0;
  double mse = 0.0;
  SolverResult best;
  GoldenResult search;
};

/// Chooses the trace-penalty weight minimizing the relative MSE against a
/// known signal, solving once per probe.
LambdaSearchResult golden_section_lambda(const MeasurementEnsemble& ensemble, const IntensityData& b,
                                         const ComplexSignal& x_true, double lambda_lo, double lambda_hi,
                                         const SolverConfig& config, const LambdaSearchOptions& options = {});

}  // namespace phaselift
