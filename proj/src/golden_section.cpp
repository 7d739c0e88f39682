#include "phaselift/golden_section.hpp"

#include <cmath>
#include <map>

#include "phaselift/error.hpp"
#include "phaselift/metrics.hpp"

namespace phaselift {

GoldenResult golden_section_minimize(const std::function<double(double)>& f, double lo, double hi, double tol,
                                     int max_evals) {
  if (!(lo < hi)) throw ArgumentError("golden_section_minimize: need lo < hi");
  if (!(tol > 0.0)) throw ArgumentError("golden_section_minimize: tol must be positive");
  GoldenResult out;
  auto eval = [&](double x) {
    const double v = f(x);
    out.probes.push_back({x, v});
    if (out.probes.size() == 1 || v < out.value_best) {
      out.value_best = v;
      out.x_best = x;
    }
    return v;
  };
  eval(lo);
  eval(hi);
  double a = lo;
  double b = hi;
  double c = b - kGoldenRatioConjugate * (b - a);
  double d = a + kGoldenRatioConjugate * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  while (b - a > tol && static_cast<int>(out.probes.size()) < max_evals) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGoldenRatioConjugate * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGoldenRatioConjugate * (b - a);
      fd = eval(d);
    }
    ++out.shrinks;
  }
  out.bracket_lo = a;
  out.bracket_hi = b;
  return out;
}

LambdaSearchResult golden_section_lambda(const MeasurementEnsemble& ensemble, const IntensityData& b,
                                         const ComplexSignal& x_true, double lambda_lo, double lambda_hi,
                                         const SolverConfig& config, const LambdaSearchOptions& options) {
  if (!(lambda_lo > 0.0 && lambda_lo < lambda_hi)) throw ArgumentError("golden_section_lambda: need 0 < lo < hi");
  const double target = options.target_norm.value_or(x_true.norm());
  std::map<double, SolverResult> solved;
  auto to_lambda = [&](double u) { return options.log_space ? std::exp(u) : u; };
  auto objective = [&](double u) {
    SolverConfig cfg = config;
    cfg.lambda = to_lambda(u);
    SolverResult r = solve(ensemble, b, cfg, target);
    const double mse = relative_mse(x_true, r.x_hat);
    solved.emplace(u, std::move(r));
    return mse;
  };
  const double lo = options.log_space ? std::log(lambda_lo) : lambda_lo;
  const double hi = options.log_space ? std::log(lambda_hi) : lambda_hi;
  LambdaSearchResult out;
  out.search = golden_section_minimize(objective, lo, hi, options.tol, options.max_evals);
  out.lambda = to_lambda(out.search.x_best);
  out.mse = out.search.value_best;
  out.best = solved.at(out.search.x_best);
  return out;
}

}  // namespace phaselift
