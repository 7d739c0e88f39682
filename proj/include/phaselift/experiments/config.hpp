#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "phaselift/constructive.hpp"
#include "phaselift/fienup.hpp"
#include "phaselift/mask.hpp"
#include "phaselift/signal.hpp"
#include "phaselift/solver.hpp"

namespace phaselift::experiments {

enum class ExperimentKind { Recover1d, Recover2d, NoiseSweep, OversamplingStudy, ConstructiveDemo };
enum class SignalKind { SinusoidMix, ComplexGaussian, RealNonnegRandom, ImageFile };
enum class NoiseKind { None, Poisson, Gaussian };

std::string to_string(ExperimentKind kind);
std::string to_string(SignalKind kind);
std::string to_string(NoiseKind kind);

/// Largest signal size accepted by the lifted solver experiments.
inline constexpr std::size_t kSolverSizeLimit = 16384;

struct SignalSpec {
  SignalKind kind = SignalKind::ComplexGaussian;
  Shape shape{32};
  std::string image_path;
  std::string phase_path;
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::Recover1d;
  SignalSpec signal;
  MaskKind mask_kind = MaskKind::GaussianComplex;
  int mask_count = 6;
  /// Redraw random masks until every pixel has a nonzero weight in at least
  /// one of them; unilluminated pixels cannot be recovered by any method.
  bool mask_cover = true;
  std::vector<int> mask_counts;  ///< noise sweep
  std::size_t oversample = 1;
  std::vector<std::size_t> oversample_factors;  ///< oversampling study

  NoiseKind noise = NoiseKind::None;
  double poisson_scale = 1.0;
  double gaussian_sigma = 0.0;
  std::vector<double> photon_budgets;  ///< noise sweep, photons per unit intensity

  SolverConfig solver;
  bool lambda_search = false;
  double lambda_lo = 1e-3;
  double lambda_hi = 10.0;
  int golden_evals = 12;
  double golden_tol = 0.1;
  bool lambda_scale_by_photons = true;

  FienupConfig fienup;  ///< shape, support, oversample and seed are filled per trial

  std::vector<Shift> shifts;  ///< constructive demo
  std::string scrambler = "gaussian-complex";

  int trials = 1;
  std::uint64_t seed = 0;
  int threads = 1;
  double success_threshold = 1e-4;
  bool save_images = false;
  bool save_traces = false;
  std::string output_dir = "out";

  nlohmann::json echo;  ///< the document as parsed, embedded in reports
};

/// Parses and validates a flat JSON document. Unknown keys, bad values and
/// infeasible sizes raise ConfigError before anything is computed.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::string& path);

}  // namespace phaselift::experiments
