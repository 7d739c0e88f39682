#include "phaselift/experiments/config.hpp"

#include <fstream>
#include <set>

#include "phaselift/error.hpp"

namespace phaselift::experiments {
namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys = {
    "name", "description", "experiment", "signal", "shape", "image_path", "phase_path", "mask", "mask_count",
    "mask_counts", "mask_cover", "oversample", "oversample_factors", "noise", "poisson_scale", "gaussian_sigma", "photon_budgets",
    "objective", "lambda", "rank_cap", "max_iters", "max_iters_per_round", "step_rule", "backtrack_factor",
    "tol_residual", "tol_inner", "reweight", "reweight_epsilon", "reweight_rounds", "reweight_tol",
    "continuation_factor", "continuation_rounds", "real_valued", "lipschitz_iterations", "init", "lambda_search",
    "lambda_lo", "lambda_hi", "golden_evals", "golden_tol", "lambda_scale_by_photons", "fienup_max_iters",
    "fienup_tol_residual", "fienup_tol_stagnation", "fienup_constraint", "shifts", "scrambler", "trials", "seed",
    "threads", "success_threshold", "save_images", "save_traces", "output_dir"};

template <typename T>
T get(const json& doc, const std::string& key, T fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("config key '" + key + "': " + e.what());
  }
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

ExperimentKind experiment_from(const std::string& s) {
  if (s == "recover-1d") return ExperimentKind::Recover1d;
  if (s == "recover-2d") return ExperimentKind::Recover2d;
  if (s == "noise-sweep") return ExperimentKind::NoiseSweep;
  if (s == "oversampling-study") return ExperimentKind::OversamplingStudy;
  if (s == "constructive-demo") return ExperimentKind::ConstructiveDemo;
  throw ConfigError("unknown experiment '" + s + "'");
}

SignalKind signal_from(const std::string& s) {
  if (s == "sinusoid-mix") return SignalKind::SinusoidMix;
  if (s == "complex-gaussian") return SignalKind::ComplexGaussian;
  if (s == "real-nonneg-random") return SignalKind::RealNonnegRandom;
  if (s == "image-file") return SignalKind::ImageFile;
  throw ConfigError("unknown signal kind '" + s + "'");
}

NoiseKind noise_from(const std::string& s) {
  if (s == "none") return NoiseKind::None;
  if (s == "poisson") return NoiseKind::Poisson;
  if (s == "gaussian") return NoiseKind::Gaussian;
  throw ConfigError("unknown noise kind '" + s + "'");
}

Shape shape_from(const std::vector<std::size_t>& dims) {
  require(dims.size() == 1 || dims.size() == 2, "shape must have one or two entries");
  for (std::size_t d : dims) require(d >= 1, "shape entries must be >= 1");
  return dims.size() == 1 ? Shape(dims[0]) : Shape(dims[0], dims[1]);
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Recover1d: return "recover-1d";
    case ExperimentKind::Recover2d: return "recover-2d";
    case ExperimentKind::NoiseSweep: return "noise-sweep";
    case ExperimentKind::OversamplingStudy: return "oversampling-study";
    case ExperimentKind::ConstructiveDemo: return "constructive-demo";
  }
  return "unknown";
}

std::string to_string(SignalKind kind) {
  switch (kind) {
    case SignalKind::SinusoidMix: return "sinusoid-mix";
    case SignalKind::ComplexGaussian: return "complex-gaussian";
    case SignalKind::RealNonnegRandom: return "real-nonneg-random";
    case SignalKind::ImageFile: return "image-file";
  }
  return "unknown";
}

std::string to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::None: return "none";
    case NoiseKind::Poisson: return "poisson";
    case NoiseKind::Gaussian: return "gaussian";
  }
  return "unknown";
}

ExperimentConfig parse_config(const json& doc) {
  require(doc.is_object(), "config must be a JSON object");
  for (const auto& item : doc.items()) {
    require(kKnownKeys.count(item.key()) == 1, "unknown config key '" + item.key() + "'");
    require(!item.value().is_object(), "config must be flat; key '" + item.key() + "' holds an object");
  }
  require(doc.contains("experiment"), "config needs an 'experiment' key");

  ExperimentConfig c;
  c.echo = doc;
  c.experiment = experiment_from(get<std::string>(doc, "experiment", ""));
  c.signal.kind = signal_from(get<std::string>(doc, "signal", "complex-gaussian"));
  c.signal.image_path = get<std::string>(doc, "image_path", "");
  c.signal.phase_path = get<std::string>(doc, "phase_path", "");
  const bool two_d = c.experiment == ExperimentKind::Recover2d;
  const std::vector<std::size_t> default_shape = two_d ? std::vector<std::size_t>{16, 16} : std::vector<std::size_t>{32};
  if (c.signal.kind != SignalKind::ImageFile || doc.contains("shape")) {
    c.signal.shape = shape_from(get<std::vector<std::size_t>>(doc, "shape", default_shape));
  }
  if (c.signal.kind == SignalKind::ImageFile) require(!c.signal.image_path.empty(), "image-file signal needs 'image_path'");
  if (two_d && c.signal.kind != SignalKind::ImageFile) require(c.signal.shape.rank() == 2, "recover-2d needs a 2D shape");
  if (c.experiment == ExperimentKind::Recover1d) require(c.signal.shape.rank() == 1, "recover-1d needs a 1D shape");

  try {
    c.mask_kind = mask_kind_from_string(get<std::string>(doc, "mask", "gaussian-complex"));
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  require(c.mask_kind != MaskKind::Custom && c.mask_kind != MaskKind::Modulation, "mask kind must be a random or constant kind");
  c.mask_count = get<int>(doc, "mask_count", 6);
  require(c.mask_count >= 1, "mask_count must be >= 1");
  c.mask_cover = get<bool>(doc, "mask_cover", true);
  c.mask_counts = get<std::vector<int>>(doc, "mask_counts", {});
  for (int m : c.mask_counts) require(m >= 1, "mask_counts entries must be >= 1");
  c.oversample = get<std::size_t>(doc, "oversample", 1);
  require(c.oversample >= 1, "oversample must be >= 1");
  c.oversample_factors = get<std::vector<std::size_t>>(doc, "oversample_factors", {});
  for (std::size_t r : c.oversample_factors) require(r >= 1, "oversample_factors entries must be >= 1");

  c.noise = noise_from(get<std::string>(doc, "noise", "none"));
  c.poisson_scale = get<double>(doc, "poisson_scale", 1.0);
  c.gaussian_sigma = get<double>(doc, "gaussian_sigma", 0.0);
  c.photon_budgets = get<std::vector<double>>(doc, "photon_budgets", {});
  if (c.noise == NoiseKind::Poisson) require(c.poisson_scale > 0.0, "poisson_scale must be positive");
  if (c.noise == NoiseKind::Gaussian) require(c.gaussian_sigma > 0.0, "gaussian_sigma must be positive");
  for (double p : c.photon_budgets) require(p > 0.0, "photon_budgets entries must be positive");

  SolverConfig& s = c.solver;
  const std::string objective = get<std::string>(doc, "objective", c.noise == NoiseKind::Poisson ? "poisson" : "gaussian");
  require(objective == "gaussian" || objective == "poisson", "objective must be 'gaussian' or 'poisson'");
  s.objective = objective == "poisson" ? Objective::Poisson : Objective::Gaussian;
  s.lambda = get<double>(doc, "lambda", s.lambda);
  require(s.lambda >= 0.0, "lambda must be >= 0");
  s.rank_cap = get<int>(doc, "rank_cap", s.rank_cap);
  require(s.rank_cap >= 1, "rank_cap must be >= 1");
  s.max_iters = get<int>(doc, "max_iters", s.max_iters);
  s.max_iters_per_round = get<int>(doc, "max_iters_per_round", s.max_iters_per_round);
  require(s.max_iters >= 1 && s.max_iters_per_round >= 1, "iteration limits must be >= 1");
  const std::string step = get<std::string>(doc, "step_rule", "fixed");
  require(step == "fixed" || step == "backtracking", "step_rule must be 'fixed' or 'backtracking'");
  s.step_rule = step == "fixed" ? StepRule::Fixed : StepRule::Backtracking;
  s.backtrack_factor = get<double>(doc, "backtrack_factor", s.backtrack_factor);
  require(s.backtrack_factor > 0.0 && s.backtrack_factor < 1.0, "backtrack_factor must lie in (0, 1)");
  s.tol_residual = get<double>(doc, "tol_residual", s.tol_residual);
  s.tol_inner = get<double>(doc, "tol_inner", s.tol_inner);
  s.reweight.enabled = get<bool>(doc, "reweight", false);
  s.reweight.epsilon = get<double>(doc, "reweight_epsilon", s.reweight.epsilon);
  s.reweight.max_rounds = get<int>(doc, "reweight_rounds", s.reweight.max_rounds);
  if (s.reweight.enabled) require(s.reweight.epsilon > 0.0 && s.reweight.max_rounds >= 0, "reweighting needs epsilon > 0 and rounds >= 0");
  s.reweight_tol = get<double>(doc, "reweight_tol", s.reweight_tol);
  if (doc.contains("continuation_factor")) s.continuation_factor = get<double>(doc, "continuation_factor", 1.0);
  if (doc.contains("continuation_rounds")) s.continuation_rounds = get<int>(doc, "continuation_rounds", 0);
  s.real_valued = get<bool>(doc, "real_valued", false);
  s.lipschitz_iterations = get<int>(doc, "lipschitz_iterations", s.lipschitz_iterations);
  require(s.lipschitz_iterations >= 1, "lipschitz_iterations must be >= 1");
  const std::string init = get<std::string>(doc, "init", "spectral");
  require(init == "spectral" || init == "zero", "init must be 'spectral' or 'zero'");
  s.init = init == "spectral" ? Initialization::Spectral : Initialization::Zero;

  c.lambda_search = get<bool>(doc, "lambda_search", c.experiment == ExperimentKind::NoiseSweep);
  c.lambda_lo = get<double>(doc, "lambda_lo", c.lambda_lo);
  c.lambda_hi = get<double>(doc, "lambda_hi", c.lambda_hi);
  require(c.lambda_lo > 0.0 && c.lambda_lo < c.lambda_hi, "need 0 < lambda_lo < lambda_hi");
  c.golden_evals = get<int>(doc, "golden_evals", c.golden_evals);
  require(c.golden_evals >= 4, "golden_evals must be >= 4");
  c.golden_tol = get<double>(doc, "golden_tol", c.golden_tol);
  require(c.golden_tol > 0.0, "golden_tol must be positive");
  c.lambda_scale_by_photons = get<bool>(doc, "lambda_scale_by_photons", true);

  c.fienup.max_iters = get<int>(doc, "fienup_max_iters", c.fienup.max_iters);
  c.fienup.tol_residual = get<double>(doc, "fienup_tol_residual", c.fienup.tol_residual);
  c.fienup.tol_stagnation = get<double>(doc, "fienup_tol_stagnation", c.fienup.tol_stagnation);
  try {
    c.fienup.constraint = spatial_constraint_from_string(get<std::string>(doc, "fienup_constraint", "real-nonnegative"));
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  require(c.fienup.max_iters >= 1, "fienup_max_iters must be >= 1");

  for (const auto& s2 : get<std::vector<std::vector<std::int64_t>>>(doc, "shifts", {})) {
    require(s2.size() == 1 || s2.size() == 2, "each shift needs one or two entries");
    c.shifts.push_back({s2[0], s2.size() == 2 ? s2[1] : 0});
  }
  c.scrambler = get<std::string>(doc, "scrambler", c.scrambler);
  require(c.scrambler == "none" || c.scrambler == "gaussian-complex" || c.scrambler == "gaussian-real",
          "scrambler must be 'none', 'gaussian-complex' or 'gaussian-real'");

  c.trials = get<int>(doc, "trials", 1);
  require(c.trials >= 1, "trials must be >= 1");
  c.seed = get<std::uint64_t>(doc, "seed", 0);
  c.threads = get<int>(doc, "threads", 1);
  require(c.threads >= 1, "threads must be >= 1");
  c.success_threshold = get<double>(doc, "success_threshold", c.success_threshold);
  c.save_images = get<bool>(doc, "save_images", false);
  c.save_traces = get<bool>(doc, "save_traces", false);
  c.output_dir = get<std::string>(doc, "output_dir", c.output_dir);
  s.record_trace = c.save_traces;

  switch (c.experiment) {
    case ExperimentKind::NoiseSweep:
      require(!c.mask_counts.empty(), "noise-sweep needs 'mask_counts'");
      require(!c.photon_budgets.empty(), "noise-sweep needs 'photon_budgets'");
      break;
    case ExperimentKind::OversamplingStudy:
      require(!c.oversample_factors.empty(), "oversampling-study needs 'oversample_factors'");
      break;
    case ExperimentKind::ConstructiveDemo:
      require(!c.shifts.empty(), "constructive-demo needs 'shifts'");
      require(c.signal.kind != SignalKind::ImageFile || c.signal.shape.rank() == 2, "bad constructive signal");
      break;
    default: break;
  }
  if (c.experiment != ExperimentKind::ConstructiveDemo && c.signal.kind != SignalKind::ImageFile) {
    require(c.signal.shape.size() <= kSolverSizeLimit,
            "signal size " + std::to_string(c.signal.shape.size()) + " exceeds the solver limit of " +
                std::to_string(kSolverSizeLimit));
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

}  // namespace phaselift::experiments
