#include "phaselift/experiments/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "phaselift/error.hpp"
#include "phaselift/experiments/image_io.hpp"
#include "phaselift/experiments/signals.hpp"
#include "phaselift/golden_section.hpp"
#include "phaselift/metrics.hpp"
#include "phaselift/noise.hpp"
#include "phaselift/rng.hpp"

#ifndef PHASELIFT_DEMO_DIR
#define PHASELIFT_DEMO_DIR "configs"
#endif

namespace phaselift::experiments {
namespace {

namespace fs = std::filesystem;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

/// Output of one work unit: its records plus optional side files.
struct UnitResult {
  std::vector<TrialRecord> records;
  std::vector<std::pair<std::string, std::string>> text_files;
  std::vector<std::pair<std::string, ComplexSignal>> images;
};

std::vector<UnitResult> run_units(std::size_t count, int threads, const std::function<UnitResult(std::size_t)>& work) {
  std::vector<UnitResult> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        results[i] = work(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), std::max<std::size_t>(count, 1));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

bool covers_every_pixel(const std::vector<Illumination>& ill, std::size_t size) {
  for (std::size_t t = 0; t < size; ++t) {
    bool lit = false;
    for (const auto& i : ill) lit = lit || i.mask.weights()[static_cast<Eigen::Index>(t)] != cplx(0.0, 0.0);
    if (!lit) return false;
  }
  return true;
}

/// Attempt 0 uses the plain per-trial mask seeds; redraws (when coverage is
/// required) move to fresh seeds.
std::vector<Illumination> random_masks(const ExperimentConfig& c, const Shape& shape, int count, std::size_t oversample,
                                       std::uint64_t trial) {
  constexpr int kMaxRedraws = 100000;
  for (std::uint64_t attempt = 0; attempt < kMaxRedraws; ++attempt) {
    std::vector<Illumination> ill;
    for (int j = 0; j < count; ++j) {
      const std::uint64_t index = ((attempt << 32) | trial) * 1024 + static_cast<std::uint64_t>(j);
      ill.push_back({make_mask(shape, c.mask_kind, derive_seed(c.seed, streams::kMask, index)), oversample});
    }
    if (!c.mask_cover || covers_every_pixel(ill, shape.size())) return ill;
  }
  throw ConfigError("could not draw masks that illuminate every pixel; add masks or set mask_cover to false");
}

std::string trace_csv(const SolverResult& r) {
  std::ostringstream out;
  out << "iteration,round,lambda,objective,residual,step,eig1,eig2,eig3\n";
  for (const auto& t : r.trace) {
    out << t.iteration << "," << t.round << "," << format_double(t.lambda) << "," << format_double(t.objective) << ","
        << format_double(t.residual) << "," << format_double(t.step) << "," << format_double(t.top_eigenvalues[0]) << ","
        << format_double(t.top_eigenvalues[1]) << "," << format_double(t.top_eigenvalues[2]) << "\n";
  }
  return out.str();
}

struct PhaseliftOutcome {
  SolverResult result;
  double lambda = 0.0;
};

/// Solves once, or runs the golden-section search when configured.
PhaseliftOutcome run_phaselift(const ExperimentConfig& c, const MeasurementEnsemble& ens, const IntensityData& b,
                               const ComplexSignal& x, std::uint64_t solver_seed, double lambda_unit) {
  SolverConfig cfg = c.solver;
  cfg.seed = solver_seed;
  cfg.eigen.seed = solver_seed;
  PhaseliftOutcome out;
  if (c.lambda_search) {
    LambdaSearchOptions opt;
    opt.max_evals = c.golden_evals;
    opt.tol = c.golden_tol;
    opt.target_norm = x.norm();
    LambdaSearchResult r = golden_section_lambda(ens, b, x, c.lambda_lo * lambda_unit, c.lambda_hi * lambda_unit, cfg, opt);
    out.result = std::move(r.best);
    out.lambda = r.lambda;
  } else {
    cfg.lambda = c.solver.lambda * lambda_unit;
    out.result = solve(ens, b, cfg, x.norm());
    out.lambda = cfg.lambda;
  }
  return out;
}

TrialRecord phaselift_record(const ComplexSignal& x, const PhaseliftOutcome& p) {
  TrialRecord r;
  r.method = "phaselift";
  r.lambda = p.lambda;
  r.relative_mse = relative_mse(x, p.result.x_hat);
  r.mse_db = to_db(r.relative_mse);
  r.residual = p.result.residual;
  r.lifted_residual = p.result.lifted_residual;
  r.rank_gap = p.result.rank_gap();
  r.iterations = p.result.iterations;
  r.status = to_string(p.result.status);
  return r;
}

/// x_hat rotated by the phase that best aligns it with x, for image output.
ComplexSignal aligned(const ComplexSignal& x, const ComplexSignal& x_hat) {
  const cplx c = optimal_phase(x.data(), x_hat.data());
  return ComplexSignal(x_hat.shape(), x_hat.data() * std::conj(c));
}

std::string trial_tag(int trial) {
  std::ostringstream s;
  s << trial;
  std::string t = s.str();
  return std::string(t.size() < 3 ? 3 - t.size() : 0, '0') + t;
}

// --------------------------------------------------------------------------

std::vector<UnitResult> run_recover(const ExperimentConfig& c, int threads) {
  return run_units(static_cast<std::size_t>(c.trials), threads, [&](std::size_t i) {
    const auto trial = static_cast<std::uint64_t>(i);
    const ComplexSignal x = make_signal(c.signal, derive_seed(c.seed, streams::kSignal, trial));
    if (x.shape().size() > kSolverSizeLimit) throw ConfigError("image exceeds the solver size limit");
    const MeasurementEnsemble ens(x.shape(), random_masks(c, x.shape(), c.mask_count, c.oversample, trial));
    const IntensityData clean = sense(ens, x);
    IntensityData b = clean;
    double lambda_unit = 1.0;
    double photons = kNan;
    if (c.noise == NoiseKind::Poisson) {
      b = corrupt(clean, PoissonNoise{c.poisson_scale}, derive_seed(c.seed, streams::kNoise, trial));
      photons = c.poisson_scale;
      if (c.lambda_scale_by_photons) lambda_unit = 1.0 / c.poisson_scale;
    } else if (c.noise == NoiseKind::Gaussian) {
      b = corrupt(clean, GaussianNoise{Eigen::VectorXd::Constant(clean.values.size(), c.gaussian_sigma)},
                  derive_seed(c.seed, streams::kNoise, trial));
    }
    const PhaseliftOutcome p = run_phaselift(c, ens, b, x, derive_seed(c.seed, streams::kSolver, trial), lambda_unit);
    UnitResult u;
    TrialRecord r = phaselift_record(x, p);
    r.group = "all";
    r.trial = static_cast<int>(i);
    r.masks = c.mask_count;
    r.oversample = c.oversample;
    r.photons = photons;
    r.snr_db = snr_db(clean, b);
    u.records.push_back(r);
    const std::string tag = trial_tag(static_cast<int>(i));
    if (c.save_traces) u.text_files.emplace_back("trace_trial" + tag + ".csv", trace_csv(p.result));
    if (c.save_images && x.shape().rank() == 2) {
      u.images.emplace_back("truth_trial" + tag + ".pgm", x);
      u.images.emplace_back("recon_trial" + tag + ".pgm", aligned(x, p.result.x_hat));
    }
    return u;
  });
}

std::vector<UnitResult> run_noise_sweep(const ExperimentConfig& c, int threads) {
  const std::size_t n_masks = c.mask_counts.size();
  const std::size_t n_levels = c.photon_budgets.size();
  const std::size_t n_trials = static_cast<std::size_t>(c.trials);
  return run_units(n_masks * n_levels * n_trials, threads, [&](std::size_t unit) {
    const std::size_t mi = unit / (n_levels * n_trials);
    const std::size_t li = (unit / n_trials) % n_levels;
    const std::size_t ti = unit % n_trials;
    const auto trial = static_cast<std::uint64_t>(ti);
    const int masks = c.mask_counts[mi];
    const double photons = c.photon_budgets[li];
    const ComplexSignal x = make_signal(c.signal, derive_seed(c.seed, streams::kSignal, trial));
    const MeasurementEnsemble ens(x.shape(), random_masks(c, x.shape(), masks, c.oversample, trial));
    const IntensityData clean = sense(ens, x);
    const std::uint64_t noise_seed = derive_seed(c.seed, streams::kNoise, (trial * 64 + li) * 64 + mi);
    const IntensityData b = corrupt(clean, PoissonNoise{photons}, noise_seed);
    const double lambda_unit = c.lambda_scale_by_photons ? 1.0 / photons : 1.0;
    const PhaseliftOutcome p = run_phaselift(c, ens, b, x, derive_seed(c.seed, streams::kSolver, trial), lambda_unit);
    TrialRecord r = phaselift_record(x, p);
    std::ostringstream group;
    group << "masks=" << masks << ";photons=" << format_double(photons);
    r.group = group.str();
    r.trial = static_cast<int>(ti);
    r.masks = masks;
    r.oversample = c.oversample;
    r.photons = photons;
    r.snr_db = snr_db(clean, b);
    UnitResult u;
    u.records.push_back(r);
    return u;
  });
}

std::vector<UnitResult> run_oversampling(const ExperimentConfig& c, int threads) {
  const std::size_t n_factors = c.oversample_factors.size();
  const std::size_t n_trials = static_cast<std::size_t>(c.trials);
  return run_units(n_factors * n_trials, threads, [&](std::size_t unit) {
    const std::size_t fi = unit / n_trials;
    const std::size_t ti = unit % n_trials;
    const auto trial = static_cast<std::uint64_t>(ti);
    const std::size_t r_factor = c.oversample_factors[fi];
    const ComplexSignal x = make_signal(c.signal, derive_seed(c.seed, streams::kSignal, trial));
    const MeasurementEnsemble ens(x.shape(), {Illumination{make_mask(x.shape(), MaskKind::Constant), r_factor}});
    const IntensityData b = sense(ens, x);
    const std::string group = "oversample=" + std::to_string(r_factor);

    UnitResult u;
    const PhaseliftOutcome p = run_phaselift(c, ens, b, x, derive_seed(c.seed, streams::kSolver, trial * 16 + fi), 1.0);
    TrialRecord pr = phaselift_record(x, p);
    pr.group = group;
    pr.trial = static_cast<int>(ti);
    pr.masks = 1;
    pr.oversample = r_factor;
    pr.photons = kNan;
    pr.snr_db = kSnrCapDb;
    u.records.push_back(pr);

    FienupConfig fc = c.fienup;
    fc.signal_shape = x.shape();
    fc.oversample = r_factor;
    fc.seed = derive_seed(c.seed, streams::kFienup, trial * 16 + fi);
    const FienupResult f = error_reduction(b.values.cwiseMax(0.0).cwiseSqrt(), fc);
    TrialRecord fr;
    fr.group = group;
    fr.method = "fienup";
    fr.trial = static_cast<int>(ti);
    fr.masks = 1;
    fr.oversample = r_factor;
    fr.photons = kNan;
    fr.snr_db = kSnrCapDb;
    fr.lambda = kNan;
    fr.relative_mse = relative_mse(x, f.x);
    fr.mse_db = to_db(fr.relative_mse);
    fr.residual = f.residual;
    fr.lifted_residual = kNan;
    fr.rank_gap = kNan;
    fr.iterations = f.iterations;
    fr.status = to_string(f.status);
    u.records.push_back(fr);
    if (c.save_traces) u.text_files.emplace_back("trace_" + group + "_trial" + trial_tag(static_cast<int>(ti)) + ".csv", trace_csv(p.result));
    return u;
  });
}

std::optional<Mask> make_scrambler(const ExperimentConfig& c, const Shape& shape, std::uint64_t trial) {
  if (c.scrambler == "none") return std::nullopt;
  const MaskKind kind = c.scrambler == "gaussian-real" ? MaskKind::GaussianReal : MaskKind::GaussianComplex;
  return make_mask(shape, kind, derive_seed(c.seed, streams::kMask, trial * 1024));
}

std::vector<UnitResult> run_constructive(const ExperimentConfig& c, int threads, const UniquenessVerdict& verdict) {
  return run_units(static_cast<std::size_t>(c.trials), threads, [&](std::size_t i) {
    const auto trial = static_cast<std::uint64_t>(i);
    const ComplexSignal x = make_signal(c.signal, derive_seed(c.seed, streams::kSignal, trial));
    const std::optional<Mask> w = make_scrambler(c, x.shape(), trial);
    TrialRecord r;
    r.group = "all";
    r.method = "constructive";
    r.trial = static_cast<int>(i);
    r.masks = static_cast<int>(1 + 2 * c.shifts.size());
    r.photons = kNan;
    r.snr_db = kSnrCapDb;
    r.lambda = kNan;
    r.lifted_residual = kNan;
    r.rank_gap = kNan;
    r.iterations = 1;
    if (!verdict.unique) {
      r.relative_mse = kNan;
      r.mse_db = kNan;
      r.residual = kNan;
      r.status = "not-unique";
    } else {
      std::vector<ModulationTriple> triples;
      for (const Shift& s : c.shifts) triples.push_back(simulate_triple(x, s, w));
      try {
        const ComplexSignal rec = recover(triples, x.shape(), w);
        r.relative_mse = relative_mse(x, rec);
        r.mse_db = to_db(r.relative_mse);
        double res_sq = 0.0;
        double b_sq = 0.0;
        for (std::size_t j = 0; j < triples.size(); ++j) {
          const ModulationTriple t = simulate_triple(rec, c.shifts[j], w);
          res_sq += (t.I0 - triples[j].I0).squaredNorm() + (t.Iplus - triples[j].Iplus).squaredNorm() + (t.Ii - triples[j].Ii).squaredNorm();
          b_sq += triples[j].I0.squaredNorm() + triples[j].Iplus.squaredNorm() + triples[j].Ii.squaredNorm();
        }
        r.residual = b_sq > 0.0 ? std::sqrt(res_sq / b_sq) : 0.0;
        r.status = "recovered";
      } catch (const VanishingDftError&) {
        r.relative_mse = kNan;
        r.mse_db = kNan;
        r.residual = kNan;
        r.status = "vanishing-dft";
      }
    }
    UnitResult u;
    u.records.push_back(r);
    return u;
  });
}

/// Mean SNR and MSE in dB per (masks, photons), in sweep order.
std::string curve_csv(const ExperimentConfig& c, const std::vector<TrialRecord>& records) {
  std::ostringstream out;
  out << "masks,photons,mean_snr_db,mean_mse_db,count\n";
  for (int masks : c.mask_counts) {
    for (double photons : c.photon_budgets) {
      double snr = 0.0;
      double mse = 0.0;
      int count = 0;
      for (const auto& r : records) {
        if (r.masks != masks || r.photons != photons) continue;
        snr += r.snr_db;
        mse += r.mse_db;
        ++count;
      }
      out << masks << "," << format_double(photons) << "," << format_double(count ? snr / count : kNan) << ","
          << format_double(count ? mse / count : kNan) << "," << count << "\n";
    }
  }
  return out.str();
}

}  // namespace

std::string demo_directory() {
  if (const char* env = std::getenv("PHASELIFT_DEMO_DIR"); env && *env) return env;
  return PHASELIFT_DEMO_DIR;
}

std::vector<std::string> demo_names() {
  std::vector<std::string> names;
  const fs::path dir(demo_directory());
  if (!fs::is_directory(dir)) return names;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".json") names.push_back(entry.path().stem().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

RunOutcome run_experiment(ExperimentConfig config, const RunOptions& options) {
  if (options.seed) config.seed = *options.seed;
  if (options.threads) {
    if (*options.threads < 1) throw ConfigError("threads must be >= 1");
    config.threads = *options.threads;
  }
  RunOutcome outcome;
  outcome.out_dir = options.out_dir.value_or(config.output_dir);
  const auto start = std::chrono::steady_clock::now();

  nlohmann::json extra = nlohmann::json::object();
  std::vector<UnitResult> units;
  switch (config.experiment) {
    case ExperimentKind::Recover1d:
    case ExperimentKind::Recover2d: units = run_recover(config, config.threads); break;
    case ExperimentKind::NoiseSweep: units = run_noise_sweep(config, config.threads); break;
    case ExperimentKind::OversamplingStudy: units = run_oversampling(config, config.threads); break;
    case ExperimentKind::ConstructiveDemo: {
      const UniquenessVerdict v = uniqueness_check(config.signal.shape, config.shifts);
      extra["uniqueness"] = {{"verdict", v.unique ? "Unique" : "NotUnique"},
                             {"reason", v.reason},
                             {"subgroup_order", v.subgroup_order}};
      units = run_constructive(config, config.threads, v);
      break;
    }
  }
  for (const auto& u : units) {
    for (const auto& r : u.records) {
      outcome.records.push_back(r);
      if (r.status == to_string(SolveStatus::Diverged)) outcome.solver_failure = true;
    }
  }
  outcome.report = make_report(config, outcome.records, extra);
  outcome.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (!outcome.out_dir.empty()) {
    const fs::path dir(outcome.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error("cannot create output directory '" + outcome.out_dir + "': " + ec.message());
    write_text((dir / "report.json").string(), outcome.report.dump(2) + "\n");
    write_text((dir / "trials.csv").string(), trials_csv(outcome.records));
    nlohmann::json timing = {{"runtime_seconds", outcome.runtime_seconds}, {"threads", config.threads}};
    write_text((dir / "timing.json").string(), timing.dump(2) + "\n");
    if (config.experiment == ExperimentKind::NoiseSweep) write_text((dir / "curve.csv").string(), curve_csv(config, outcome.records));
    for (const auto& u : units) {
      for (const auto& [name, text] : u.text_files) write_text((dir / name).string(), text);
      for (const auto& [name, image] : u.images) save_pgm((dir / name).string(), image);
    }
  }
  return outcome;
}

}  // namespace phaselift::experiments
