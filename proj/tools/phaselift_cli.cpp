#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "phaselift/error.hpp"
#include "phaselift/experiments/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

int execute(const std::string& config_path, const phaselift::experiments::RunOptions& options) {
  using namespace phaselift;
  experiments::ExperimentConfig config;
  try {
    config = experiments::load_config(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  try {
    const auto outcome = experiments::run_experiment(config, options);
    std::cout << "experiment " << experiments::to_string(config.experiment) << ": " << outcome.records.size()
              << " records in " << outcome.runtime_seconds << " s";
    if (!outcome.out_dir.empty()) std::cout << " -> " << outcome.out_dir;
    std::cout << "\n";
    for (const auto& a : experiments::aggregate(outcome.records, config.success_threshold)) {
      std::cout << "  " << a.group << " [" << a.method << "] n=" << a.count << " mean rel. MSE "
                << experiments::format_double(a.mean_mse) << " (" << experiments::format_double(a.mean_mse_db)
                << " dB), success " << a.success_rate << "\n";
    }
    if (outcome.solver_failure) {
      std::cerr << "solver failure: at least one solve diverged\n";
      return kExitSolver;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase retrieval from coded diffraction patterns"};
  app.set_version_flag("--version", PHASELIFT_VERSION);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int threads = 0;
  std::uint64_t seed = 0;
  auto* run = app.add_subcommand("run", "Run an experiment from a JSON config");
  run->add_option("config", config_path, "Experiment config (flat JSON)")->required()->check(CLI::ExistingFile);
  auto* out_opt = run->add_option("--out", out_dir, "Output directory");
  auto* threads_opt = run->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  auto* seed_opt = run->add_option("--seed", seed, "Override the config seed");

  std::string demo_name;
  std::string demo_out;
  int demo_threads = 0;
  auto* demo = app.add_subcommand("demo", "Run a shipped config by name");
  demo->add_option("name", demo_name, "Demo name (omit to list)");
  auto* demo_out_opt = demo->add_option("--out", demo_out, "Output directory");
  auto* demo_threads_opt = demo->add_option("--threads", demo_threads, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  phaselift::experiments::RunOptions options;
  if (run->parsed()) {
    if (*out_opt) options.out_dir = out_dir;
    if (*threads_opt) options.threads = threads;
    if (*seed_opt) options.seed = seed;
    return execute(config_path, options);
  }

  const auto names = phaselift::experiments::demo_names();
  if (demo_name.empty()) {
    std::cout << "demos in " << phaselift::experiments::demo_directory() << ":\n";
    for (const auto& n : names) std::cout << "  " << n << "\n";
    return kExitOk;
  }
  if (std::find(names.begin(), names.end(), demo_name) == names.end()) {
    std::cerr << "unknown demo '" << demo_name << "'; run 'phaselift demo' to list them\n";
    return kExitConfig;
  }
  options.out_dir = *demo_out_opt ? demo_out : ("out/" + demo_name);
  if (*demo_threads_opt) options.threads = demo_threads;
  const auto path = std::filesystem::path(phaselift::experiments::demo_directory()) / (demo_name + ".json");
  return execute(path.string(), options);
}
