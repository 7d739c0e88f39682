#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "phaselift/experiments/config.hpp"
#include "phaselift/experiments/report.hpp"

namespace phaselift::experiments {

struct RunOptions {
  std::optional<std::string> out_dir;  ///< overrides the config; empty string writes nothing
  std::optional<int> threads;
  std::optional<std::uint64_t> seed;
};

struct RunOutcome {
  std::vector<TrialRecord> records;
  nlohmann::json report;
  bool solver_failure = false;  ///< some solve diverged
  double runtime_seconds = 0.0;
  std::string out_dir;
};

/// Runs every trial of the experiment and, unless the output directory is
/// empty, writes report.json, trials.csv, timing.json and the optional
/// curve, image and trace files. Trials run on `threads` workers; records
/// are always gathered in trial order, so the files do not depend on the
/// thread count.
RunOutcome run_experiment(ExperimentConfig config, const RunOptions& options = {});

/// Directory holding the shipped demo configs (PHASELIFT_DEMO_DIR overrides).
std::string demo_directory();
std::vector<std::string> demo_names();

}  // namespace phaselift::experiments
