#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "phaselift/experiments/config.hpp"

namespace phaselift::experiments {

/// One reconstruction. Fields that do not apply to a method hold NaN.
struct TrialRecord {
  std::string group;
  std::string method;  ///< phaselift, fienup or constructive
  int trial = 0;
  int masks = 0;
  std::size_t oversample = 1;
  double photons = 0.0;
  double snr_db = 0.0;
  double lambda = 0.0;
  double relative_mse = 0.0;
  double mse_db = 0.0;
  double residual = 0.0;
  double lifted_residual = 0.0;
  double rank_gap = 0.0;
  int iterations = 0;
  std::string status;
};

struct GroupAggregate {
  std::string group;
  std::string method;
  int count = 0;
  double mean_mse = 0.0;
  double median_mse = 0.0;
  double mean_mse_db = 0.0;
  double mean_snr_db = 0.0;
  double mean_residual = 0.0;
  double success_rate = 0.0;  ///< fraction with relative_mse <= threshold
};

/// Shortest round-trip decimal form; "nan", "inf" and "-inf" otherwise.
std::string format_double(double value);

inline const std::vector<std::string>& trial_columns() {
  static const std::vector<std::string> cols = {"group", "method", "trial", "masks", "oversample", "photons",
                                                "snr_db", "lambda", "relative_mse", "mse_db", "residual",
                                                "lifted_residual", "rank_gap", "iterations", "status"};
  return cols;
}

std::string trials_csv(const std::vector<TrialRecord>& records);

/// Aggregates per (group, method) in order of first appearance.
std::vector<GroupAggregate> aggregate(const std::vector<TrialRecord>& records, double success_threshold);

nlohmann::json to_json(const TrialRecord& record);
nlohmann::json to_json(const GroupAggregate& aggregate);

/// Full report document: config echo, version, RNG name, aggregates and
/// per-trial records, plus `extra` merged at the top level.
nlohmann::json make_report(const ExperimentConfig& config, const std::vector<TrialRecord>& records,
                           const nlohmann::json& extra = nlohmann::json::object());

void write_text(const std::string& path, const std::string& text);

}  // namespace phaselift::experiments
