#include "phaselift/experiments/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "phaselift/error.hpp"
#include "phaselift/metrics.hpp"
#include "phaselift/noise.hpp"
#include "phaselift/rng.hpp"

#ifndef PHASELIFT_VERSION
#define PHASELIFT_VERSION "phaselift"
#endif

namespace phaselift::experiments {
namespace {

nlohmann::json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return std::nan("");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double median_of(std::vector<double> v) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw Error("format_double: conversion failed");
  return std::string(buf, ptr);
}

std::string trials_csv(const std::vector<TrialRecord>& records) {
  std::ostringstream out;
  const auto& cols = trial_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << "\n";
  for (const auto& r : records) {
    out << r.group << "," << r.method << "," << r.trial << "," << r.masks << "," << r.oversample << ","
        << format_double(r.photons) << "," << format_double(r.snr_db) << "," << format_double(r.lambda) << ","
        << format_double(r.relative_mse) << "," << format_double(r.mse_db) << "," << format_double(r.residual) << ","
        << format_double(r.lifted_residual) << "," << format_double(r.rank_gap) << "," << r.iterations << "," << r.status
        << "\n";
  }
  return out.str();
}

std::vector<GroupAggregate> aggregate(const std::vector<TrialRecord>& records, double success_threshold) {
  std::vector<std::pair<std::string, std::string>> order;
  std::map<std::pair<std::string, std::string>, std::vector<const TrialRecord*>> groups;
  for (const auto& r : records) {
    const auto key = std::make_pair(r.group, r.method);
    if (!groups.count(key)) order.push_back(key);
    groups[key].push_back(&r);
  }
  std::vector<GroupAggregate> out;
  for (const auto& key : order) {
    const auto& members = groups.at(key);
    GroupAggregate a;
    a.group = key.first;
    a.method = key.second;
    a.count = static_cast<int>(members.size());
    std::vector<double> mse, mse_db, snr, res;
    int successes = 0;
    for (const TrialRecord* r : members) {
      if (std::isfinite(r->relative_mse)) {
        mse.push_back(r->relative_mse);
        mse_db.push_back(r->mse_db);
      }
      if (std::isfinite(r->snr_db)) snr.push_back(r->snr_db);
      if (std::isfinite(r->residual)) res.push_back(r->residual);
      if (r->relative_mse <= success_threshold) ++successes;
    }
    a.mean_mse = mean_of(mse);
    a.median_mse = median_of(mse);
    a.mean_mse_db = mean_of(mse_db);
    a.mean_snr_db = mean_of(snr);
    a.mean_residual = mean_of(res);
    a.success_rate = static_cast<double>(successes) / static_cast<double>(a.count);
    out.push_back(a);
  }
  return out;
}

nlohmann::json to_json(const TrialRecord& r) {
  return {{"group", r.group},
          {"method", r.method},
          {"trial", r.trial},
          {"masks", r.masks},
          {"oversample", r.oversample},
          {"photons", number_or_null(r.photons)},
          {"snr_db", number_or_null(r.snr_db)},
          {"lambda", number_or_null(r.lambda)},
          {"relative_mse", number_or_null(r.relative_mse)},
          {"mse_db", number_or_null(r.mse_db)},
          {"residual", number_or_null(r.residual)},
          {"lifted_residual", number_or_null(r.lifted_residual)},
          {"rank_gap", number_or_null(r.rank_gap)},
          {"iterations", r.iterations},
          {"status", r.status}};
}

nlohmann::json to_json(const GroupAggregate& a) {
  return {{"group", a.group},
          {"method", a.method},
          {"count", a.count},
          {"mean_relative_mse", number_or_null(a.mean_mse)},
          {"median_relative_mse", number_or_null(a.median_mse)},
          {"mean_mse_db", number_or_null(a.mean_mse_db)},
          {"mean_snr_db", number_or_null(a.mean_snr_db)},
          {"mean_residual", number_or_null(a.mean_residual)},
          {"success_rate", a.success_rate}};
}

nlohmann::json make_report(const ExperimentConfig& config, const std::vector<TrialRecord>& records, const nlohmann::json& extra) {
  nlohmann::json doc;
  doc["version"] = PHASELIFT_VERSION;
  doc["rng"] = std::string(kRngName);
  doc["experiment"] = to_string(config.experiment);
  doc["config"] = config.echo;
  doc["seed"] = config.seed;
  doc["success_threshold"] = config.success_threshold;
  doc["conventions"] = {
      {"dft", "unitary, exp(-i 2 pi w t / n) / sqrt(n), oversampling by zero padding"},
      {"sensing_vectors", "no per-row renormalization; binary masks give rows of norm below one"},
      {"snr_db", "10 log10(||b_clean||^2 / ||b_noisy - b_clean||^2), capped at 300"},
      {"mse_db", "10 log10(relative MSE), clamped to [-300, 300]"}};
  nlohmann::json aggs = nlohmann::json::array();
  for (const auto& a : aggregate(records, config.success_threshold)) aggs.push_back(to_json(a));
  doc["aggregates"] = aggs;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : records) rows.push_back(to_json(r));
  doc["trials"] = rows;
  for (const auto& item : extra.items()) doc[item.key()] = item.value();
  return doc;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace phaselift::experiments
