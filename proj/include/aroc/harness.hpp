#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aroc/estimator.hpp"

namespace aroc::harness {

/// Replicated-benchmark layout: scenarios x groups x sizes x replicates, each
/// fit with every regressor kind on identical data.
struct ExperimentConfig {
  std::vector<int> scenario_ids{1};
  std::vector<std::size_t> sample_sizes{5000, 20000};
  std::size_t replicates = 10;  // desk scale; raise for full runs
  std::vector<RegressorKind> kinds{RegressorKind::fnn, RegressorKind::forest};
  std::uint64_t base_seed = 0;
  std::size_t test_size = 2000;
  std::size_t workers = 1;
  FitConfig fit;

  void validate() const;
};

struct ReplicateResult {
  int scenario = 0;
  int group = 0;  // 0 healthy, 1 diseased
  std::size_t n = 0;
  RegressorKind kind = RegressorKind::fnn;
  std::size_t replicate = 0;
  double mse_mean = 0.0;
  double mse_std = 0.0;
  bool ok = false;
  std::string error;
};

struct SummaryCell {
  int scenario = 0;
  int group = 0;
  std::size_t n = 0;
  RegressorKind kind = RegressorKind::fnn;
  std::size_t replicates_ok = 0;
  bool missing = true;
  double mean_mse_mean = 0.0;
  double std_mse_mean = 0.0;
  double mean_mse_std = 0.0;
  double std_mse_std = 0.0;
};

struct ExperimentResults {
  ExperimentConfig config;
  std::vector<ReplicateResult> replicates;
  std::vector<SummaryCell> summary;
};

/// One replicate: generates a training set of size n and a fresh test
/// covariate set, then fits and scores every regressor kind on those same
/// rows. Failures are captured per kind instead of thrown.
std::vector<ReplicateResult> run_replicate(int scenario, int group, std::size_t n,
                                           const std::vector<RegressorKind>& kinds,
                                           std::size_t replicate, std::uint64_t base_seed,
                                           const FitConfig& fit, std::size_t test_size);

ExperimentResults run_experiment(const ExperimentConfig& config);

std::string group_name(int group);  // "healthy" / "diseased"

/// CSV of successful replicates: scenario,group,n,kind,replicate,mse_mean,mse_std.
std::string replicates_to_csv(const ExperimentResults& results);

/// Long-format summary CSV, one row per (scenario, group, n, kind).
std::string summary_to_csv(const ExperimentResults& results);

/// Human-readable table pivoted by regressor kind (mse_mean metric).
std::string summary_to_text(const ExperimentResults& results);

/// Full results as a JSON document (config, replicates incl. failures,
/// summary).
std::string results_to_json(const ExperimentResults& results);

/// Per-cell replicate value arrays keyed "scenario|group|n|kind|metric".
std::string boxplot_data_to_json(const ExperimentResults& results);

/// Writes the four exports (replicates.csv, summary.csv, summary.txt,
/// results.json, boxplot.json) atomically under out_dir.
void export_results(const ExperimentResults& results, const std::string& out_dir);

}  // namespace aroc::harness
