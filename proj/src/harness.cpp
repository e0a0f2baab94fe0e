#include "aroc/harness.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "aroc/csv.hpp"
#include "aroc/scenarios.hpp"

namespace aroc::harness {

namespace {

constexpr std::uint64_t kTrainDataTag = 0xA1;
constexpr std::uint64_t kTestDataTag = 0xB2;
constexpr std::uint64_t kFnnSeedTag = 0xC3;
constexpr std::uint64_t kForestSeedTag = 0xD4;

std::pair<double, double> mean_and_sd(const std::vector<double>& values) {
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0))};
}

}  // namespace

void ExperimentConfig::validate() const {
  if (scenario_ids.empty()) throw std::invalid_argument("ExperimentConfig: no scenarios");
  for (int id : scenario_ids) scenarios::spec(id);  // throws on unknown id
  if (sample_sizes.empty()) throw std::invalid_argument("ExperimentConfig: no sample sizes");
  for (std::size_t n : sample_sizes)
    if (n < 100) throw std::invalid_argument("ExperimentConfig: sample sizes must be >= 100");
  if (replicates == 0) throw std::invalid_argument("ExperimentConfig: replicates must be >= 1");
  if (kinds.empty()) throw std::invalid_argument("ExperimentConfig: no regressor kinds");
  if (test_size == 0) throw std::invalid_argument("ExperimentConfig: test_size must be >= 1");
  if (workers == 0) throw std::invalid_argument("ExperimentConfig: workers must be >= 1");
}

std::string group_name(int group) { return group == 0 ? "healthy" : "diseased"; }

std::vector<ReplicateResult> run_replicate(int scenario, int group, std::size_t n,
                                           const std::vector<RegressorKind>& kinds,
                                           std::size_t replicate, std::uint64_t base_seed,
                                           const FitConfig& fit, std::size_t test_size) {
  const auto sid = static_cast<std::uint64_t>(scenario);
  const auto gid = static_cast<std::uint64_t>(group);

  RngStream train_rng(base_seed, derive_stream_id({sid, gid, n, replicate, kTrainDataTag}));
  RngStream test_rng(base_seed, derive_stream_id({sid, gid, n, replicate, kTestDataTag}));
  const Dataset train_data = scenarios::generate(scenario, group, n, train_rng);
  const Dataset test_data = scenarios::generate(scenario, group, test_size, test_rng);

  std::vector<std::pair<double, double>> truth(test_size);
  for (std::size_t i = 0; i < test_size; ++i)
    truth[i] = scenarios::true_moments(scenario, group, test_data.X.row_span(i));

  std::vector<ReplicateResult> out;
  out.reserve(kinds.size());
  for (const RegressorKind kind : kinds) {
    ReplicateResult result;
    result.scenario = scenario;
    result.group = group;
    result.n = n;
    result.kind = kind;
    result.replicate = replicate;
    try {
      FitConfig cfg = fit;
      cfg.mlp.seed = derive_stream_id({base_seed, sid, gid, n, replicate, kFnnSeedTag});
      cfg.forest.seed = derive_stream_id({base_seed, sid, gid, n, replicate, kForestSeedTag});
      const GroupModel model = fit_group_model(train_data, kind, cfg);

      double acc_mean = 0.0;
      double acc_std = 0.0;
      for (std::size_t i = 0; i < test_size; ++i) {
        const auto x = test_data.X.row_span(i);
        const double dm = model.predict_mean(x) - truth[i].first;
        const double ds = model.predict_std(x) - truth[i].second;
        acc_mean += dm * dm;
        acc_std += ds * ds;
      }
      result.mse_mean = acc_mean / static_cast<double>(test_size);
      result.mse_std = acc_std / static_cast<double>(test_size);
      result.ok = true;
    } catch (const std::exception& e) {
      result.ok = false;
      result.error = "scenario " + std::to_string(scenario) + " " + group_name(group) + " n=" +
                     std::to_string(n) + " rep=" + std::to_string(replicate) + " " +
                     std::string(kind_name(kind)) + ": " + e.what();
    }
    out.push_back(std::move(result));
  }
  return out;
}

ExperimentResults run_experiment(const ExperimentConfig& config) {
  config.validate();

  struct Task {
    int scenario;
    int group;
    std::size_t n;
    std::size_t replicate;
  };
  std::vector<Task> tasks;
  for (const int scenario : config.scenario_ids)
    for (const int group : {0, 1})
      for (const std::size_t n : config.sample_sizes)
        for (std::size_t rep = 0; rep < config.replicates; ++rep)
          tasks.push_back({scenario, group, n, rep});

  std::vector<std::vector<ReplicateResult>> slots(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks.size()) break;
      const Task& task = tasks[t];
      slots[t] = run_replicate(task.scenario, task.group, task.n, config.kinds, task.replicate,
                               config.base_seed, config.fit, config.test_size);
    }
  };
  if (config.workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const std::size_t count = std::min(config.workers, tasks.size());
    pool.reserve(count);
    for (std::size_t w = 0; w < count; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  ExperimentResults results;
  results.config = config;
  for (auto& slot : slots)
    results.replicates.insert(results.replicates.end(), slot.begin(), slot.end());

  // Deterministic aggregation order: scenario, group, n, kind.
  for (const int scenario : config.scenario_ids)
    for (const int group : {0, 1})
      for (const std::size_t n : config.sample_sizes)
        for (const RegressorKind kind : config.kinds) {
          SummaryCell cell;
          cell.scenario = scenario;
          cell.group = group;
          cell.n = n;
          cell.kind = kind;
          std::vector<double> mm;
          std::vector<double> ms;
          for (const auto& r : results.replicates)
            if (r.ok && r.scenario == scenario && r.group == group && r.n == n && r.kind == kind) {
              mm.push_back(r.mse_mean);
              ms.push_back(r.mse_std);
            }
          cell.replicates_ok = mm.size();
          cell.missing = mm.empty();
          if (!cell.missing) {
            std::tie(cell.mean_mse_mean, cell.std_mse_mean) = mean_and_sd(mm);
            std::tie(cell.mean_mse_std, cell.std_mse_std) = mean_and_sd(ms);
          }
          results.summary.push_back(cell);
        }
  return results;
}

std::string replicates_to_csv(const ExperimentResults& results) {
  std::string out = "scenario,group,n,kind,replicate,mse_mean,mse_std\n";
  for (const auto& r : results.replicates) {
    if (!r.ok) continue;
    out += std::to_string(r.scenario) + ',' + group_name(r.group) + ',' + std::to_string(r.n) +
           ',' + std::string(kind_name(r.kind)) + ',' + std::to_string(r.replicate) + ',' +
           format_double(r.mse_mean) + ',' + format_double(r.mse_std) + '\n';
  }
  return out;
}

std::string summary_to_csv(const ExperimentResults& results) {
  std::string out =
      "scenario,group,n,kind,replicates,mean_mse_mean,std_mse_mean,mean_mse_std,std_mse_std\n";
  for (const auto& c : results.summary) {
    out += std::to_string(c.scenario) + ',' + group_name(c.group) + ',' + std::to_string(c.n) +
           ',' + std::string(kind_name(c.kind)) + ',' + std::to_string(c.replicates_ok) + ',';
    if (c.missing) {
      out += ",,,\n";
    } else {
      out += format_double(c.mean_mse_mean) + ',' + format_double(c.std_mse_mean) + ',' +
             format_double(c.mean_mse_std) + ',' + format_double(c.std_mse_std) + '\n';
    }
  }
  return out;
}

std::string summary_to_text(const ExperimentResults& results) {
  std::string out;
  out += "Mean squared error of the conditional-mean fit (mse_mean), averaged over replicates.\n";
  out += "group      scenario        n  ";
  for (const RegressorKind kind : results.config.kinds) {
    out += std::string(kind_name(kind)) + " mean      " + std::string(kind_name(kind)) +
           " std       ";
  }
  out += '\n';
  for (const int scenario : results.config.scenario_ids)
    for (const int group : {0, 1})
      for (const std::size_t n : results.config.sample_sizes) {
        char head[64];
        std::snprintf(head, sizeof(head), "%-10s %8d %8zu  ", group_name(group).c_str(), scenario,
                      n);
        out += head;
        for (const RegressorKind kind : results.config.kinds) {
          const SummaryCell* cell = nullptr;
          for (const auto& c : results.summary)
            if (c.scenario == scenario && c.group == group && c.n == n && c.kind == kind)
              cell = &c;
          char buf[48];
          if (cell == nullptr || cell->missing)
            std::snprintf(buf, sizeof(buf), "%-14s %-14s", "missing", "missing");
          else
            std::snprintf(buf, sizeof(buf), "%-14.6f %-14.6f", cell->mean_mse_mean,
                          cell->std_mse_mean);
          out += buf;
        }
        out += '\n';
      }
  return out;
}

namespace {

nlohmann::json config_to_json(const ExperimentConfig& config) {
  nlohmann::json j;
  j["scenarios"] = config.scenario_ids;
  j["sample_sizes"] = config.sample_sizes;
  j["replicates"] = config.replicates;
  std::vector<std::string> kinds;
  for (const RegressorKind k : config.kinds) kinds.emplace_back(kind_name(k));
  j["kinds"] = kinds;
  j["base_seed"] = config.base_seed;
  j["test_size"] = config.test_size;
  j["workers"] = config.workers;
  j["fnn"] = {{"hidden_layers", config.fit.mlp.hidden_layers},
              {"dropout_rate", config.fit.mlp.dropout_rate},
              {"learning_rate", config.fit.mlp.learning_rate},
              {"weight_decay", config.fit.mlp.weight_decay},
              {"batch_size", config.fit.mlp.batch_size},
              {"max_epochs", config.fit.mlp.max_epochs},
              {"patience", config.fit.mlp.patience}};
  j["forest"] = {{"n_trees", config.fit.forest.n_trees},
                 {"max_depth", config.fit.forest.max_depth},
                 {"min_samples_split", config.fit.forest.min_samples_split},
                 {"min_samples_leaf", config.fit.forest.min_samples_leaf},
                 {"max_features", config.fit.forest.max_features}};
  return j;
}

}  // namespace

std::string results_to_json(const ExperimentResults& results) {
  nlohmann::json j;
  j["config"] = config_to_json(results.config);
  j["replicates"] = nlohmann::json::array();
  for (const auto& r : results.replicates) {
    nlohmann::json jr = {{"scenario", r.scenario}, {"group", group_name(r.group)},
                         {"n", r.n},               {"kind", std::string(kind_name(r.kind))},
                         {"replicate", r.replicate}, {"ok", r.ok}};
    if (r.ok) {
      jr["mse_mean"] = r.mse_mean;
      jr["mse_std"] = r.mse_std;
    } else {
      jr["error"] = r.error;
    }
    j["replicates"].push_back(jr);
  }
  j["summary"] = nlohmann::json::array();
  for (const auto& c : results.summary) {
    nlohmann::json jc = {{"scenario", c.scenario}, {"group", group_name(c.group)},
                         {"n", c.n},               {"kind", std::string(kind_name(c.kind))},
                         {"replicates", c.replicates_ok}, {"missing", c.missing}};
    if (!c.missing) {
      jc["mean_mse_mean"] = c.mean_mse_mean;
      jc["std_mse_mean"] = c.std_mse_mean;
      jc["mean_mse_std"] = c.mean_mse_std;
      jc["std_mse_std"] = c.std_mse_std;
    }
    j["summary"].push_back(jc);
  }
  return j.dump(2) + "\n";
}

std::string boxplot_data_to_json(const ExperimentResults& results) {
  nlohmann::json j;
  for (const auto& c : results.summary) {
    for (const char* metric : {"mse_mean", "mse_std"}) {
      const std::string key = std::to_string(c.scenario) + '|' + group_name(c.group) + '|' +
                              std::to_string(c.n) + '|' + std::string(kind_name(c.kind)) + '|' +
                              metric;
      auto& arr = j[key] = nlohmann::json::array();
      for (const auto& r : results.replicates)
        if (r.ok && r.scenario == c.scenario && r.group == c.group && r.n == c.n &&
            r.kind == c.kind)
          arr.push_back(std::string(metric) == "mse_mean" ? r.mse_mean : r.mse_std);
    }
  }
  return j.dump(2) + "\n";
}

void export_results(const ExperimentResults& results, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  atomic_write_file((dir / "replicates.csv").string(), replicates_to_csv(results));
  atomic_write_file((dir / "summary.csv").string(), summary_to_csv(results));
  atomic_write_file((dir / "summary.txt").string(), summary_to_text(results));
  atomic_write_file((dir / "results.json").string(), results_to_json(results));
  atomic_write_file((dir / "boxplot.json").string(), boxplot_data_to_json(results));
}

}  // namespace aroc::harness
