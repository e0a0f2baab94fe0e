// Command-line front end: scenario simulation, cohort fitting, AUC-surface
// and ROC-curve export, stratified bivariate KDE export, and the replicated
// benchmark harness. Exit codes: 0 success, 1 runtime failure, 2 usage error.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aroc/csv.hpp"
#include "aroc/estimator.hpp"
#include "aroc/harness.hpp"
#include "aroc/kde.hpp"
#include "aroc/model_io.hpp"
#include "aroc/roc.hpp"
#include "aroc/scenarios.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::stringstream ss(s);
  while (std::getline(ss, part, sep)) parts.push_back(part);
  return parts;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": '" + s + "' is not a number");
  }
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": '" + s + "' is not a non-negative integer");
  }
}

void require_parent_writable(const std::string& path) {
  const fs::path p(path);
  const fs::path dir = p.parent_path().empty() ? fs::path(".") : p.parent_path();
  if (!fs::exists(dir))
    throw std::invalid_argument("output directory '" + dir.string() + "' does not exist");
}

std::vector<std::size_t> parse_hidden(const std::string& s) {
  std::vector<std::size_t> widths;
  for (const auto& part : split(s, ','))
    widths.push_back(parse_u64(trim(part), "hidden layer width"));
  return widths;
}

int parse_group(const std::string& s) {
  if (s == "0" || s == "healthy") return 0;
  if (s == "1" || s == "diseased") return 1;
  throw std::invalid_argument("group must be healthy/diseased/0/1");
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  int scenario = 1;
  std::string group = "both";
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_simulate(const SimulateArgs& args) {
  require_parent_writable(args.out);
  const auto sid = static_cast<std::uint64_t>(args.scenario);
  aroc::Dataset data;
  if (args.group == "both") {
    aroc::RngStream rng0(args.seed, aroc::derive_stream_id({sid, 0}));
    aroc::RngStream rng1(args.seed, aroc::derive_stream_id({sid, 1}));
    data = aroc::scenarios::generate(args.scenario, 0, args.n, rng0);
    const aroc::Dataset diseased = aroc::scenarios::generate(args.scenario, 1, args.n, rng1);
    data.X.data.insert(data.X.data.end(), diseased.X.data.begin(), diseased.X.data.end());
    data.X.rows += diseased.X.rows;
    data.y.insert(data.y.end(), diseased.y.begin(), diseased.y.end());
    data.d.insert(data.d.end(), diseased.d.begin(), diseased.d.end());
  } else {
    const int group = parse_group(args.group);
    aroc::RngStream rng(args.seed,
                        aroc::derive_stream_id({sid, static_cast<std::uint64_t>(group)}));
    data = aroc::scenarios::generate(args.scenario, group, args.n, rng);
  }
  aroc::atomic_write_file(args.out, aroc::dataset_to_csv(data));
  std::cout << "wrote " << data.n() << " rows to " << args.out << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// fit

struct FitArgs {
  std::string input;
  std::string biomarker;
  std::string status;
  std::string covariates;
  std::string regressor = "fnn";
  std::vector<std::string> hidden;
  std::vector<double> learning_rates;
  std::vector<double> dropouts;
  std::vector<double> weight_decays;
  std::size_t batch_size = 32;
  std::size_t max_epochs = 500;
  std::size_t patience = 20;
  std::size_t folds = 5;
  double holdout = 0.2;
  std::size_t n_trees = 500;
  std::size_t tree_depth = 3;
  std::size_t min_samples_split = 20;
  std::size_t min_samples_leaf = 20;
  std::size_t max_features = 2;
  std::uint64_t seed = 0;
  std::string out;
};

std::vector<aroc::MLPConfig> build_grid(const FitArgs& args, const aroc::MLPConfig& base) {
  std::vector<std::vector<std::size_t>> hiddens;
  for (const auto& h : args.hidden) hiddens.push_back(parse_hidden(h));
  if (hiddens.empty()) hiddens.push_back(base.hidden_layers);
  const std::vector<double> lrs =
      args.learning_rates.empty() ? std::vector<double>{base.learning_rate} : args.learning_rates;
  const std::vector<double> drops =
      args.dropouts.empty() ? std::vector<double>{base.dropout_rate} : args.dropouts;
  const std::vector<double> decays =
      args.weight_decays.empty() ? std::vector<double>{base.weight_decay} : args.weight_decays;

  std::vector<aroc::MLPConfig> grid;
  for (const auto& h : hiddens)
    for (const double lr : lrs)
      for (const double drop : drops)
        for (const double decay : decays) {
          aroc::MLPConfig cfg = base;
          cfg.hidden_layers = h;
          cfg.learning_rate = lr;
          cfg.dropout_rate = drop;
          cfg.weight_decay = decay;
          cfg.validate();
          grid.push_back(cfg);
        }
  return grid;
}

json holdout_report_for_group(const aroc::GroupModel& model, const aroc::Dataset& test_group) {
  double mean_mse = 0.0;
  double var_mse = 0.0;
  for (std::size_t i = 0; i < test_group.n(); ++i) {
    const auto x = test_group.X.row_span(i);
    const double mu = model.predict_mean(x);
    const double r2 = (test_group.y[i] - mu) * (test_group.y[i] - mu);
    mean_mse += r2;
    const double dv = r2 - model.predict_variance(x);
    var_mse += dv * dv;
  }
  const double n = static_cast<double>(test_group.n());
  return {{"n", test_group.n()},
          {"mean_fit_mse", mean_mse / n},
          {"variance_fit_mse", var_mse / n}};
}

int cmd_fit(const FitArgs& args) {
  require_parent_writable(args.out);
  const aroc::RegressorKind kind = aroc::parse_kind(args.regressor);
  const std::vector<std::string> covariates = split(args.covariates, ',');
  if (covariates.empty()) throw std::invalid_argument("fit: at least one covariate is required");

  const aroc::Dataset data =
      aroc::read_dataset_csv(args.input, args.biomarker, args.status, covariates);
  data.validate();
  if (!data.has_both_classes())
    throw std::invalid_argument("fit: the cohort must contain both status classes");

  aroc::FitConfig base;
  base.mlp.batch_size = args.batch_size;
  base.mlp.max_epochs = args.max_epochs;
  base.mlp.patience = args.patience;
  base.mlp.seed = args.seed;
  base.forest.n_trees = args.n_trees;
  base.forest.max_depth = args.tree_depth;
  base.forest.min_samples_split = args.min_samples_split;
  base.forest.min_samples_leaf = args.min_samples_leaf;
  base.forest.max_features = args.max_features;
  base.forest.seed = args.seed;

  const auto [train_data, test_data] = aroc::holdout_split(data, args.holdout, args.seed);
  const auto [train0, train1] = aroc::split_by_status(train_data);
  const auto [test0, test1] = aroc::split_by_status(test_data);

  aroc::AROCModel model;
  model.kind = kind;
  model.schema = data.column_names;
  model.config = base;

  json cv_report = json::object();
  if (kind == aroc::RegressorKind::fnn) {
    const std::vector<aroc::MLPConfig> grid = build_grid(args, base.mlp);
    for (const int group : {0, 1}) {
      const aroc::Dataset& group_train = group == 0 ? train0 : train1;
      json jcv;
      aroc::FitConfig cfg = base;
      if (grid.size() > 1) {
        const std::uint64_t fold_seed =
            aroc::derive_stream_id({args.seed, static_cast<std::uint64_t>(group), 0xCF});
        const aroc::CVReport cv = aroc::cross_validate(group_train, grid, args.folds, fold_seed);
        cfg.mlp = grid[cv.chosen];
        jcv = {{"folds", args.folds},
               {"fold_seed", cv.fold_seed},
               {"mean_validation_mse", cv.mean_validation_mse},
               {"chosen", cv.chosen},
               {"chosen_hidden_layers", cfg.mlp.hidden_layers},
               {"chosen_learning_rate", cfg.mlp.learning_rate},
               {"chosen_dropout_rate", cfg.mlp.dropout_rate},
               {"chosen_weight_decay", cfg.mlp.weight_decay}};
      } else {
        cfg.mlp = grid.front();
        jcv = {{"folds", args.folds}, {"single_candidate", true}};
      }
      (group == 0 ? model.group0 : model.group1) = aroc::fit_group_model(group_train, kind, cfg);
      cv_report[group == 0 ? "group0" : "group1"] = jcv;
    }
  } else {
    model.group0 = aroc::fit_group_model(train0, kind, base);
    model.group1 = aroc::fit_group_model(train1, kind, base);
    cv_report = {{"note", "no cross-validation grid for the forest regressor"}};
  }

  json report;
  report["cv"] = cv_report;
  report["holdout"] = {{"fraction", args.holdout},
                       {"group0", holdout_report_for_group(model.group0, test0)},
                       {"group1", holdout_report_for_group(model.group1, test1)}};
  aroc::save_aroc_model(model, args.out, report);

  std::cout << "holdout report (fraction " << args.holdout << ")\n";
  for (const char* g : {"group0", "group1"}) {
    const auto& jg = report["holdout"][g];
    std::cout << "  " << g << ": n=" << jg["n"] << " mean_fit_mse=" << jg["mean_fit_mse"]
              << " variance_fit_mse=" << jg["variance_fit_mse"] << "\n";
  }
  std::cout << "model bundle written to " << args.out << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// auc-surface and roc-export

struct Axis {
  std::string name;
  std::vector<double> values;
};

std::vector<Axis> parse_grid_spec(const std::string& spec) {
  std::vector<Axis> axes;
  for (const auto& entry : split(spec, ';')) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("grid entry '" + entry + "' is not name=values");
    Axis axis;
    axis.name = trim(entry.substr(0, eq));
    const std::string values = entry.substr(eq + 1);
    if (values.find(':') != std::string::npos) {
      const auto parts = split(values, ':');
      if (parts.size() != 3)
        throw std::invalid_argument("range '" + values + "' must be start:stop:count");
      const double lo = parse_double(parts[0], "grid start");
      const double hi = parse_double(parts[1], "grid stop");
      const std::size_t count = parse_u64(parts[2], "grid count");
      if (count < 1) throw std::invalid_argument("grid count must be >= 1");
      if (count == 1)
        axis.values.push_back(lo);
      else
        axis.values = aroc::linspace(lo, hi, count);
    } else {
      for (const auto& v : split(values, ','))
        axis.values.push_back(parse_double(trim(v), "grid value"));
    }
    if (axis.values.empty()) throw std::invalid_argument("empty grid axis '" + axis.name + "'");
    axes.push_back(std::move(axis));
  }
  return axes;
}

// Expands the named axes into rows ordered by the model schema (last
// covariate fastest).
aroc::Matrix expand_grid(const std::vector<Axis>& axes, const std::vector<std::string>& schema) {
  std::vector<std::size_t> axis_of(schema.size());
  std::vector<bool> used(axes.size(), false);
  for (std::size_t j = 0; j < schema.size(); ++j) {
    bool found = false;
    for (std::size_t a = 0; a < axes.size(); ++a)
      if (axes[a].name == schema[j]) {
        axis_of[j] = a;
        used[a] = true;
        found = true;
        break;
      }
    if (!found)
      throw std::invalid_argument("grid is missing schema covariate '" + schema[j] + "'");
  }
  for (std::size_t a = 0; a < axes.size(); ++a)
    if (!used[a])
      throw std::invalid_argument("grid covariate '" + axes[a].name + "' is not in the schema");

  std::size_t rows = 1;
  for (const auto& axis : axes) rows *= axis.values.size();
  aroc::Matrix grid(rows, schema.size());
  std::vector<std::size_t> counter(schema.size(), 0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t j = 0; j < schema.size(); ++j)
      grid.at(r, j) = axes[axis_of[j]].values[counter[j]];
    for (std::size_t j = schema.size(); j-- > 0;) {
      if (++counter[j] < axes[axis_of[j]].values.size()) break;
      counter[j] = 0;
    }
  }
  return grid;
}

struct SurfaceArgs {
  std::string model;
  std::string grid;
  std::string out;
};

int cmd_auc_surface(const SurfaceArgs& args) {
  require_parent_writable(args.out);
  const aroc::AROCModel model = aroc::load_aroc_model(args.model);
  const aroc::Matrix grid = expand_grid(parse_grid_spec(args.grid), model.schema);
  const std::vector<double> auc = aroc::evaluate_auc_surface(model, grid);

  std::string csv;
  for (const auto& name : model.schema) {
    csv += name;
    csv += ',';
  }
  csv += "auc\n";
  for (std::size_t r = 0; r < grid.rows; ++r) {
    for (std::size_t j = 0; j < grid.cols; ++j) {
      csv += aroc::format_double(grid.at(r, j));
      csv += ',';
    }
    csv += aroc::format_double(auc[r]);
    csv += '\n';
  }
  aroc::atomic_write_file(args.out, csv);
  std::cout << "wrote " << grid.rows << " grid rows to " << args.out << "\n";
  return 0;
}

struct RocExportArgs {
  std::string model;
  std::vector<std::string> points;
  std::size_t p_grid = 101;
  std::string out_dir;
};

int cmd_roc_export(const RocExportArgs& args) {
  if (args.points.empty())
    throw std::invalid_argument("roc-export: at least one --point required");
  const aroc::AROCModel model = aroc::load_aroc_model(args.model);
  fs::create_directories(args.out_dir);

  std::string index;
  for (const auto& name : model.schema) {
    index += name;
    index += ',';
  }
  index += "auc,file\n";

  for (std::size_t i = 0; i < args.points.size(); ++i) {
    std::map<std::string, double> assignment;
    for (const auto& pair : split(args.points[i], ',')) {
      const auto eq = pair.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("point entry '" + pair + "' is not name=value");
      assignment[trim(pair.substr(0, eq))] = parse_double(pair.substr(eq + 1), "point value");
    }
    std::vector<double> x(model.schema.size());
    for (std::size_t j = 0; j < model.schema.size(); ++j) {
      const auto it = assignment.find(model.schema[j]);
      if (it == assignment.end())
        throw std::invalid_argument("point is missing covariate '" + model.schema[j] + "'");
      x[j] = it->second;
      assignment.erase(it);
    }
    if (!assignment.empty())
      throw std::invalid_argument("point covariate '" + assignment.begin()->first +
                                  "' is not in the schema");

    const std::vector<double> p_grid = aroc::linspace(0.0, 1.0, args.p_grid);
    const aroc::ROCCurve curve = aroc::evaluate_aroc(model, x, p_grid);
    std::string csv = "p,tpr\n";
    for (std::size_t k = 0; k < curve.fpr.size(); ++k)
      csv += aroc::format_double(curve.fpr[k]) + ',' + aroc::format_double(curve.tpr[k]) + '\n';

    char name[32];
    std::snprintf(name, sizeof(name), "roc_%03zu.csv", i + 1);
    aroc::atomic_write_file((fs::path(args.out_dir) / name).string(), csv);

    const double auc = aroc::auc_closed_form(aroc::location_scale_at(model, x));
    for (const double v : x) {
      index += aroc::format_double(v);
      index += ',';
    }
    index += aroc::format_double(auc);
    index += ',';
    index += name;
    index += '\n';
  }
  aroc::atomic_write_file((fs::path(args.out_dir) / "index.csv").string(), index);
  std::cout << "wrote " << args.points.size() << " curves to " << args.out_dir << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// kde-export

struct KdeArgs {
  std::string input;
  std::string x_column;
  std::string y_column;
  std::string strata;
  std::string bandwidth;
  std::size_t grid_size = 101;
  std::string out;
};

int cmd_kde_export(const KdeArgs& args) {
  require_parent_writable(args.out);
  const aroc::CsvTable table = aroc::read_csv(args.input);
  const std::size_t xi = table.column_index(args.x_column);
  const std::size_t yi = table.column_index(args.y_column);
  std::vector<std::size_t> strata_cols;
  std::vector<std::string> strata_names;
  if (!args.strata.empty())
    for (const auto& name : split(args.strata, ',')) {
      strata_names.push_back(trim(name));
      strata_cols.push_back(table.column_index(strata_names.back()));
    }

  std::optional<aroc::Bandwidths> fixed_bw;
  if (!args.bandwidth.empty()) {
    const auto parts = split(args.bandwidth, ',');
    if (parts.size() != 2) throw std::invalid_argument("--bandwidth must be hx,hy");
    fixed_bw = aroc::Bandwidths{parse_double(parts[0], "bandwidth x"),
                                parse_double(parts[1], "bandwidth y")};
    if (!(fixed_bw->x > 0.0) || !(fixed_bw->y > 0.0))
      throw std::invalid_argument("--bandwidth values must be positive");
  }

  // Rows grouped by stratum key; std::map keeps level tuples in a stable
  // lexicographic order.
  std::map<std::vector<std::string>, std::vector<std::size_t>> strata;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    std::vector<std::string> key;
    for (const std::size_t c : strata_cols) key.push_back(table.rows[r][c]);
    strata[key].push_back(r);
  }

  json out;
  out["version"] = 1;
  out["x_column"] = args.x_column;
  out["y_column"] = args.y_column;
  out["strata_columns"] = strata_names;
  out["strata"] = json::array();
  out["warnings"] = json::array();

  for (const auto& [key, rows] : strata) {
    json levels = json::object();
    for (std::size_t s = 0; s < strata_names.size(); ++s) levels[strata_names[s]] = key[s];
    std::string label;
    for (std::size_t s = 0; s < key.size(); ++s)
      label += (s > 0 ? "," : "") + strata_names[s] + "=" + key[s];
    if (label.empty()) label = "all";

    if (rows.size() < 2) {
      const std::string msg = "stratum " + label + " skipped: fewer than 2 rows";
      out["warnings"].push_back(msg);
      std::cerr << "warning: " << msg << "\n";
      continue;
    }
    std::vector<std::pair<double, double>> pts;
    pts.reserve(rows.size());
    for (const std::size_t r : rows)
      pts.emplace_back(aroc::parse_numeric_cell(table.rows[r][xi], r + 1, args.x_column),
                       aroc::parse_numeric_cell(table.rows[r][yi], r + 1, args.y_column));
    try {
      const aroc::Bandwidths bw = fixed_bw ? *fixed_bw : aroc::silverman_bandwidths(pts);
      double xmin = pts.front().first, xmax = xmin;
      double ymin = pts.front().second, ymax = ymin;
      for (const auto& p : pts) {
        xmin = std::min(xmin, p.first);
        xmax = std::max(xmax, p.first);
        ymin = std::min(ymin, p.second);
        ymax = std::max(ymax, p.second);
      }
      const aroc::DensityGrid grid = aroc::bivariate_kde(
          pts, bw, aroc::linspace(xmin - 4.0 * bw.x, xmax + 4.0 * bw.x, args.grid_size),
          aroc::linspace(ymin - 4.0 * bw.y, ymax + 4.0 * bw.y, args.grid_size));
      grid.validate();
      json js;
      js["levels"] = levels;
      js["n"] = rows.size();
      js["bandwidth"] = {{"x", bw.x}, {"y", bw.y}};
      js["x_grid"] = grid.x_grid;
      js["y_grid"] = grid.y_grid;
      js["density"] = grid.density;
      out["strata"].push_back(std::move(js));
    } catch (const std::exception& e) {
      const std::string msg = "stratum " + label + " skipped: " + e.what();
      out["warnings"].push_back(msg);
      std::cerr << "warning: " << msg << "\n";
    }
  }
  aroc::atomic_write_file(args.out, out.dump(2) + "\n");
  std::cout << "wrote " << out["strata"].size() << " strata to " << args.out << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// benchmark

struct BenchmarkArgs {
  std::string config;
  std::string out_dir;
};

aroc::harness::ExperimentConfig parse_benchmark_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");

  aroc::harness::ExperimentConfig config;
  config.scenario_ids = {1};
  config.sample_sizes = {5000};

  std::vector<std::string> unknown;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  " is not key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "scenarios") {
      config.scenario_ids.clear();
      for (const auto& v : split(value, ','))
        config.scenario_ids.push_back(static_cast<int>(parse_u64(trim(v), key)));
    } else if (key == "sizes") {
      config.sample_sizes.clear();
      for (const auto& v : split(value, ','))
        config.sample_sizes.push_back(parse_u64(trim(v), key));
    } else if (key == "replicates") {
      config.replicates = parse_u64(value, key);
    } else if (key == "kinds") {
      config.kinds.clear();
      for (const auto& v : split(value, ',')) config.kinds.push_back(aroc::parse_kind(trim(v)));
    } else if (key == "base_seed") {
      config.base_seed = parse_u64(value, key);
    } else if (key == "test_size") {
      config.test_size = parse_u64(value, key);
    } else if (key == "workers") {
      config.workers = parse_u64(value, key);
    } else if (key == "min_group_size") {
      config.fit.min_group_size = parse_u64(value, key);
    } else if (key == "variance_floor") {
      config.fit.variance_floor = parse_double(value, key);
    } else if (key == "validation_fraction") {
      config.fit.validation_fraction = parse_double(value, key);
    } else if (key == "fnn.hidden") {
      config.fit.mlp.hidden_layers = parse_hidden(value);
    } else if (key == "fnn.dropout") {
      config.fit.mlp.dropout_rate = parse_double(value, key);
    } else if (key == "fnn.learning_rate") {
      config.fit.mlp.learning_rate = parse_double(value, key);
    } else if (key == "fnn.weight_decay") {
      config.fit.mlp.weight_decay = parse_double(value, key);
    } else if (key == "fnn.batch_size") {
      config.fit.mlp.batch_size = parse_u64(value, key);
    } else if (key == "fnn.max_epochs") {
      config.fit.mlp.max_epochs = parse_u64(value, key);
    } else if (key == "fnn.patience") {
      config.fit.mlp.patience = parse_u64(value, key);
    } else if (key == "forest.n_trees") {
      config.fit.forest.n_trees = parse_u64(value, key);
    } else if (key == "forest.max_depth") {
      config.fit.forest.max_depth = parse_u64(value, key);
    } else if (key == "forest.min_samples_split") {
      config.fit.forest.min_samples_split = parse_u64(value, key);
    } else if (key == "forest.min_samples_leaf") {
      config.fit.forest.min_samples_leaf = parse_u64(value, key);
    } else if (key == "forest.max_features") {
      config.fit.forest.max_features = parse_u64(value, key);
    } else {
      unknown.push_back(key);
    }
  }
  if (!unknown.empty()) {
    std::string msg = "unknown config keys:";
    for (const auto& k : unknown) msg += " " + k;
    throw std::invalid_argument(msg);
  }
  config.validate();
  return config;
}

int cmd_benchmark(const BenchmarkArgs& args) {
  const aroc::harness::ExperimentConfig config = parse_benchmark_config(args.config);
  const aroc::harness::ExperimentResults results = aroc::harness::run_experiment(config);
  aroc::harness::export_results(results, args.out_dir);
  std::cout << aroc::harness::summary_to_text(results);
  std::size_t failures = 0;
  for (const auto& r : results.replicates)
    if (!r.ok) ++failures;
  if (failures > 0) std::cout << failures << " replicate fits failed; see results.json\n";
  std::cout << "exports written to " << args.out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Covariate-adjusted ROC analysis with two-stage location-scale regression"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Generate synthetic scenario data as CSV");
  sim_cmd->add_option("--scenario", sim.scenario, "Scenario id (1-9)")->required();
  sim_cmd->add_option("--group", sim.group, "healthy, diseased, or both (default both)");
  sim_cmd->add_option("-n,--n", sim.n, "Rows per group")->required();
  sim_cmd->add_option("--seed", sim.seed, "RNG seed");
  sim_cmd->add_option("--out", sim.out, "Output CSV path")->required();

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit the two-stage model on a cohort CSV");
  fit_cmd->add_option("--input", fit.input, "Cohort CSV")->required()->check(CLI::ExistingFile);
  fit_cmd->add_option("--biomarker", fit.biomarker, "Biomarker column")->required();
  fit_cmd->add_option("--status", fit.status, "Binary status column")->required();
  fit_cmd->add_option("--covariates", fit.covariates, "Comma-separated covariate columns")
      ->required();
  fit_cmd->add_option("--regressor", fit.regressor, "fnn or forest");
  fit_cmd->add_option("--hidden", fit.hidden,
                      "Hidden widths, e.g. 64,32 (repeat to build a CV grid)");
  fit_cmd->add_option("--lr", fit.learning_rates, "Learning rate grid values");
  fit_cmd->add_option("--dropout", fit.dropouts, "Dropout rate grid values");
  fit_cmd->add_option("--weight-decay", fit.weight_decays, "Weight decay grid values");
  fit_cmd->add_option("--batch-size", fit.batch_size, "Mini-batch size");
  fit_cmd->add_option("--max-epochs", fit.max_epochs, "Epoch cap");
  fit_cmd->add_option("--patience", fit.patience, "Early-stopping patience");
  fit_cmd->add_option("--folds", fit.folds, "Cross-validation folds");
  fit_cmd->add_option("--holdout", fit.holdout, "Holdout fraction (default 0.2)");
  fit_cmd->add_option("--n-trees", fit.n_trees, "Forest size");
  fit_cmd->add_option("--tree-depth", fit.tree_depth, "Forest max depth");
  fit_cmd->add_option("--min-samples-split", fit.min_samples_split, "Forest split floor");
  fit_cmd->add_option("--min-samples-leaf", fit.min_samples_leaf, "Forest leaf floor");
  fit_cmd->add_option("--max-features", fit.max_features, "Features tried per node");
  fit_cmd->add_option("--seed", fit.seed, "RNG seed");
  fit_cmd->add_option("--out", fit.out, "Output model bundle path")->required();

  SurfaceArgs surface;
  auto* surf_cmd =
      app.add_subcommand("auc-surface", "Export closed-form AUC over a covariate grid");
  surf_cmd->add_option("--model", surface.model, "Model bundle")
      ->required()
      ->check(CLI::ExistingFile);
  surf_cmd->add_option("--grid", surface.grid,
                       "Axes, e.g. \"age=20:80:13;bmi=20,40\" (every covariate once)")
      ->required();
  surf_cmd->add_option("--out", surface.out, "Output CSV path")->required();

  RocExportArgs rocx;
  auto* roc_cmd = app.add_subcommand("roc-export", "Export ROC curves at covariate points");
  roc_cmd->add_option("--model", rocx.model, "Model bundle")->required()->check(CLI::ExistingFile);
  roc_cmd->add_option("--point", rocx.points, "Covariate point, e.g. age=40,bmi=20 (repeatable)")
      ->required();
  roc_cmd->add_option("--p-grid", rocx.p_grid, "Points on the p grid (default 101)");
  roc_cmd->add_option("--out-dir", rocx.out_dir, "Output directory")->required();

  KdeArgs kde;
  auto* kde_cmd = app.add_subcommand("kde-export", "Stratified bivariate KDE grids as JSON");
  kde_cmd->add_option("--input", kde.input, "Input CSV")->required()->check(CLI::ExistingFile);
  kde_cmd->add_option("--x", kde.x_column, "First numeric column")->required();
  kde_cmd->add_option("--y", kde.y_column, "Second numeric column")->required();
  kde_cmd->add_option("--strata", kde.strata, "Comma-separated stratification columns");
  kde_cmd->add_option("--bandwidth", kde.bandwidth, "hx,hy (default: Silverman per stratum)");
  kde_cmd->add_option("--grid-size", kde.grid_size, "Nodes per axis (default 101)");
  kde_cmd->add_option("--out", kde.out, "Output JSON path")->required();

  BenchmarkArgs bench;
  auto* bench_cmd = app.add_subcommand("benchmark", "Run the replicated simulation benchmark");
  bench_cmd->add_option("--config", bench.config, "Key-value config file")
      ->required()
      ->check(CLI::ExistingFile);
  bench_cmd->add_option("--out-dir", bench.out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (sim_cmd->parsed()) return cmd_simulate(sim);
    if (fit_cmd->parsed()) return cmd_fit(fit);
    if (surf_cmd->parsed()) return cmd_auc_surface(surface);
    if (roc_cmd->parsed()) return cmd_roc_export(rocx);
    if (kde_cmd->parsed()) return cmd_kde_export(kde);
    if (bench_cmd->parsed()) return cmd_benchmark(bench);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
