#include "abcmab/experiment.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "abcmab/errors.hpp"
#include "abcmab/models.hpp"
#include "abcmab/rng.hpp"
#include "abcmab/simulator.hpp"

namespace abcmab {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<std::string> known_methods() {
  return {"mab_eps_first",  "mab_eps_greedy", "mab_eps_decreasing", "uniform_random",
          "static_single", "static_l2_topk", "static_random_k"};
}

namespace {

void apply_settings(MethodSettings& s, const json& doc) {
  s.epsilon = doc.value("epsilon", s.epsilon);
  s.n_accept = doc.value("n_accept", s.n_accept);
  s.tau = doc.value("tau", s.tau);
  s.max_simulations = doc.value("max_simulations", s.max_simulations);
  s.k = doc.value("k", s.k);
  s.record_all = doc.value("record_all", s.record_all);
}

json settings_json(const MethodSettings& s) {
  return {{"epsilon", s.epsilon},       {"n_accept", s.n_accept}, {"tau", s.tau},
          {"max_simulations", s.max_simulations}, {"k", s.k}, {"record_all", s.record_all}};
}

bool is_dynamic(const std::string& method) {
  return method == "mab_eps_first" || method == "mab_eps_greedy" ||
         method == "mab_eps_decreasing" || method == "uniform_random";
}

Strategy strategy_of(const std::string& method) {
  if (method == "mab_eps_first") return Strategy::epsilon_first;
  if (method == "mab_eps_greedy") return Strategy::epsilon_greedy;
  if (method == "mab_eps_decreasing") return Strategy::epsilon_decreasing;
  return Strategy::uniform_random;
}

void write_file(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(fmt::format("cannot write '{}'", path.string()));
  out << text;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& doc) {
  ExperimentConfig c;
  try {
    c.version = doc.value("version", kConfigVersion);
    if (c.version != kConfigVersion)
      throw ConfigError(fmt::format("unsupported config version {}", c.version));
    c.model = doc.value("model", c.model);
    if (doc.contains("model_file")) c.model_file = doc["model_file"].get<std::string>();
    if (doc.contains("observable")) c.observable = doc["observable"].get<std::string>();
    if (doc.contains("observed")) {
      const auto& o = doc["observed"];
      c.observed.n_trajectories = o.value("n_trajectories", c.observed.n_trajectories);
      c.observed.n_grid_points = o.value("n_grid_points", c.observed.n_grid_points);
      c.observed.t_end = o.value("t_end", c.observed.t_end);
      c.observed.theta_true = o.value("theta_true", c.observed.theta_true);
      c.observed.seed = o.value("seed", c.observed.seed);
    }
    if (doc.contains("prior")) c.prior = Prior::from_json(doc["prior"]);
    c.pool_sizes = doc.value("pool_sizes", c.pool_sizes);
    c.methods = doc.value("methods", c.methods);
    if (doc.contains("settings")) apply_settings(c.settings, doc["settings"]);
    if (doc.contains("method_settings"))
      for (const auto& [name, body] : doc["method_settings"].items()) c.method_overrides[name] = body;
    c.calibration_size = doc.value("calibration_size", c.calibration_size);
    c.repetitions = doc.value("repetitions", c.repetitions);
    c.seed = doc.value("seed", c.seed);
    c.batch_size = doc.value("batch_size", c.batch_size);
    c.output_dir = doc.value("output_dir", c.output_dir);
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("malformed experiment config: {}", e.what()));
  }
  return c;
}

ExperimentConfig ExperimentConfig::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config '{}'", path.string()));
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("config '{}': {}", path.string(), e.what()));
  }
  auto cfg = from_json(doc);
  // Model files are resolved relative to the config that names them.
  if (cfg.model_file && fs::path(*cfg.model_file).is_relative())
    cfg.model_file = (path.parent_path() / *cfg.model_file).string();
  return cfg;
}

json ExperimentConfig::to_json() const {
  json doc;
  doc["version"] = version;
  doc["model"] = model;
  if (model_file) doc["model_file"] = *model_file;
  if (observable) doc["observable"] = *observable;
  doc["observed"] = {{"n_trajectories", observed.n_trajectories},
                     {"n_grid_points", observed.n_grid_points},
                     {"t_end", observed.t_end},
                     {"theta_true", observed.theta_true},
                     {"seed", observed.seed}};
  if (prior) doc["prior"] = prior->to_json();
  doc["pool_sizes"] = pool_sizes;
  doc["methods"] = methods;
  doc["settings"] = settings_json(settings);
  if (!method_overrides.empty()) doc["method_settings"] = method_overrides;
  doc["calibration_size"] = calibration_size;
  doc["repetitions"] = repetitions;
  doc["seed"] = seed;
  doc["batch_size"] = batch_size;
  doc["output_dir"] = output_dir;
  return doc;
}

MethodSettings ExperimentConfig::settings_for(const std::string& method) const {
  MethodSettings s = settings;
  if (auto it = method_overrides.find(method); it != method_overrides.end()) apply_settings(s, it->second);
  return s;
}

fs::path ExperimentConfig::resolved_output_dir() const {
  fs::path out(output_dir);
  if (out.is_relative())
    if (const char* root = std::getenv(kOutputRootEnv); root && *root) return fs::path(root) / out;
  return out;
}

void ExperimentConfig::validate() const {
  if (repetitions == 0) throw ConfigError("repetitions must be at least 1");
  if (pool_sizes.empty()) throw ConfigError("pool_sizes is empty");
  if (methods.empty()) throw ConfigError("methods is empty");
  if (calibration_size == 0) throw ConfigError("calibration_size must be at least 1");
  if (observed.n_trajectories == 0) throw ConfigError("observed.n_trajectories must be at least 1");
  const auto known = known_methods();
  for (const auto& m : methods)
    if (std::find(known.begin(), known.end(), m) == known.end())
      throw ConfigError(fmt::format("unknown method '{}'", m));
  for (auto k : pool_sizes)
    if (k < 2 || k > statistic_catalog().size())
      throw ConfigError(fmt::format("pool size {} outside [2, {}]", k, statistic_catalog().size()));
  for (const auto& m : methods) {
    const auto s = settings_for(m);
    if (!(s.tau > 0.0 && s.tau <= 1.0)) throw ConfigError(fmt::format("{}: tau must lie in (0, 1]", m));
    if (s.n_accept == 0) throw ConfigError(fmt::format("{}: n_accept must be at least 1", m));
    if (!(s.epsilon >= 0.0 && s.epsilon <= 1.0)) throw ConfigError(fmt::format("{}: epsilon must lie in [0, 1]", m));
    if ((m == "static_l2_topk" || m == "static_random_k") && s.k == 0)
      throw ConfigError(fmt::format("{}: k must be at least 1", m));
  }
  const auto model = resolve_model(*this);
  if (model.theta_true.size() != model.network.num_parameters())
    throw ConfigError("theta_true dimension does not match the model");
  if (model.prior.dim() != model.network.num_parameters())
    throw ConfigError("prior dimension does not match the model");
}

ResolvedModel resolve_model(const ExperimentConfig& cfg) {
  ReactionNetwork network = cfg.model_file ? load_network(*cfg.model_file) : builtin_model(cfg.model);
  if (cfg.observable) network = network.with_observable(*cfg.observable);
  Prior prior = cfg.prior ? *cfg.prior : builtin_prior(cfg.model);
  std::vector<double> truth =
      cfg.observed.theta_true.empty() ? builtin_truth(cfg.model) : cfg.observed.theta_true;
  return {std::move(network), std::move(prior), std::move(truth)};
}

std::uint64_t repetition_seed(std::uint64_t seed, std::size_t rep) {
  return derive_seed(seed, Stream::repetition, rep);
}

std::uint64_t calibration_seed(std::uint64_t seed, std::size_t rep) {
  return derive_seed(seed, Stream::calibration, rep);
}

std::uint64_t pool_seed(std::uint64_t seed, std::size_t k, std::size_t rep) {
  return derive_seed(derive_seed(seed, Stream::pool, k), rep);
}

ObservedData generate_observed(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto model = resolve_model(cfg);
  const auto sim = network_simulator(model.network, cfg.observed.t_end, cfg.observed.n_grid_points);
  std::vector<SimTask> tasks;
  for (std::size_t i = 0; i < cfg.observed.n_trajectories; ++i)
    tasks.push_back({model.theta_true, derive_seed(cfg.observed.seed, Stream::observed, i)});
  ObservedData data;
  try {
    data.trajectories = simulate_batch(sim, tasks, Execution::parallel);
  } catch (const ModelError& e) {
    throw ModelError(fmt::format("observed data simulation failed for model '{}' at theta_true: {}",
                                 model.network.name(), e.what()));
  }

  const fs::path dir = cfg.resolved_output_dir() / "observed";
  fs::remove_all(dir);
  fs::create_directories(dir);
  for (std::size_t i = 0; i < data.trajectories.size(); ++i) {
    std::ostringstream out;
    write_csv(out, data.trajectories[i]);
    write_file(dir / fmt::format("traj_{:04d}.csv", i), out.str());
  }
  json manifest = {{"model", model.network.name()},
                   {"observable", std::string(model.network.species()[model.network.observable()].name)},
                   {"theta_true", model.theta_true},
                   {"n_trajectories", cfg.observed.n_trajectories},
                   {"n_grid_points", cfg.observed.n_grid_points},
                   {"t_end", cfg.observed.t_end},
                   {"seed", cfg.observed.seed}};
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");

  json summaries = json::array();
  for (auto k : cfg.pool_sizes)
    for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) {
      const auto pool = standard_pool(k, pool_seed(cfg.seed, k, rep));
      const auto obs = summarize_observed(pool, data.trajectories);
      summaries.push_back({{"K", k}, {"repetition", rep}, {"ids", pool.ids()},
                           {"summary", obs.per_statistic}, {"n_observed", obs.n_observed}});
    }
  write_file(dir / "summaries.json", summaries.dump(2) + "\n");
  return data;
}

ObservedData load_observed(const fs::path& run_dir) {
  const fs::path dir = run_dir / "observed";
  std::ifstream mf(dir / "manifest.json");
  if (!mf) throw InputError(fmt::format("no observed data under '{}'", run_dir.string()));
  const auto manifest = json::parse(mf);
  const auto n = manifest.at("n_trajectories").get<std::size_t>();
  ObservedData data;
  for (std::size_t i = 0; i < n; ++i) {
    std::ifstream in(dir / fmt::format("traj_{:04d}.csv", i));
    if (!in) throw InputError(fmt::format("missing observed trajectory {}", i));
    data.trajectories.push_back(read_csv(in));
  }
  return data;
}

void write_accepted_csv(std::ostream& out, const InferenceRun& run,
                        std::span<const std::string> parameter_names) {
  for (const auto& p : parameter_names) out << p << ',';
  out << "iteration,arm,distance,sim_seed\n";
  for (const auto& a : run.accepted) {
    for (double v : a.theta) out << fmt::format("{},", v);
    out << fmt::format("{},{},{},{}\n", a.iteration, a.arm ? fmt::format("{}", *a.arm) : std::string(),
                       a.distance, a.sim_seed);
  }
}

void write_ledger_csv(std::ostream& out, const InferenceRun& run) {
  out << "iteration,arm_id,reward,phase,selected\n";
  if (!run.ledger) return;
  for (const auto& row : run.ledger->rows()) {
    const auto& it = run.iterations.at(row.iteration);
    for (std::size_t arm = 0; arm < row.rewards.size(); ++arm) {
      if (!row.rewards[arm]) continue;
      out << fmt::format("{},{},{},{},{}\n", row.iteration, arm, *row.rewards[arm], to_string(it.phase),
                         it.arm == arm ? 1 : 0);
    }
  }
}

RewardLedger read_ledger_csv(std::istream& in, std::size_t num_arms) {
  std::string line;
  if (!std::getline(in, line) || line != "iteration,arm_id,reward,phase,selected")
    throw InputError("unexpected ledger.csv header");
  RewardLedger ledger(num_arms);
  std::vector<std::optional<double>> row(num_arms);
  std::optional<std::size_t> current;
  auto flush = [&] {
    if (current) ledger.record(*current, row);
    std::fill(row.begin(), row.end(), std::nullopt);
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string it, arm, reward;
    std::getline(fields, it, ',');
    std::getline(fields, arm, ',');
    std::getline(fields, reward, ',');
    try {
      const auto iteration = std::stoull(it);
      const auto a = std::stoull(arm);
      if (a >= num_arms) throw InputError("ledger arm outside the pool");
      if (!current || *current != iteration) {
        flush();
        current = iteration;
      }
      row[a] = std::stod(reward);
    } catch (const std::logic_error&) {
      throw InputError("malformed ledger.csv row: " + line);
    }
  }
  flush();
  return ledger;
}

namespace {

struct CellContext {
  const ExperimentConfig& cfg;
  const ResolvedModel& model;
  const Simulator& sim;
  const StatisticPool& pool;
  const ObservedSummary& observed;
  const NormalizationState& norm;
  std::size_t k;
  std::size_t rep;
};

RunConfig run_config_for(const CellContext& c, const MethodSettings& s) {
  RunConfig rc;
  rc.n_accept = s.n_accept;
  rc.tau = s.tau;
  rc.max_simulations = s.max_simulations;
  rc.seed = repetition_seed(c.cfg.seed, c.rep);
  rc.batch_size = c.cfg.batch_size;
  return rc;
}

json run_json(const CellContext& c, const std::string& method, const InferenceRun& run,
              const MethodSettings& s, std::optional<double> mae_value) {
  json doc;
  doc["method"] = method;
  doc["K"] = c.k;
  doc["repetition"] = c.rep;
  doc["settings"] = settings_json(s);
  doc["run_seed"] = run.config.seed;
  doc["pool"] = c.pool.ids();
  doc["calibration"] = c.norm.to_json();
  doc["calibration"]["method"] = "min-max over prior-predictive batch, frozen";
  doc["total_simulations"] = run.total_simulations;
  doc["accepted"] = run.accepted.size();
  doc["completed"] = run.completed;
  doc["timings"] = {{"simulation", run.timings.simulation}, {"statistics", run.timings.statistics},
                    {"selection", run.timings.selection},   {"other", run.timings.other},
                    {"total", run.timings.total}};
  if (!run.accepted.empty()) doc["posterior_mean"] = posterior_estimate(run);
  doc["mae"] = mae_value ? json(*mae_value) : json(nullptr);
  doc["accepted_file"] = "accepted.csv";
  doc["accepted_samples"] = json::array();
  for (const auto& a : run.accepted)
    doc["accepted_samples"].push_back({{"theta", a.theta}, {"iteration", a.iteration},
                                       {"arm", a.arm ? json(*a.arm) : json(nullptr)},
                                       {"distance", a.distance}, {"sim_seed", a.sim_seed}});
  if (run.ledger) {
    doc["ledger_file"] = "ledger.csv";
    json ranks = json::array();
    for (const auto& r : rank_arms(*run.ledger))
      ranks.push_back({{"arm", r.arm}, {"id", c.pool[r.arm].id},
                       {"mean_reward", r.mean ? json(*r.mean) : json(nullptr)}, {"pulls", r.pulls}});
    doc["rank"] = ranks;
  } else {
    doc["statistics"] = run.statistics;
  }
  return doc;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto model = resolve_model(cfg);
  const fs::path out_dir = cfg.resolved_output_dir();
  ObservedData observed_data;
  if (fs::exists(out_dir / "observed" / "manifest.json")) {
    observed_data = load_observed(out_dir);
    if (observed_data.trajectories.size() != cfg.observed.n_trajectories)
      throw InputError("observed/ does not match the config; regenerate it");
  } else {
    observed_data = generate_observed(cfg);
  }
  const auto sim = network_simulator(model.network, cfg.observed.t_end, cfg.observed.n_grid_points);

  // Dynamic methods run first so the static baselines can use their ranking.
  std::vector<std::string> order;
  for (const auto& m : cfg.methods)
    if (is_dynamic(m)) order.push_back(m);
  for (const auto& m : cfg.methods)
    if (!is_dynamic(m)) order.push_back(m);

  ExperimentResult result;
  json calibrations = json::array();
  for (auto k : cfg.pool_sizes) {
    for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) {
      std::optional<StatisticPool> pool;
      std::optional<ObservedSummary> observed;
      std::optional<NormalizationState> norm;
      std::string setup_error;
      try {
        pool = standard_pool(k, pool_seed(cfg.seed, k, rep));
        observed = summarize_observed(*pool, observed_data.trajectories);
        norm = calibrate(sim, *pool, model.prior, *observed, cfg.calibration_size,
                         calibration_seed(cfg.seed, rep));
        calibrations.push_back({{"K", k}, {"repetition", rep}, {"ids", pool->ids()},
                                {"normalization", norm->to_json()}});
      } catch (const std::exception& e) {
        setup_error = e.what();
      }

      std::optional<std::vector<std::size_t>> ranking;
      for (const auto& method : order) {
        ReportRow row;
        row.method = method;
        row.k = k;
        row.repetition = rep;
        try {
          if (!setup_error.empty()) throw StateError("cell setup failed: " + setup_error);
          const auto s = cfg.settings_for(method);
          const CellContext ctx{cfg, model, sim, *pool, *observed, *norm, k, rep};
          const RunConfig rc = run_config_for(ctx, s);
          InferenceRun run;
          if (is_dynamic(method)) {
            BanditConfig bc;
            bc.strategy = strategy_of(method);
            bc.epsilon = s.epsilon;
            bc.exploration_budget = exploration_budget(s.epsilon, s.n_accept);
            bc.seed = derive_seed(rc.seed, Stream::bandit);
            bc.record_all = s.record_all;
            run = run_dynamic(sim, *pool, model.prior, *observed, *norm, bc, rc);
            if (method == "mab_eps_first") {
              ranking.emplace();
              for (const auto& r : rank_arms(*run.ledger)) ranking->push_back(r.arm);
            }
          } else {
            std::vector<std::size_t> subset;
            Combine combine = Combine::l2;
            if (method == "static_random_k") {
              if (s.k > k) throw ConfigError("static_random_k: k exceeds the pool size");
              std::vector<std::size_t> idx(k);
              for (std::size_t i = 0; i < k; ++i) idx[i] = i;
              Rng rng(derive_seed(derive_seed(cfg.seed, Stream::baseline, k), rep));
              for (std::size_t i = 0; i < s.k; ++i) std::swap(idx[i], idx[i + rng.index(k - i)]);
              subset.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(s.k));
              std::sort(subset.begin(), subset.end());
            } else {
              if (!ranking) throw StateError(fmt::format("{} needs a mab_eps_first run in the same cell", method));
              const std::size_t take = method == "static_single" ? 1 : s.k;
              if (take > ranking->size()) throw ConfigError(fmt::format("{}: k exceeds the pool size", method));
              subset.assign(ranking->begin(), ranking->begin() + static_cast<std::ptrdiff_t>(take));
              if (method == "static_single") combine = Combine::single;
            }
            run = run_static(sim, *pool, subset, combine, model.prior, *observed, *norm, rc);
          }

          std::optional<double> mae_value;
          if (!run.accepted.empty()) mae_value = mae(posterior_estimate(run), model.theta_true);
          row.mae = mae_value;
          row.total_simulations = run.total_simulations;
          row.accepted = run.accepted.size();
          row.completed = run.completed;
          row.wall_time_total = run.timings.total;
          row.wall_time_selection = run.timings.selection;
          if (!run.completed)
            row.error = fmt::format("budget exhausted after {} simulations", run.total_simulations);

          const fs::path cell = out_dir / "cells" / method / fmt::format("K{}", k) / fmt::format("rep{}", rep);
          std::ostringstream acc, led;
          write_accepted_csv(acc, run, model.network.parameter_names());
          write_file(cell / "accepted.csv", acc.str());
          if (run.ledger) {
            write_ledger_csv(led, run);
            write_file(cell / "ledger.csv", led.str());
          }
          write_file(cell / "run.json", run_json(ctx, method, run, s, mae_value).dump(2) + "\n");
        } catch (const std::exception& e) {
          row = ReportRow{};
          row.method = method;
          row.k = k;
          row.repetition = rep;
          row.status = "failed";
          row.error = e.what();
        }
        std::cerr << fmt::format("[{} K={} rep={}] {} mae={} sims={} accepted={}\n", method, k, rep,
                                 row.status, row.mae ? fmt::format("{:.3f}", *row.mae) : "-",
                                 row.total_simulations.value_or(0), row.accepted.value_or(0));
        result.rows.push_back(std::move(row));
      }
    }
  }
  result.aggregates = aggregate(result.rows);

  std::ostringstream csv;
  write_rows_csv(csv, result.rows);
  write_file(out_dir / "report.csv", csv.str());
  json report;
  report["config"] = cfg.to_json();
  report["rows"] = json::array();
  for (const auto& r : result.rows) report["rows"].push_back(to_json(r));
  report["aggregates"] = json::array();
  for (const auto& a : result.aggregates) report["aggregates"].push_back(to_json(a));
  report["reserved_methods"] = json::array();
  for (const auto& m : reserved_methods())
    report["reserved_methods"].push_back({{"method", m}, {"status", "not implemented"}});
  report["calibration"] = calibrations;
  write_file(out_dir / "report.json", report.dump(2) + "\n");
  write_file(out_dir / "report.txt", render_tables(result.aggregates));
  return result;
}

}  // namespace abcmab
