// Command-line harness: observed-data generation, experiment sweeps, report
// rendering and arm ranking.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "abcmab/errors.hpp"
#include "abcmab/experiment.hpp"
#include "abcmab/models.hpp"
#include "abcmab/pool.hpp"
#include "abcmab/ssa.hpp"

namespace fs = std::filesystem;
using namespace abcmab;

namespace {

ExperimentConfig load_config(const std::string& path, const std::optional<std::uint64_t>& seed) {
  auto cfg = ExperimentConfig::load(path);
  if (seed) cfg.seed = *seed;
  return cfg;
}

int cmd_report(const std::string& run_dir) {
  std::ifstream in(fs::path(run_dir) / "report.csv");
  if (!in) throw InputError(fmt::format("no report.csv in '{}'", run_dir));
  const auto rows = read_rows_csv(in);
  const auto aggs = aggregate(rows);
  std::cout << render_tables(aggs);
  return 0;
}

int cmd_rank(const std::string& run_dir, const std::string& method, std::optional<std::size_t> k,
             std::size_t rep) {
  fs::path base = fs::path(run_dir) / "cells" / method;
  if (!fs::exists(base)) throw InputError(fmt::format("no '{}' cells in '{}'", method, run_dir));
  if (!k) {
    // Default to the largest pool size present.
    for (const auto& entry : fs::directory_iterator(base)) {
      const auto name = entry.path().filename().string();
      if (name.size() > 1 && name[0] == 'K') k = std::max<std::size_t>(k.value_or(0), std::stoull(name.substr(1)));
    }
    if (!k) throw InputError("no pool-size directories found");
  }
  const fs::path cell = base / fmt::format("K{}", *k) / fmt::format("rep{}", rep);
  std::ifstream rj(cell / "run.json");
  if (!rj) throw InputError(fmt::format("no run.json in '{}'", cell.string()));
  const auto doc = nlohmann::json::parse(rj);
  const auto ids = doc.at("pool").get<std::vector<std::string>>();
  std::ifstream lf(cell / "ledger.csv");
  if (!lf) throw InputError(fmt::format("no ledger.csv in '{}'", cell.string()));
  const auto ledger = read_ledger_csv(lf, ids.size());

  std::cout << fmt::format("arm ranking for {} K={} rep={} ({} ledger rows)\n", method, *k, rep,
                           ledger.num_rows());
  std::cout << fmt::format("{:>4}  {:>4}  {:>12}  {:>6}  {}\n", "rank", "arm", "mean_reward", "pulls", "statistic");
  std::size_t pos = 1;
  for (const auto& r : rank_arms(ledger))
    std::cout << fmt::format("{:>4}  {:>4}  {:>12}  {:>6}  {}\n", pos++, r.arm,
                             r.mean ? fmt::format("{:.6f}", *r.mean) : "-", r.pulls, ids[r.arm]);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Likelihood-free inference with bandit-selected summary statistics"};
  app.require_subcommand(1);

  std::string config_path, run_dir, method = "mab_eps_first", model_name, out_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> rank_k;
  std::size_t rank_rep = 0;

  auto* gen = app.add_subcommand("generate-observed", "Simulate the observed data set of a config");
  gen->add_option("config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  gen->add_option("--seed", seed, "Override the config seed");

  auto* run = app.add_subcommand("run", "Run every (method, K, repetition) cell of a config");
  run->add_option("config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "Override the config seed");

  auto* report = app.add_subcommand("report", "Re-aggregate and print the tables of a run directory");
  report->add_option("run-dir", run_dir)->required()->check(CLI::ExistingDirectory);

  auto* rank = app.add_subcommand("rank", "Print the bandit's arm ranking from a run directory");
  rank->add_option("run-dir", run_dir)->required()->check(CLI::ExistingDirectory);
  rank->add_option("--method", method, "Dynamic method whose ledger to rank");
  rank->add_option("--K", rank_k, "Pool size (default: largest present)");
  rank->add_option("--rep", rank_rep, "Repetition index");

  auto* catalog = app.add_subcommand("catalog", "Export the statistic catalog as JSON");
  catalog->add_option("-o,--output", out_path, "Output file (default stdout)");

  auto* model = app.add_subcommand("model", "Export a builtin model definition as JSON");
  model->add_option("name", model_name)->required();
  model->add_option("-o,--output", out_path, "Output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const auto cfg = load_config(config_path, seed);
      const auto data = generate_observed(cfg);
      std::cout << fmt::format("wrote {} trajectories to {}\n", data.trajectories.size(),
                               (cfg.resolved_output_dir() / "observed").string());
    } else if (run->parsed()) {
      const auto cfg = load_config(config_path, seed);
      const auto result = run_experiment(cfg);
      std::cout << render_tables(result.aggregates);
      std::cout << fmt::format("outputs in {}\n", cfg.resolved_output_dir().string());
    } else if (report->parsed()) {
      return cmd_report(run_dir);
    } else if (rank->parsed()) {
      return cmd_rank(run_dir, method, rank_k, rank_rep);
    } else if (catalog->parsed() || model->parsed()) {
      const auto doc = catalog->parsed() ? catalog_json(statistic_catalog())
                                         : network_to_json(builtin_model(model_name));
      if (out_path.empty()) {
        std::cout << doc.dump(2) << '\n';
      } else {
        std::ofstream(out_path) << doc.dump(2) << '\n';
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
