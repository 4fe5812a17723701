#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "abcmab/metric.hpp"
#include "abcmab/network.hpp"
#include "abcmab/pool.hpp"
#include "abcmab/prior.hpp"
#include "abcmab/report.hpp"
#include "abcmab/sampler.hpp"

namespace abcmab {

/// Environment variable that re-roots relative output directories.
inline constexpr const char* kOutputRootEnv = "ABCMAB_OUTPUT_ROOT";

inline constexpr int kConfigVersion = 1;

struct ObservedSpec {
  std::size_t n_trajectories = 30;
  std::size_t n_grid_points = 200;
  double t_end = 200.0;
  std::vector<double> theta_true;  // empty: the model's reference vector
  std::uint64_t seed = 1;
};

struct MethodSettings {
  double epsilon = 0.5;
  std::size_t n_accept = 20;
  double tau = 0.05;
  std::size_t max_simulations = 3000;
  std::size_t k = 3;  // subset size for static_l2_topk / static_random_k
  bool record_all = true;
};

struct ExperimentConfig {
  int version = kConfigVersion;
  std::string model = "birth_death";
  std::optional<std::string> model_file;
  std::optional<std::string> observable;
  ObservedSpec observed;
  std::optional<Prior> prior;
  std::vector<std::size_t> pool_sizes{10};
  std::vector<std::string> methods{"mab_eps_first"};
  MethodSettings settings;
  std::map<std::string, nlohmann::json> method_overrides;
  std::size_t calibration_size = 50;
  std::size_t repetitions = 1;
  std::uint64_t seed = 1;
  std::size_t batch_size = 0;
  std::string output_dir = "runs/default";

  static ExperimentConfig from_json(const nlohmann::json& doc);
  static ExperimentConfig load(const std::filesystem::path& path);
  nlohmann::json to_json() const;

  /// Throws ConfigError on any unresolvable reference.
  void validate() const;

  MethodSettings settings_for(const std::string& method) const;
  std::filesystem::path resolved_output_dir() const;
};

/// Methods the harness knows how to run.
std::vector<std::string> known_methods();

/// Network, prior and truth resolved from a config.
struct ResolvedModel {
  ReactionNetwork network;
  Prior prior;
  std::vector<double> theta_true;
};
ResolvedModel resolve_model(const ExperimentConfig& cfg);

struct ObservedData {
  std::vector<Trajectory> trajectories;
};

/// Simulates the observed set at theta_true, writes observed/traj_NNNN.csv,
/// observed/manifest.json and observed/summaries.json under the output dir.
ObservedData generate_observed(const ExperimentConfig& cfg);

/// Reads observed/ back; throws InputError when absent or inconsistent.
ObservedData load_observed(const std::filesystem::path& run_dir);

/// Seed derivations shared by the harness and its tests.
std::uint64_t repetition_seed(std::uint64_t seed, std::size_t rep);
std::uint64_t calibration_seed(std::uint64_t seed, std::size_t rep);
std::uint64_t pool_seed(std::uint64_t seed, std::size_t k, std::size_t rep);

struct ExperimentResult {
  std::vector<ReportRow> rows;
  std::vector<Aggregate> aggregates;
};

/// Runs every (K, repetition, method) cell, writing cells/<method>/K<k>/rep<r>/
/// plus report.csv, report.json and report.txt. Failed cells become null rows.
/// Generates observed data first if observed/ is missing.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// CSV exports used per cell.
void write_accepted_csv(std::ostream& out, const InferenceRun& run,
                        std::span<const std::string> parameter_names);
void write_ledger_csv(std::ostream& out, const InferenceRun& run);

/// Rebuilds a ledger from ledger.csv (arm count from `num_arms`).
RewardLedger read_ledger_csv(std::istream& in, std::size_t num_arms);

}  // namespace abcmab
