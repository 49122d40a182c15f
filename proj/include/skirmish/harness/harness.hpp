#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "skirmish/harness/replay.hpp"
#include "skirmish/planner/planner.hpp"
#include "skirmish/world/world.hpp"

namespace skirmish {

enum class BackendKind { kMock, kExternal };
std::string_view to_string(BackendKind b);
BackendKind backend_kind_from_string(std::string_view s);

struct ExperimentConfig {
  std::string scenario = "protoss_5v5";
  /// Optional scenario JSON file; overrides `scenario` when set.
  std::string scenario_file;
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4};
  int episodes_per_seed = 40;
  BackendKind backend = BackendKind::kMock;
  int max_hops = 3;
  bool comm_enabled = true;
  bool reflection_enabled = true;
  bool synthesis_enabled = true;
  std::optional<RewardMode> reward_mode;
  int decision_interval = 5;
  int ttl = 10;
  /// Starting skill library (a dumped directory); empty means the bootstrap set.
  std::string skills_dir;
  /// Synthesised skills carry over between the episodes of one seed, which
  /// then run in order. Off: every episode starts from the initial library.
  bool persist_library = true;
  /// Empty: nothing is written.
  std::string out_dir;
  bool write_replays = true;
  /// 0: one per hardware thread.
  int workers = 0;

  int effective_max_hops() const { return comm_enabled ? max_hops : 0; }
  /// Throws std::invalid_argument.
  void validate() const;
};

/// Only the fields present in `j` are changed.
void apply_config_json(ExperimentConfig& cfg, const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

ScenarioSpec resolve_scenario(const ExperimentConfig& cfg);

/// Greedy full-observability enemy policy.
std::vector<int> scripted_opponent(const WorldState& world);

struct EpisodeResult {
  std::uint64_t seed = 0;
  int episode = 0;
  bool win = false;
  double ret = 0.0;
  int length = 0;
  std::string replay_path;
  std::string replay_hash;
  int backend_failure_count = 0;
  int skills_synthesized = 0;
};

struct EpisodeOptions {
  PlannerConfig planner;
  int max_hops = 3;
  int ttl = 10;
  BackendKind backend = BackendKind::kMock;
  /// Copied at episode start; nullptr means the bootstrap set.
  std::shared_ptr<const SkillLibrary> library;
  /// When set, used and extended in place instead of a copy of `library`.
  SkillLibrary* shared_library = nullptr;
  /// Called once per finished step with (world before, reward, info).
  std::function<void(const WorldState&, const StepResult&)> on_step;
};

/// Runs one episode with a fresh skill library and backend.
EpisodeResult run_episode(const ScenarioSpec& spec, std::uint64_t episode_seed, const EpisodeOptions& opts,
                          std::vector<ReplayRecord>* replay = nullptr);

struct Aggregate {
  double median_win_rate = 0.0;
  double std_win_rate = 0.0;
  double mean_return = 0.0;
  double mean_length = 0.0;
};

/// Median and population std of per-seed win rates; means over episodes.
/// Throws std::invalid_argument on empty input.
Aggregate aggregate(const std::vector<EpisodeResult>& results);
double median(std::vector<double> xs);
double population_std(const std::vector<double>& xs);

struct SeedSummary {
  std::uint64_t seed = 0;
  double win_rate = 0.0;
  double mean_return = 0.0;
  double mean_length = 0.0;
};

struct ExperimentReport {
  std::vector<EpisodeResult> episodes;
  std::vector<SeedSummary> per_seed;
  Aggregate agg;
  nlohmann::json summary;
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);

struct AblationCondition {
  std::string name;
  ExperimentReport report;
};

/// full, no_comm, no_reflection, no_synthesis. Each goes to out_dir/<name>,
/// plus out_dir/ablation.json.
std::vector<AblationCondition> run_ablation(const ExperimentConfig& base);

}  // namespace skirmish
