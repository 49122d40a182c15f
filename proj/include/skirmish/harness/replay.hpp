#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "skirmish/world/world.hpp"

namespace skirmish {

inline constexpr int kReplaySchemaVersion = 1;

struct KnownEntity {
  Team team = Team::kEnemy;
  int id = 0;
  int hops = 0;
  int observed_at = 0;
  int source_agent = 0;
  bool operator==(const KnownEntity&) const = default;
};

/// Planner activity of one agent at one timestep.
struct AgentEvent {
  int agent = 0;
  std::string region_of_interest;
  std::optional<bool> reflection_success;
  double reflection_reward = 0.0;
  std::string subtask;
  std::string synthesized_skill;
  std::string synthesis_error;
  std::vector<std::string> warnings;
  bool operator==(const AgentEvent&) const = default;
};

/// One line of a replay: the state at `t` plus what happened during t.
/// The last record holds the terminal state and no actions.
struct ReplayRecord {
  int schema_version = kReplaySchemaVersion;
  int t = 0;
  std::vector<UnitState> allies;
  std::vector<UnitState> enemies;
  std::vector<int> spotter;
  std::string world_hash;
  std::vector<std::string> obs_digests;
  std::vector<std::vector<KnownEntity>> knowledge;
  std::vector<std::string> skills;
  std::vector<int> ally_actions;
  std::vector<int> enemy_actions;
  double reward = 0.0;
  bool done = false;
  std::vector<AgentEvent> events;
  /// Only on the first record: scenario, seed and the effective settings.
  nlohmann::json meta;

  bool operator==(const ReplayRecord&) const = default;
};

class ReplayError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json replay_record_to_json(const ReplayRecord& r);
/// Throws ReplayError on a schema-version mismatch or malformed record.
ReplayRecord replay_record_from_json(const nlohmann::json& j);

/// JSONL text, one record per line.
std::string serialize_replay(const std::vector<ReplayRecord>& records);
std::vector<ReplayRecord> parse_replay(const std::string& text);

void write_replay(const std::string& path, const std::vector<ReplayRecord>& records);
std::vector<ReplayRecord> read_replay(const std::string& path);

}  // namespace skirmish
