#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "skirmish/world/unit_catalog.hpp"

namespace skirmish {

inline constexpr double kMapSize = 32.0;

enum class RewardMode { kDense, kSparse };
std::string_view to_string(RewardMode mode);
RewardMode reward_mode_from_string(std::string_view s);

struct Rect {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  bool inside_map() const { return x0 >= 0 && y0 >= 0 && x1 <= kMapSize && y1 <= kMapSize && x0 <= x1 && y0 <= y1; }
};

/// Weighted unit-type mix for one team.
using UnitMix = std::vector<std::pair<UnitKind, double>>;

struct ScenarioSpec {
  std::string name;
  Race race = Race::kProtoss;
  int n_allies = 5;
  int n_enemies = 5;
  UnitMix ally_mix;
  UnitMix enemy_mix;
  /// The first min(n_allies, n_enemies) enemies copy the ally types, the rest
  /// are drawn from enemy_mix.
  bool mirror_enemy_types = true;
  Rect ally_spawn;
  Rect enemy_spawn;
  RewardMode reward_mode = RewardMode::kDense;
  int episode_limit = 150;
  /// Only the first ally to spot an enemy may keep observing it.
  bool first_spotter_only = true;
  UnitCatalog catalog;
};

/// Throws std::invalid_argument on zero units, empty mixes or out-of-map spawns.
void validate(const ScenarioSpec& spec);

/// The six built-in scenarios: {protoss,terran,zerg}_{5v5,5v6}.
std::vector<std::string> builtin_scenario_names();
ScenarioSpec builtin_scenario(const std::string& name);

/// Reads a scenario from JSON. Absent fields keep their defaults; "extends"
/// starts from a built-in scenario so a file can patch just a few fields.
ScenarioSpec scenario_from_json(const nlohmann::json& doc);
nlohmann::json scenario_to_json(const ScenarioSpec& spec);
ScenarioSpec load_scenario_file(const std::string& path);

}  // namespace skirmish
