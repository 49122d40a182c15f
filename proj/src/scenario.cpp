#include "skirmish/world/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace skirmish {

std::string_view to_string(RewardMode mode) { return mode == RewardMode::kDense ? "dense" : "sparse"; }

RewardMode reward_mode_from_string(std::string_view s) {
  if (s == "dense") return RewardMode::kDense;
  if (s == "sparse") return RewardMode::kSparse;
  throw std::invalid_argument("unknown reward mode '" + std::string(s) + "' (expected dense|sparse)");
}

void validate(const ScenarioSpec& spec) {
  if (spec.n_allies < 1 || spec.n_enemies < 1) throw std::invalid_argument(spec.name + ": each team needs at least one unit");
  if (!spec.ally_spawn.inside_map()) throw std::invalid_argument(spec.name + ": ally spawn rectangle outside map");
  if (!spec.enemy_spawn.inside_map()) throw std::invalid_argument(spec.name + ": enemy spawn rectangle outside map");
  if (spec.episode_limit < 1) throw std::invalid_argument(spec.name + ": episode_limit must be positive");
  auto check_mix = [&](const UnitMix& mix, const char* label) {
    double total = 0.0;
    for (const auto& [kind, w] : mix) {
      if (w < 0.0) throw std::invalid_argument(spec.name + ": negative weight in " + label);
      total += w;
    }
    if (total <= 0.0) throw std::invalid_argument(spec.name + ": empty " + std::string(label));
  };
  check_mix(spec.ally_mix, "ally_mix");
  if (!spec.mirror_enemy_types || spec.n_enemies > spec.n_allies) check_mix(spec.enemy_mix, "enemy_mix");
}

namespace {

UnitMix race_mix(Race race) {
  switch (race) {
    case Race::kProtoss:
      return {{UnitKind::kStalker, 0.45}, {UnitKind::kZealot, 0.45}, {UnitKind::kColossus, 0.10}};
    case Race::kTerran:
      return {{UnitKind::kMarine, 0.45}, {UnitKind::kMarauder, 0.45}, {UnitKind::kMedivac, 0.10}};
    case Race::kZerg:
      return {{UnitKind::kZergling, 0.45}, {UnitKind::kHydralisk, 0.45}, {UnitKind::kBaneling, 0.10}};
  }
  return {};
}

UnitMix mix_from_json(const nlohmann::json& j) {
  UnitMix mix;
  for (const auto& [name, w] : j.items()) {
    auto kind = unit_kind_from_string(name);
    if (!kind) throw std::invalid_argument("unit mix: unknown unit type '" + name + "'");
    mix.emplace_back(*kind, w.get<double>());
  }
  // JSON objects come back key-sorted; sampling order follows the kind enum.
  std::sort(mix.begin(), mix.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return mix;
}

nlohmann::json mix_to_json(const UnitMix& mix) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [kind, w] : mix) j[std::string(to_string(kind))] = w;
  return j;
}

Rect rect_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 4) throw std::invalid_argument("spawn rectangle must be [x0, y0, x1, y1]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

}  // namespace

std::vector<std::string> builtin_scenario_names() {
  return {"protoss_5v5", "protoss_5v6", "terran_5v5", "terran_5v6", "zerg_5v5", "zerg_5v6"};
}

ScenarioSpec builtin_scenario(const std::string& name) {
  const auto sep = name.find('_');
  if (sep == std::string::npos) throw std::invalid_argument("unknown scenario '" + name + "'");
  auto race = race_from_string(name.substr(0, sep));
  const std::string size = name.substr(sep + 1);
  if (!race || (size != "5v5" && size != "5v6")) throw std::invalid_argument("unknown scenario '" + name + "'");

  ScenarioSpec spec;
  spec.name = name;
  spec.race = *race;
  spec.n_allies = 5;
  spec.n_enemies = size == "5v5" ? 5 : 6;
  spec.ally_mix = race_mix(*race);
  spec.enemy_mix = race_mix(*race);
  spec.ally_spawn = {3.0, 11.0, 9.0, 21.0};
  spec.enemy_spawn = {23.0, 11.0, 29.0, 21.0};
  return spec;
}

ScenarioSpec scenario_from_json(const nlohmann::json& doc) {
  ScenarioSpec spec;
  if (doc.contains("extends")) {
    spec = builtin_scenario(doc.at("extends").get<std::string>());
  } else {
    spec.ally_mix = race_mix(Race::kProtoss);
    spec.enemy_mix = race_mix(Race::kProtoss);
    spec.ally_spawn = {3.0, 11.0, 9.0, 21.0};
    spec.enemy_spawn = {23.0, 11.0, 29.0, 21.0};
  }
  if (doc.contains("name")) spec.name = doc["name"].get<std::string>();
  if (doc.contains("race")) {
    auto race = race_from_string(doc["race"].get<std::string>());
    if (!race) throw std::invalid_argument("unknown race '" + doc["race"].get<std::string>() + "'");
    spec.race = *race;
    if (!doc.contains("ally_mix")) spec.ally_mix = race_mix(*race);
    if (!doc.contains("enemy_mix")) spec.enemy_mix = race_mix(*race);
  }
  if (doc.contains("n_allies")) spec.n_allies = doc["n_allies"].get<int>();
  if (doc.contains("n_enemies")) spec.n_enemies = doc["n_enemies"].get<int>();
  if (doc.contains("ally_mix")) spec.ally_mix = mix_from_json(doc["ally_mix"]);
  if (doc.contains("enemy_mix")) spec.enemy_mix = mix_from_json(doc["enemy_mix"]);
  if (doc.contains("mirror_enemy_types")) spec.mirror_enemy_types = doc["mirror_enemy_types"].get<bool>();
  if (doc.contains("ally_spawn")) spec.ally_spawn = rect_from_json(doc["ally_spawn"]);
  if (doc.contains("enemy_spawn")) spec.enemy_spawn = rect_from_json(doc["enemy_spawn"]);
  if (doc.contains("reward_mode")) spec.reward_mode = reward_mode_from_string(doc["reward_mode"].get<std::string>());
  if (doc.contains("episode_limit")) spec.episode_limit = doc["episode_limit"].get<int>();
  if (doc.contains("first_spotter_only")) spec.first_spotter_only = doc["first_spotter_only"].get<bool>();
  if (doc.contains("unit_stats")) spec.catalog.apply_overrides(doc["unit_stats"]);
  if (spec.name.empty()) throw std::invalid_argument("scenario needs a name");
  validate(spec);
  return spec;
}

nlohmann::json scenario_to_json(const ScenarioSpec& spec) {
  auto rect = [](const Rect& r) { return nlohmann::json::array({r.x0, r.y0, r.x1, r.y1}); };
  return {
      {"name", spec.name},
      {"race", to_string(spec.race)},
      {"n_allies", spec.n_allies},
      {"n_enemies", spec.n_enemies},
      {"ally_mix", mix_to_json(spec.ally_mix)},
      {"enemy_mix", mix_to_json(spec.enemy_mix)},
      {"mirror_enemy_types", spec.mirror_enemy_types},
      {"ally_spawn", rect(spec.ally_spawn)},
      {"enemy_spawn", rect(spec.enemy_spawn)},
      {"reward_mode", to_string(spec.reward_mode)},
      {"episode_limit", spec.episode_limit},
      {"first_spotter_only", spec.first_spotter_only},
      {"unit_stats", spec.catalog.to_json()},
  };
}

ScenarioSpec load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("scenario file " + path + ": " + e.what());
  }
  return scenario_from_json(doc);
}

}  // namespace skirmish
