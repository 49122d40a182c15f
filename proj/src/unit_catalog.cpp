#include "skirmish/world/unit_catalog.hpp"

#include <stdexcept>

namespace skirmish {

namespace {

constexpr std::array<std::string_view, kUnitKindCount> kKindNames = {
    "stalker", "zealot", "colossus", "marine", "marauder", "medivac", "zergling", "hydralisk", "baneling",
};

UnitType make(UnitKind kind, Race race, double sight, double shoot, double damage, int cooldown,
              double health, double shield, double speed, double radius) {
  UnitType t;
  t.kind = kind;
  t.race = race;
  t.sight_range = sight;
  t.shoot_range = shoot;
  t.damage_per_hit = damage;
  t.attack_cooldown = cooldown;
  t.max_health = health;
  t.max_shield = shield;
  t.move_speed = speed;
  t.collision_radius = radius;
  return t;
}

}  // namespace

std::string_view to_string(UnitKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

std::string_view to_string(Race race) {
  switch (race) {
    case Race::kProtoss:
      return "protoss";
    case Race::kTerran:
      return "terran";
    case Race::kZerg:
      return "zerg";
  }
  return "protoss";
}

std::optional<UnitKind> unit_kind_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) return static_cast<UnitKind>(i);
  }
  return std::nullopt;
}

std::optional<Race> race_from_string(std::string_view name) {
  if (name == "protoss") return Race::kProtoss;
  if (name == "terran") return Race::kTerran;
  if (name == "zerg") return Race::kZerg;
  return std::nullopt;
}

bool is_melee_name(std::string_view unit_type) {
  return unit_type == "zealot" || unit_type == "zergling" || unit_type == "baneling";
}

void validate(const UnitType& t) {
  const std::string name(t.name());
  if (t.sight_range <= 0.0) throw std::invalid_argument(name + ": sight_range must be positive");
  if (t.shoot_range <= 0.0) throw std::invalid_argument(name + ": shoot_range must be positive");
  if (t.shoot_range > t.sight_range) throw std::invalid_argument(name + ": shoot_range exceeds sight_range");
  if (t.is_melee && t.shoot_range > 1.0) throw std::invalid_argument(name + ": melee shoot_range exceeds 1.0");
  if (t.is_healer && t.damage_per_hit != 0.0) throw std::invalid_argument(name + ": healer with nonzero damage");
  if (t.max_health <= 0.0) throw std::invalid_argument(name + ": max_health must be positive");
  if (t.max_shield < 0.0) throw std::invalid_argument(name + ": max_shield must be non-negative");
  if (t.race != Race::kProtoss && t.max_shield != 0.0) throw std::invalid_argument(name + ": only protoss carry shields");
  if (t.move_speed <= 0.0) throw std::invalid_argument(name + ": move_speed must be positive");
  if (t.attack_cooldown < 0) throw std::invalid_argument(name + ": attack_cooldown must be non-negative");
  if (t.collision_radius < 0.0) throw std::invalid_argument(name + ": collision_radius must be non-negative");
}

UnitCatalog::UnitCatalog() {
  using K = UnitKind;
  using R = Race;
  //                       sight shoot  dmg  cd   hp   shield speed radius
  types_[0] = make(K::kStalker, R::kProtoss, 9, 6, 13, 3, 80, 80, 1.0, 0.625);
  types_[1] = make(K::kZealot, R::kProtoss, 9, 1, 16, 2, 100, 50, 0.9, 0.5);
  types_[2] = make(K::kColossus, R::kProtoss, 10, 7, 20, 3, 200, 150, 0.8, 1.0);
  types_[3] = make(K::kMarine, R::kTerran, 9, 5, 6, 1, 45, 0, 0.9, 0.375);
  types_[4] = make(K::kMarauder, R::kTerran, 9, 6, 10, 2, 125, 0, 0.9, 0.5625);
  types_[5] = make(K::kMedivac, R::kTerran, 9, 4, 0, 1, 150, 0, 1.1, 0.75);
  types_[6] = make(K::kZergling, R::kZerg, 8, 1, 5, 1, 35, 0, 1.2, 0.375);
  types_[7] = make(K::kHydralisk, R::kZerg, 9, 5, 12, 2, 90, 0, 0.9, 0.625);
  types_[8] = make(K::kBaneling, R::kZerg, 8, 1, 20, 0, 30, 0, 0.9, 0.375);
  types_[1].is_melee = true;
  types_[5].is_healer = true;
  types_[5].heal_per_hit = 9.0;
  types_[6].is_melee = true;
  types_[8].is_melee = true;
  types_[8].is_suicide_aoe = true;
  for (const auto& t : types_) validate(t);
}

const UnitType* UnitCatalog::find(std::string_view name) const {
  auto kind = unit_kind_from_string(name);
  return kind ? &types_[static_cast<std::size_t>(*kind)] : nullptr;
}

void UnitCatalog::apply_overrides(const nlohmann::json& overrides) {
  if (!overrides.is_object()) throw std::invalid_argument("unit_stats must be an object");
  for (const auto& [name, fields] : overrides.items()) {
    auto kind = unit_kind_from_string(name);
    if (!kind) throw std::invalid_argument("unit_stats: unknown unit type '" + name + "'");
    UnitType& t = types_[static_cast<std::size_t>(*kind)];
    for (const auto& [field, value] : fields.items()) {
      if (field == "sight_range") t.sight_range = value.get<double>();
      else if (field == "shoot_range") t.shoot_range = value.get<double>();
      else if (field == "damage_per_hit") t.damage_per_hit = value.get<double>();
      else if (field == "attack_cooldown") t.attack_cooldown = value.get<int>();
      else if (field == "max_health") t.max_health = value.get<double>();
      else if (field == "max_shield") t.max_shield = value.get<double>();
      else if (field == "move_speed") t.move_speed = value.get<double>();
      else if (field == "collision_radius") t.collision_radius = value.get<double>();
      else if (field == "heal_per_hit") t.heal_per_hit = value.get<double>();
      else if (field == "race" || field == "is_melee" || field == "is_healer" || field == "is_suicide_aoe") {
        // Fixed per kind; accepted so to_json() output reads back, rejected if changed.
        const bool same = field == "race"        ? value.get<std::string>() == to_string(t.race)
                          : field == "is_melee"  ? value.get<bool>() == t.is_melee
                          : field == "is_healer" ? value.get<bool>() == t.is_healer
                                                 : value.get<bool>() == t.is_suicide_aoe;
        if (!same) throw std::invalid_argument("unit_stats." + name + "." + field + " is fixed for this unit type");
      }
      else throw std::invalid_argument("unit_stats." + name + ": unknown field '" + field + "'");
    }
    validate(t);
  }
}

nlohmann::json UnitCatalog::to_json() const {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& t : types_) {
    out[std::string(t.name())] = {
        {"race", to_string(t.race)},
        {"sight_range", t.sight_range},
        {"shoot_range", t.shoot_range},
        {"damage_per_hit", t.damage_per_hit},
        {"attack_cooldown", t.attack_cooldown},
        {"max_health", t.max_health},
        {"max_shield", t.max_shield},
        {"move_speed", t.move_speed},
        {"collision_radius", t.collision_radius},
        {"is_melee", t.is_melee},
        {"is_healer", t.is_healer},
        {"is_suicide_aoe", t.is_suicide_aoe},
        {"heal_per_hit", t.heal_per_hit},
    };
  }
  return out;
}

}  // namespace skirmish
