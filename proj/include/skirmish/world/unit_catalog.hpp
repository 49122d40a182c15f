#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

namespace skirmish {

enum class UnitKind : std::uint8_t {
  kStalker,
  kZealot,
  kColossus,
  kMarine,
  kMarauder,
  kMedivac,
  kZergling,
  kHydralisk,
  kBaneling,
};
inline constexpr std::size_t kUnitKindCount = 9;

enum class Race : std::uint8_t { kProtoss, kTerran, kZerg };

std::string_view to_string(UnitKind kind);
std::string_view to_string(Race race);
std::optional<UnitKind> unit_kind_from_string(std::string_view name);
std::optional<Race> race_from_string(std::string_view name);

/// Per-type combat statistics. Distances are in grid units, time in steps.
struct UnitType {
  UnitKind kind = UnitKind::kStalker;
  Race race = Race::kProtoss;
  double sight_range = 9.0;
  double shoot_range = 6.0;
  double damage_per_hit = 0.0;
  int attack_cooldown = 1;
  double max_health = 1.0;
  double max_shield = 0.0;
  double move_speed = 1.0;
  double collision_radius = 0.5;
  bool is_melee = false;
  bool is_healer = false;
  bool is_suicide_aoe = false;
  /// Hitpoints restored per heal; only meaningful for healers.
  double heal_per_hit = 0.0;

  std::string_view name() const { return to_string(kind); }
};

/// Throws std::invalid_argument naming the violated constraint.
void validate(const UnitType& type);

/// The stat table. The defaults are configuration, loosely following SC2
/// proportions; every field can be overridden from a scenario file.
class UnitCatalog {
 public:
  UnitCatalog();

  const UnitType& operator[](UnitKind kind) const { return types_[static_cast<std::size_t>(kind)]; }
  const UnitType* find(std::string_view name) const;

  /// Applies {"stalker": {"shoot_range": 5.5, ...}, ...}. Unknown unit names or
  /// fields throw; the result is validated.
  void apply_overrides(const nlohmann::json& overrides);

  nlohmann::json to_json() const;

 private:
  std::array<UnitType, kUnitKindCount> types_{};
};

/// Name-based melee test used by skills, which only ever see type names.
bool is_melee_name(std::string_view unit_type);

}  // namespace skirmish
