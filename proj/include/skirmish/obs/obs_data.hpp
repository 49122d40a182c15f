#pragma once

#include <array>
#include <string>
#include <vector>

#include "skirmish/core/vec2.hpp"

namespace skirmish {

/// Discrete action indices shared by every unit.
namespace action {
inline constexpr int kNoOp = 0;
inline constexpr int kStop = 1;
inline constexpr int kNorth = 2;
inline constexpr int kSouth = 3;
inline constexpr int kEast = 4;
inline constexpr int kWest = 5;
inline constexpr int kFirstTarget = 6;

constexpr int target(int index) { return kFirstTarget + index; }
constexpr bool is_move(int a) { return a >= kNorth && a <= kWest; }
constexpr bool is_target(int a) { return a >= kFirstTarget; }
constexpr int target_index(int a) { return a - kFirstTarget; }
}  // namespace action

enum class Direction { kNorth = 0, kSouth = 1, kEast = 2, kWest = 3 };
inline constexpr std::array<Direction, 4> kDirections = {Direction::kNorth, Direction::kSouth, Direction::kEast,
                                                         Direction::kWest};
constexpr int move_action(Direction d) { return action::kNorth + static_cast<int>(d); }
/// North is +y, east is +x.
constexpr Vec2 direction_vector(Direction d) {
  switch (d) {
    case Direction::kNorth:
      return {0.0, 1.0};
    case Direction::kSouth:
      return {0.0, -1.0};
    case Direction::kEast:
      return {1.0, 0.0};
    case Direction::kWest:
      return {-1.0, 0.0};
  }
  return {};
}
const char* direction_name(Direction d);

/// Another unit as seen from the observer. Positions are relative and
/// divided by the observer's sight range, so distance < 1 means in sight.
struct EntityView {
  bool is_ally = false;
  int id = 0;
  std::string unit_type;
  Vec2 position;
  double distance = 0.0;
  double health = 0.0;
  double shield = 0.0;
  bool can_attack = false;
  /// Allies only; enemies render without it.
  int last_action = 0;

  bool operator==(const EntityView&) const = default;
};

/// Everything one agent perceives in a timestep. This is both the world's
/// observation record and the parsed form of the canonical observation text.
struct ObsData {
  int agent_id = 0;
  std::string own_unit_type;
  bool alive = true;
  /// Absolute position divided by the map size.
  Vec2 own_position;
  double own_health = 0.0;
  double own_shield = 0.0;
  double own_sight_range = 0.0;
  double own_shoot_range = 0.0;
  /// Indexed by Direction.
  std::array<bool, 4> can_move{};
  int last_action = action::kStop;
  std::vector<EntityView> allies;
  std::vector<EntityView> enemies;
  /// Sorted ascending, no duplicates.
  std::vector<int> available_actions;

  bool operator==(const ObsData&) const = default;

  bool has_action(int a) const;
};

}  // namespace skirmish
