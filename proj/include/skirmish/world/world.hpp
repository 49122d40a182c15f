#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "skirmish/core/vec2.hpp"
#include "skirmish/obs/obs_data.hpp"
#include "skirmish/world/scenario.hpp"

namespace skirmish {

enum class Team : std::uint8_t { kAlly, kEnemy };
inline constexpr Team opponent(Team t) { return t == Team::kAlly ? Team::kEnemy : Team::kAlly; }
const char* to_string(Team t);

struct UnitState {
  int id = 0;
  Team team = Team::kAlly;
  UnitKind kind = UnitKind::kStalker;
  /// Absolute grid coordinates in [0, kMapSize]^2.
  Vec2 pos;
  /// Fractions of the type's maximum.
  double health = 1.0;
  double shield = 0.0;
  int cooldown = 0;
  bool alive = true;
  int last_action = action::kStop;

  bool operator==(const UnitState&) const = default;
};

/// Full simulator state. Copies are cheap: the scenario is shared.
struct WorldState {
  std::shared_ptr<const ScenarioSpec> spec;
  int timestep = 0;
  std::vector<UnitState> allies;
  std::vector<UnitState> enemies;
  /// spotter[e] is the ally id allowed to observe enemy e, or -1 while unassigned.
  std::vector<int> spotter;

  const std::vector<UnitState>& team(Team t) const { return t == Team::kAlly ? allies : enemies; }
  std::vector<UnitState>& team(Team t) { return t == Team::kAlly ? allies : enemies; }
  const UnitType& type_of(const UnitState& u) const { return spec->catalog[u.kind]; }
  int alive_count(Team t) const;

  /// Digest of every dynamic field; equal worlds hash equal bit-for-bit.
  std::uint64_t hash() const;
};

/// Sorted list of legal action indices for one unit.
struct ActionMask {
  std::vector<int> actions;
  bool contains(int a) const;
};

/// Enemy ids each ally may target through shared knowledge in addition to
/// its own sightings. Index = ally id; ids sorted. An empty grant list (or a
/// null pointer) reduces targeting to direct observation only.
using TargetGrants = std::vector<std::vector<int>>;

struct JointAction {
  std::vector<int> allies;
  std::vector<int> enemies;
};

struct StepInfo {
  bool win = false;
  int enemies_killed = 0;
  int allies_lost = 0;
  /// Hitpoints (health + shield) removed from the enemy team this step.
  double damage_dealt = 0.0;
  double damage_taken = 0.0;
};

struct StepResult {
  WorldState next;
  double reward = 0.0;
  bool done = false;
  StepInfo info;
};

/// Raised by step() when a unit's action is outside its mask.
class ActionRejected : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Samples unit types from the mixes and positions uniformly inside the spawn
/// rectangles. Identical (spec, seed) pairs give identical worlds.
WorldState spawn_scenario(const ScenarioSpec& spec, std::uint64_t seed);

/// Whether ally `agent` directly observes enemy `enemy` (sight + spotter rule).
bool ally_sees_enemy(const WorldState& world, int agent, int enemy);

ActionMask available_actions(const WorldState& world, Team team, int agent, const TargetGrants* grants = nullptr);

/// Observation for ally `agent`. Dead agents get an empty observation whose
/// only available action is 0.
ObsData observe(const WorldState& world, int agent, const TargetGrants* grants = nullptr);

StepResult step(const WorldState& world, const JointAction& joint, const TargetGrants* grants = nullptr);

/// Divisor that maps a perfect dense-reward win onto kDenseRewardTarget.
inline constexpr double kDenseRewardTarget = 20.0;
inline constexpr double kKillBonus = 10.0;
inline constexpr double kWinBonus = 200.0;
/// Depends on the sampled enemy types through their maximum hitpoints.
double dense_reward_scale(const WorldState& world);

}  // namespace skirmish
