#include "skirmish/world/world.hpp"

#include <algorithm>
#include <string>

#include "skirmish/core/hash.hpp"
#include "skirmish/core/rng.hpp"

namespace skirmish {

const char* to_string(Team t) { return t == Team::kAlly ? "ally" : "enemy"; }

const char* direction_name(Direction d) {
  switch (d) {
    case Direction::kNorth:
      return "North";
    case Direction::kSouth:
      return "South";
    case Direction::kEast:
      return "East";
    case Direction::kWest:
      return "West";
  }
  return "North";
}

bool ObsData::has_action(int a) const {
  return std::binary_search(available_actions.begin(), available_actions.end(), a);
}

bool ActionMask::contains(int a) const { return std::binary_search(actions.begin(), actions.end(), a); }

int WorldState::alive_count(Team t) const {
  const auto& units = team(t);
  return static_cast<int>(std::count_if(units.begin(), units.end(), [](const UnitState& u) { return u.alive; }));
}

std::uint64_t WorldState::hash() const {
  Fnv1a h;
  h.i64(timestep);
  for (const auto* units : {&allies, &enemies}) {
    h.u64(units->size());
    for (const auto& u : *units) {
      h.i64(u.id).i64(static_cast<int>(u.team)).i64(static_cast<int>(u.kind));
      h.f64(u.pos.x).f64(u.pos.y).f64(u.health).f64(u.shield);
      h.i64(u.cooldown).i64(u.alive ? 1 : 0).i64(u.last_action);
    }
  }
  for (int s : spotter) h.i64(s);
  return h.value();
}

namespace {

UnitKind sample_kind(const UnitMix& mix, Rng& rng) {
  double total = 0.0;
  for (const auto& [kind, w] : mix) total += w;
  double r = rng.uniform() * total;
  for (const auto& [kind, w] : mix) {
    if (r < w) return kind;
    r -= w;
  }
  return mix.back().first;
}

UnitState make_unit(const ScenarioSpec& spec, int id, Team team, UnitKind kind, const Rect& rect, Rng& rng) {
  UnitState u;
  u.id = id;
  u.team = team;
  u.kind = kind;
  u.pos = {rng.uniform(rect.x0, rect.x1), rng.uniform(rect.y0, rect.y1)};
  u.health = 1.0;
  u.shield = spec.catalog[kind].max_shield > 0.0 ? 1.0 : 0.0;
  return u;
}

bool in_map(Vec2 p) { return p.x >= 0.0 && p.x <= kMapSize && p.y >= 0.0 && p.y <= kMapSize; }

/// Normalised distance, the same quantity observations report.
double sight_fraction(const WorldState& w, const UnitState& observer, const UnitState& other) {
  return ((other.pos - observer.pos) / w.type_of(observer).sight_range).norm();
}

bool in_shoot_range(const WorldState& w, const UnitState& shooter, const UnitState& target) {
  return distance(shooter.pos, target.pos) <= w.type_of(shooter).shoot_range;
}

void update_spotters(WorldState& w) {
  for (std::size_t e = 0; e < w.enemies.size(); ++e) {
    int& owner = w.spotter[e];
    if (owner >= 0 && !w.allies[static_cast<std::size_t>(owner)].alive) owner = -1;
    if (owner >= 0 || !w.enemies[e].alive) continue;
    for (const auto& a : w.allies) {
      if (a.alive && sight_fraction(w, a, w.enemies[e]) < 1.0) {
        owner = a.id;
        break;
      }
    }
  }
}

bool granted(const TargetGrants* grants, int agent, int enemy) {
  if (grants == nullptr || agent >= static_cast<int>(grants->size())) return false;
  const auto& ids = (*grants)[static_cast<std::size_t>(agent)];
  return std::binary_search(ids.begin(), ids.end(), enemy);
}

std::string mask_text(const ActionMask& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.actions.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(m.actions[i]);
  }
  return s + "]";
}

struct Damage {
  double removed_from_shield = 0.0;
  double removed_from_health = 0.0;
};

/// Shield absorbs first. Returns the hitpoints actually removed.
double apply_damage(UnitState& u, const UnitType& t, double hp) {
  double removed = 0.0;
  if (u.shield > 0.0 && t.max_shield > 0.0) {
    const double shield_hp = u.shield * t.max_shield;
    if (hp >= shield_hp) {
      u.shield = 0.0;
      removed += shield_hp;
      hp -= shield_hp;
    } else {
      u.shield -= hp / t.max_shield;
      removed += hp;
      hp = 0.0;
    }
  }
  if (hp > 0.0 && u.health > 0.0) {
    const double health_hp = u.health * t.max_health;
    if (hp >= health_hp) {
      u.health = 0.0;
      removed += health_hp;
    } else {
      u.health -= hp / t.max_health;
      removed += hp;
    }
  }
  return removed;
}

}  // namespace

WorldState spawn_scenario(const ScenarioSpec& spec, std::uint64_t seed) {
  validate(spec);
  Rng rng(mix_seed(seed, 0x5ca1ab1e));
  WorldState w;
  w.spec = std::make_shared<const ScenarioSpec>(spec);
  for (int i = 0; i < spec.n_allies; ++i) {
    w.allies.push_back(make_unit(spec, i, Team::kAlly, sample_kind(spec.ally_mix, rng), spec.ally_spawn, rng));
  }
  for (int i = 0; i < spec.n_enemies; ++i) {
    const UnitKind kind = spec.mirror_enemy_types && i < spec.n_allies ? w.allies[static_cast<std::size_t>(i)].kind
                                                                       : sample_kind(spec.enemy_mix, rng);
    w.enemies.push_back(make_unit(spec, i, Team::kEnemy, kind, spec.enemy_spawn, rng));
  }
  w.spotter.assign(w.enemies.size(), -1);
  update_spotters(w);
  return w;
}

bool ally_sees_enemy(const WorldState& w, int agent, int enemy) {
  const auto& a = w.allies.at(static_cast<std::size_t>(agent));
  const auto& e = w.enemies.at(static_cast<std::size_t>(enemy));
  if (!a.alive || !e.alive) return false;
  if (sight_fraction(w, a, e) >= 1.0) return false;
  return !w.spec->first_spotter_only || w.spotter[static_cast<std::size_t>(enemy)] == agent;
}

ActionMask available_actions(const WorldState& w, Team team, int agent, const TargetGrants* grants) {
  ActionMask mask;
  const auto& self = w.team(team).at(static_cast<std::size_t>(agent));
  if (!self.alive) {
    mask.actions = {action::kNoOp};
    return mask;
  }
  const UnitType& type = w.type_of(self);
  mask.actions.push_back(action::kStop);
  for (Direction d : kDirections) {
    if (in_map(self.pos + direction_vector(d) * type.move_speed)) mask.actions.push_back(move_action(d));
  }
  if (type.is_healer) {
    for (const auto& other : w.team(team)) {
      if (other.id == self.id || !other.alive) continue;
      if (sight_fraction(w, self, other) < 1.0 && in_shoot_range(w, self, other)) {
        mask.actions.push_back(action::target(other.id));
      }
    }
    return mask;
  }
  for (const auto& target : w.team(opponent(team))) {
    if (!target.alive || !in_shoot_range(w, self, target)) continue;
    // The scripted enemy team has full observability.
    const bool known = team == Team::kEnemy || ally_sees_enemy(w, agent, target.id) || granted(grants, agent, target.id);
    if (known) mask.actions.push_back(action::target(target.id));
  }
  return mask;
}

ObsData observe(const WorldState& w, int agent, const TargetGrants* grants) {
  const auto& self = w.allies.at(static_cast<std::size_t>(agent));
  ObsData obs;
  obs.agent_id = agent;
  obs.own_unit_type = std::string(w.type_of(self).name());
  if (!self.alive) {
    obs.alive = false;
    obs.available_actions = {action::kNoOp};
    return obs;
  }
  const UnitType& type = w.type_of(self);
  const ActionMask mask = available_actions(w, Team::kAlly, agent, grants);
  obs.own_position = self.pos / kMapSize;
  obs.own_health = self.health;
  obs.own_shield = self.shield;
  obs.own_sight_range = type.sight_range;
  obs.own_shoot_range = type.shoot_range;
  for (Direction d : kDirections) obs.can_move[static_cast<std::size_t>(d)] = mask.contains(move_action(d));
  obs.last_action = self.last_action;
  obs.available_actions = mask.actions;

  auto view = [&](const UnitState& other, bool is_ally) {
    EntityView v;
    v.is_ally = is_ally;
    v.id = other.id;
    v.unit_type = std::string(w.type_of(other).name());
    v.position = (other.pos - self.pos) / type.sight_range;
    v.distance = v.position.norm();
    v.health = other.health;
    v.shield = other.shield;
    v.can_attack = (is_ally ? type.is_healer : !type.is_healer) && mask.contains(action::target(other.id));
    v.last_action = is_ally ? other.last_action : 0;
    return v;
  };
  for (const auto& other : w.allies) {
    if (other.id == self.id || !other.alive) continue;
    if (sight_fraction(w, self, other) < 1.0) obs.allies.push_back(view(other, true));
  }
  for (const auto& e : w.enemies) {
    if (ally_sees_enemy(w, agent, e.id)) obs.enemies.push_back(view(e, false));
  }
  return obs;
}

double dense_reward_scale(const WorldState& w) {
  double max_reward = kWinBonus;
  for (const auto& e : w.enemies) {
    const UnitType& t = w.type_of(e);
    max_reward += t.max_health + t.max_shield + kKillBonus;
  }
  return max_reward / kDenseRewardTarget;
}

StepResult step(const WorldState& w, const JointAction& joint, const TargetGrants* grants) {
  if (joint.allies.size() != w.allies.size() || joint.enemies.size() != w.enemies.size()) {
    throw ActionRejected("joint action size mismatch: expected " + std::to_string(w.allies.size()) + " ally and " +
                         std::to_string(w.enemies.size()) + " enemy actions");
  }
  for (Team team : {Team::kAlly, Team::kEnemy}) {
    const auto& acts = team == Team::kAlly ? joint.allies : joint.enemies;
    for (std::size_t i = 0; i < acts.size(); ++i) {
      const ActionMask mask = available_actions(w, team, static_cast<int>(i), team == Team::kAlly ? grants : nullptr);
      if (!mask.contains(acts[i])) {
        throw ActionRejected(std::string(to_string(team)) + " agent " + std::to_string(i) + ": action " +
                             std::to_string(acts[i]) + " not available (mask " + mask_text(mask) + ")");
      }
    }
  }

  StepResult result;
  WorldState& next = result.next;
  next = w;

  for (auto* units : {&next.allies, &next.enemies}) {
    for (auto& u : *units) {
      if (u.alive && u.cooldown > 0) --u.cooldown;
    }
  }

  // (1) Moves, simultaneous; overlap is allowed.
  for (Team team : {Team::kAlly, Team::kEnemy}) {
    const auto& acts = team == Team::kAlly ? joint.allies : joint.enemies;
    auto& units = next.team(team);
    for (std::size_t i = 0; i < units.size(); ++i) {
      if (action::is_move(acts[i])) {
        const auto dir = static_cast<Direction>(acts[i] - action::kNorth);
        units[i].pos = units[i].pos + direction_vector(dir) * next.type_of(units[i]).move_speed;
      }
    }
  }

  // (2) Attacks and heals, resolved against the pre-move snapshot `w`.
  std::vector<double> damage_to[2] = {std::vector<double>(w.allies.size(), 0.0),
                                      std::vector<double>(w.enemies.size(), 0.0)};
  std::vector<double> heal_to[2] = {std::vector<double>(w.allies.size(), 0.0),
                                    std::vector<double>(w.enemies.size(), 0.0)};
  std::vector<std::pair<Team, std::size_t>> detonated;
  for (Team team : {Team::kAlly, Team::kEnemy}) {
    const auto& acts = team == Team::kAlly ? joint.allies : joint.enemies;
    const Team opp = opponent(team);
    for (std::size_t i = 0; i < acts.size(); ++i) {
      if (!action::is_target(acts[i])) continue;
      UnitState& shooter = next.team(team)[i];
      if (shooter.cooldown > 0) continue;
      const UnitType& type = next.type_of(shooter);
      const auto target = static_cast<std::size_t>(action::target_index(acts[i]));
      if (type.is_healer) {
        heal_to[static_cast<int>(team)][target] += type.heal_per_hit;
      } else if (type.is_suicide_aoe) {
        const UnitState& origin = w.team(team)[i];
        const double radius = 0.3 * type.sight_range;
        for (const auto& victim : w.team(opp)) {
          if (victim.alive && distance(origin.pos, victim.pos) <= radius) {
            damage_to[static_cast<int>(opp)][static_cast<std::size_t>(victim.id)] += type.damage_per_hit;
          }
        }
        detonated.emplace_back(team, i);
      } else {
        damage_to[static_cast<int>(opp)][target] += type.damage_per_hit;
      }
      shooter.cooldown = type.attack_cooldown;
    }
  }

  double removed[2] = {0.0, 0.0};
  for (Team team : {Team::kAlly, Team::kEnemy}) {
    auto& units = next.team(team);
    const int t = static_cast<int>(team);
    for (std::size_t i = 0; i < units.size(); ++i) {
      if (damage_to[t][i] > 0.0 && units[i].alive) {
        removed[t] += apply_damage(units[i], next.type_of(units[i]), damage_to[t][i]);
      }
    }
  }
  for (const auto& [team, i] : detonated) {
    UnitState& u = next.team(team)[i];
    const UnitType& type = next.type_of(u);
    removed[static_cast<int>(team)] += u.health * type.max_health + u.shield * type.max_shield;
    u.health = 0.0;
    u.shield = 0.0;
  }
  for (Team team : {Team::kAlly, Team::kEnemy}) {
    auto& units = next.team(team);
    const int t = static_cast<int>(team);
    for (std::size_t i = 0; i < units.size(); ++i) {
      if (heal_to[t][i] > 0.0 && units[i].health > 0.0) {
        units[i].health = std::min(1.0, units[i].health + heal_to[t][i] / next.type_of(units[i]).max_health);
      }
    }
  }

  // (3) Deaths.
  for (Team team : {Team::kAlly, Team::kEnemy}) {
    const auto& acts = team == Team::kAlly ? joint.allies : joint.enemies;
    auto& units = next.team(team);
    for (std::size_t i = 0; i < units.size(); ++i) {
      auto& u = units[i];
      u.last_action = acts[i];
      if (u.alive && u.health <= 0.0) {
        u.alive = false;
        u.health = 0.0;
        u.shield = 0.0;
        u.cooldown = 0;
        if (team == Team::kAlly) ++result.info.allies_lost;
        else ++result.info.enemies_killed;
      }
    }
  }
  update_spotters(next);

  // (4) Reward; (5) termination.
  const int allies_alive = next.alive_count(Team::kAlly);
  const int enemies_alive = next.alive_count(Team::kEnemy);
  result.info.win = enemies_alive == 0 && allies_alive > 0;
  result.info.damage_dealt = removed[static_cast<int>(Team::kEnemy)];
  result.info.damage_taken = removed[static_cast<int>(Team::kAlly)];
  if (w.spec->reward_mode == RewardMode::kSparse) {
    result.reward = result.info.win ? 1.0 : 0.0;
  } else {
    const double raw = result.info.damage_dealt + kKillBonus * result.info.enemies_killed +
                       (result.info.win ? kWinBonus : 0.0);
    result.reward = raw / dense_reward_scale(w);
  }
  next.timestep = w.timestep + 1;
  result.done = allies_alive == 0 || enemies_alive == 0 || next.timestep >= w.spec->episode_limit;
  return result;
}

}  // namespace skirmish
