#include "skirmish/skills/tactics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "skirmish/skills/pathfinding.hpp"
#include "skirmish/world/scenario.hpp"

namespace skirmish {

const PriorityTable& expert_priorities() {
  static const PriorityTable table = {
      {"colossus", 35.0}, {"stalker", 30.0},  {"zealot", 45.0},    {"marine", 45.0},   {"marauder", 35.0},
      {"medivac", 30.0},  {"hydralisk", 30.0}, {"zergling", 35.0}, {"baneling", 45.0},
  };
  return table;
}

const CounterTable& expert_counters() {
  static const CounterTable table = [] {
    const std::map<std::string, double> protoss = {{"colossus", 1.2}, {"stalker", 1.0}, {"zealot", 1.5}};
    const std::map<std::string, double> terran = {{"marine", 1.5}, {"medivac", 1.0}, {"marauder", 1.2}};
    return CounterTable{
        {"colossus", protoss},
        {"stalker", protoss},
        {"zealot", protoss},
        {"marine", terran},
        {"marauder", terran},
        {"medivac", terran},
        {"hydralisk", {{"hydralisk", 1.0}, {"zergling", 1.2}, {"baneling", 1.5}}},
        {"zergling", {{"hydralisk", 1.2}, {"zergling", 1.5}, {"baneling", 1.0}}},
        {"baneling", {{"hydralisk", 1.2}, {"zergling", 1.5}, {"baneling", 1.0}}},
    };
  }();
  return table;
}

const char* const kExpertScoreExpr =
    "if unit.health <= 0 then -1\n"
    "else if unit.is_ally then\n"
    "  priority(unit) * matchup(self, unit) * (2 - unit.health) * max(2 - unit.distance, 0.5)\n"
    "else\n"
    "  priority(unit) * matchup(self, unit) * max(2 - unit.distance, 0.5) * ranged_ally_factor(unit)\n"
    "  * (if unit.id == self.last_action - 6 then $persistence else 1)\n"
    "  * (if allies_attacking(unit) >= 3 and unit.id != self.last_action - 6\n"
    "        and (self.type == \"zergling\" or self.type == \"baneling\")\n"
    "     then $overcommit else $focus_base ^ allies_attacking(unit))\n"
    "  * (2 - unit.health)";

ObsData tactical_view(const ObsData& obs, const Knowledge& knowledge) {
  ObsData view = obs;
  if (!obs.alive) return view;
  const Vec2 self = obs.own_position * kMapSize;
  const bool healer = obs.own_unit_type == "medivac";
  for (const auto& [key, r] : knowledge) {
    if (key.team != Team::kEnemy) continue;
    const bool shown = std::any_of(obs.enemies.begin(), obs.enemies.end(), [&](const EntityView& e) { return e.id == key.id; });
    if (shown) continue;
    EntityView e;
    e.is_ally = false;
    e.id = key.id;
    e.unit_type = r.unit_type;
    e.position = (r.global_pos - self) / obs.own_sight_range;
    e.distance = e.position.norm();
    e.health = r.health;
    e.shield = r.shield;
    e.can_attack = !healer && obs.has_action(action::target(key.id));
    view.enemies.push_back(std::move(e));
  }
  std::sort(view.enemies.begin(), view.enemies.end(), [](const EntityView& a, const EntityView& b) { return a.id < b.id; });
  return view;
}

namespace {

constexpr double kPi = std::numbers::pi;

struct Power {
  double power = 0.0;
  int melee = 0;
  int ranged = 0;
};

Power combat_power(const std::vector<EntityView>& units, Vec2 around) {
  constexpr double kRadius = 0.5;
  Power out;
  double total = 0.0;
  for (const auto& u : units) {
    const double dist = (u.position - around).norm();
    if (dist > kRadius) continue;
    double base = priority_of(expert_priorities(), u.unit_type);
    if (is_melee_type(u.unit_type)) {
      ++out.melee;
      if (out.melee >= 2) base *= 1.4;
    } else {
      ++out.ranged;
      base *= 1.3;
    }
    const double health_factor = u.health > 0.7 ? 1.5 : u.health > 0.4 ? 1.0 : 0.6;
    const double position_factor = 1.3 - dist / kRadius;
    total += base * health_factor * position_factor;
  }
  double cohesion = 0.0;
  if (units.size() > 2) {
    Vec2 center;
    for (const auto& u : units) center = center + u.position;
    center = center / static_cast<double>(units.size());
    double avg = 0.0;
    for (const auto& u : units) avg += (u.position - center).norm();
    avg /= static_cast<double>(units.size());
    cohesion = 2.0 / (1.0 + avg / 0.3);
  }
  out.power = total * (1.0 + cohesion);
  return out;
}

double param(const Skill& s, const char* name, double fallback) {
  auto it = s.params.find(name);
  return it == s.params.end() ? fallback : it->second;
}

Vec2 centroid(const std::vector<const EntityView*>& units) {
  Vec2 sum;
  for (const auto* u : units) sum = sum + u->position;
  return sum / static_cast<double>(units.size());
}

std::vector<const EntityView*> all_of(const std::vector<EntityView>& units) {
  std::vector<const EntityView*> out;
  for (const auto& u : units) out.push_back(&u);
  return out;
}

std::vector<const EntityView*> melee_of(const std::vector<EntityView>& units) {
  std::vector<const EntityView*> out;
  for (const auto& u : units) {
    if (is_melee_type(u.unit_type)) out.push_back(&u);
  }
  return out;
}

std::vector<const EntityView*> in_sight(const std::vector<EntityView>& units) {
  std::vector<const EntityView*> out;
  for (const auto& u : units) {
    if (u.distance < 1.0) out.push_back(&u);
  }
  return out;
}

std::vector<int> attack_actions(const ObsData& o) {
  std::vector<int> out;
  for (int a : o.available_actions) {
    if (action::is_target(a)) out.push_back(a);
  }
  return out;
}

bool contains(const std::vector<int>& v, int a) { return std::find(v.begin(), v.end(), a) != v.end(); }

double sign_step(double d, double amount) { return d != 0.0 ? (d / std::fabs(d)) * amount : 0.0; }

/// True when the bearings of a and b differ by more than `gate` either way.
bool bearing_gate(Vec2 a, Vec2 b, double gate) {
  const double diff = std::fabs(std::atan2(a.y, a.x) - std::atan2(b.y, b.x));
  return gate < diff && diff < 2.0 * kPi - gate;
}

/// First element with the minimum distance.
const EntityView* nearest(const std::vector<const EntityView*>& units) {
  const EntityView* best = nullptr;
  for (const auto* u : units) {
    if (best == nullptr || u->distance < best->distance) best = u;
  }
  return best;
}

int choose(const std::vector<int>& options, Rng* rng) {
  if (rng == nullptr) return options.front();
  return options[rng->below(options.size())];
}

class Runner {
 public:
  Runner(const Skill& skill, const SkillContext& ctx, EvalDiagnostics* diag)
      : skill_(skill), ctx_(ctx), o_(ctx.view), diag_(diag) {}

  std::optional<int> path(Vec2 to, std::string_view target_type = {}) const {
    return find_path(o_, to.x, to.y, target_type, ctx_.catalog);
  }

  double score(const EntityView& u) const { return target_score(skill_, u, ctx_, diag_); }

  std::optional<int> medivac_support() const {
    const auto attacks = attack_actions(o_);
    const double sight = o_.own_sight_range;
    if (!o_.allies.empty()) {
      const auto allies = all_of(o_.allies);
      const EntityView* lowest = allies.front();
      for (const auto* a : allies) {
        if (a->health < lowest->health) lowest = a;
      }
      if (!o_.enemies.empty()) {
        const auto enemies_in_range = in_sight(o_.enemies);
        const auto melee_allies = melee_of(o_.allies);
        const Vec2 ally = melee_allies.empty() ? centroid(allies) : centroid(melee_allies);
        const Vec2 enemy_center = enemies_in_range.empty() ? centroid(all_of(o_.enemies)) : centroid(enemies_in_range);
        const Vec2 d = ally - enemy_center;
        const double offset = param(skill_, "kite_offset", 2.0) / sight;
        const Vec2 safe{ally.x + sign_step(d.x, offset), ally.y + sign_step(d.y, offset)};
        const double distance = safe.norm();
        const double criterion = param(skill_, "standoff", 5.0) / sight;
        if (o_.last_action >= action::kFirstTarget || attacks.empty()) {
          if (distance > criterion && bearing_gate(enemy_center, ally, param(skill_, "bearing_gate", kPi / 9))) {
            if (auto p = path(safe)) return p;
          }
        }
      }
      std::vector<double> scores;
      for (const auto* a : allies) scores.push_back(score(*a));
      const double best_score = *std::max_element(scores.begin(), scores.end());
      std::vector<const EntityView*> best_targets;
      for (std::size_t i = 0; i < allies.size(); ++i) {
        if (scores[i] == best_score) best_targets.push_back(allies[i]);
      }
      const EntityView* best = best_targets.size() > 1 ? nearest(best_targets) : best_targets.front();
      const EntityView* closest = nearest(allies);
      const double threshold = param(skill_, "heal_threshold", 0.9);
      for (const EntityView* candidate : {best, closest, lowest}) {
        if (o_.has_action(action::target(candidate->id)) && candidate->health > 0.0 && candidate->health < threshold) {
          return action::target(candidate->id);
        }
      }
      if (auto p = path(best->position, best->unit_type)) return p;
    } else if (!o_.enemies.empty()) {
      return flee();
    }
    return std::nullopt;
  }

  std::optional<int> melee_engage(bool baneling) const {
    const double sight = o_.own_sight_range;
    if (!o_.enemies.empty()) {
      const auto enemies_in_range = in_sight(o_.enemies);
      const auto attacks = attack_actions(o_);
      const Vec2 enemy_center = enemies_in_range.empty() ? centroid(all_of(o_.enemies)) : centroid(enemies_in_range);
      if (!o_.allies.empty()) {
        const auto melee_allies = melee_of(o_.allies);
        if (!melee_allies.empty()) {
          const Vec2 ally = centroid(melee_allies) / 2.0;
          const Vec2 safe = ally;
          const double distance = safe.norm();
          const double criterion = param(skill_, "regroup_criterion", 2.0) / sight;
          const double regroup = param(skill_, "regroup_distance", 0.5);
          if (attacks.empty() || distance > regroup) {
            const bool gated = bearing_gate(enemy_center, ally, param(skill_, "bearing_gate", kPi / 9));
            if (distance > criterion && (gated || distance > regroup)) {
              if (auto p = path(safe)) return p;
            }
          }
        }
      }
      const double radius = param(skill_, "cluster_radius", baneling ? 0.3 : 0.2);
      const double base = param(skill_, "cluster_base", baneling ? 1.5 : 1.2);
      std::vector<double> scores;
      for (const auto& e : o_.enemies) {
        int cluster = 0;
        for (const auto& other : o_.enemies) {
          if ((other.position - e.position).norm() <= radius) ++cluster;
        }
        scores.push_back(score(e) + std::pow(base, cluster));
      }
      const double best_score = *std::max_element(scores.begin(), scores.end());
      std::vector<const EntityView*> best_targets;
      for (std::size_t i = 0; i < o_.enemies.size(); ++i) {
        if (scores[i] >= best_score) best_targets.push_back(&o_.enemies[i]);
      }
      const EntityView* best = best_targets.size() > 1 ? nearest(best_targets) : best_targets.front();
      if (best->can_attack) return action::target(best->id);
      if (auto p = path(best->position, best->unit_type)) return p;
      if (!attacks.empty()) return attack_fallback(attacks);
    } else if (!o_.allies.empty()) {
      const auto melee_allies = melee_of(o_.allies);
      if (!melee_allies.empty()) {
        const double spacing = param(skill_, "spacing", baneling ? 0.1 : 0.05);
        const Vec2 center = centroid(melee_allies);
        double max_spread = 0.0;
        for (const auto* a : melee_allies) max_spread = std::max(max_spread, (a->position - center).norm());
        if (center.norm() > spacing || max_spread > 0.1) {
          if (auto p = path(center * 0.85)) return p;
        }
      } else {
        const Vec2 ally = centroid(all_of(o_.allies));
        if (ally.norm() > 0.05) {
          if (auto p = path(ally)) return p;
        }
      }
    }
    return std::nullopt;
  }

  std::optional<int> ranged_kite() const {
    const auto attacks = attack_actions(o_);
    const double sight = o_.own_sight_range;
    const double gate = param(skill_, "bearing_gate", kPi / 9);
    if (!o_.enemies.empty()) {
      const auto enemies_in_range = in_sight(o_.enemies);
      const Vec2 enemy_center = enemies_in_range.empty() ? centroid(all_of(o_.enemies)) : centroid(enemies_in_range);
      if (!o_.allies.empty()) {
        const auto melee_allies = melee_of(o_.allies);
        std::vector<const EntityView*> melee_enemies;
        for (const auto* e : enemies_in_range) {
          if (is_melee_type(e->unit_type)) melee_enemies.push_back(e);
        }
        const Vec2 ally = melee_allies.empty() ? centroid(all_of(o_.allies)) / 2.0 : centroid(melee_allies);
        Vec2 d = ally - enemy_center;
        Vec2 safe = ally;
        if (!melee_allies.empty()) {
          const double offset = param(skill_, "kite_offset", 2.0) / sight;
          safe = {safe.x + sign_step(d.x, offset), safe.y + sign_step(d.y, offset)};
        }
        bool threatened = false;
        if (!melee_enemies.empty()) {
          const EntityView* closest = nearest(melee_enemies);
          if (closest->distance <= param(skill_, "threat_radius", 4.0) / sight) {
            threatened = true;
            d = safe - closest->position;
            const double offset = param(skill_, "threat_offset", 1.0) / sight;
            safe = {safe.x + sign_step(d.x, offset), safe.y + sign_step(d.y, offset)};
          }
        }
        const double distance = safe.norm();
        const double criterion = param(skill_, "threat_radius", 4.0) / sight;
        const double reposition = param(skill_, "reposition_distance", 0.9);
        if (o_.last_action >= action::kFirstTarget || attacks.empty() || distance > reposition) {
          if (distance > criterion && (bearing_gate(enemy_center, ally, gate) || threatened || distance > reposition)) {
            if (auto p = path(safe)) return p;
          }
        }
        std::map<int, int> target_counts;
        for (const auto& a : o_.allies) {
          if (a.last_action >= action::kFirstTarget) ++target_counts[action::target_index(a.last_action)];
        }
        const double focus_add = param(skill_, "focus_add", 0.5);
        const double penalty = param(skill_, "safe_penalty", 0.3);
        const EntityView* best = nullptr;
        double best_score = 0.0;
        for (const auto& e : o_.enemies) {
          double s = score(e);
          if (auto it = target_counts.find(e.id); it != target_counts.end()) s += it->second * focus_add;
          s *= 1.0 - (e.position - safe).norm() * penalty;
          if (best == nullptr || s > best_score) {
            best = &e;
            best_score = s;
          }
        }
        if (best->can_attack) return action::target(best->id);
        const double diff = std::fabs(std::atan2(best->position.y, best->position.x) - std::atan2(ally.y, ally.x));
        if (diff < gate || diff > 2.0 * kPi - gate || melee_allies.empty()) {
          if (best->distance > o_.own_shoot_range / sight) {
            if (auto p = path(best->position, best->unit_type)) return p;
          }
        }
        if (!attacks.empty()) return attack_fallback(attacks);
        if (distance > criterion) {
          if (auto p = path(safe)) return p;
        }
      } else {
        const EntityView* closest = nearest(all_of(o_.enemies));
        if (is_melee_type(closest->unit_type)) {
          if (closest->distance <= param(skill_, "threat_radius", 4.0) / sight &&
              o_.last_action >= action::kFirstTarget) {
            if (auto p = flee()) return p;
          }
          if (closest->can_attack) return action::target(closest->id);
        } else {
          const EntityView* best = best_scored(o_.enemies);
          if (best->can_attack) return action::target(best->id);
          if (best->distance > o_.own_shoot_range / sight) {
            if (auto p = path(best->position, best->unit_type)) return p;
            if (!attacks.empty()) return attack_fallback(attacks);
          }
        }
      }
    } else if (!o_.allies.empty()) {
      const auto melee_allies = melee_of(o_.allies);
      const Vec2 to = melee_allies.empty() ? centroid(all_of(o_.allies)) : centroid(melee_allies);
      if (to.norm() > 0.05) {
        if (auto p = path(to)) return p;
      }
    }
    return std::nullopt;
  }

  std::optional<int> default_center() const {
    if (auto p = region_of_interest()) return p;
    const Vec2 center = (Vec2{0.5, 0.5} - o_.own_position) * kMapSize / o_.own_sight_range;
    if (auto p = path(center)) return p;
    return choose(o_.available_actions, ctx_.rng);
  }

 private:
  /// Heads away from the enemy centroid, or to the map centre when that
  /// point is off the map.
  std::optional<int> flee() const {
    const Vec2 enemy = centroid(all_of(o_.enemies));
    Vec2 target = enemy * -1.0;
    const Vec2 g = target * o_.own_sight_range + o_.own_position * kMapSize;
    if (!(g.x >= 0 && g.x <= kMapSize && g.y >= 0 && g.y <= kMapSize)) {
      target = (Vec2{0.5, 0.5} - o_.own_position) * kMapSize / o_.own_sight_range;
    }
    return path(target);
  }

  int attack_fallback(const std::vector<int>& attacks) const {
    if (contains(attacks, o_.last_action)) return o_.last_action;
    std::vector<const EntityView*> attackable;
    for (const auto& e : o_.enemies) {
      if (e.can_attack) attackable.push_back(&e);
    }
    if (const EntityView* closest = nearest(attackable)) return action::target(closest->id);
    return choose(attacks, ctx_.rng);
  }

  const EntityView* best_scored(const std::vector<EntityView>& units) const {
    std::vector<double> scores;
    for (const auto& u : units) scores.push_back(score(u));
    const double best_score = *std::max_element(scores.begin(), scores.end());
    std::vector<const EntityView*> best;
    for (std::size_t i = 0; i < units.size(); ++i) {
      if (scores[i] == best_score) best.push_back(&units[i]);
    }
    return best.size() > 1 ? nearest(best) : best.front();
  }

  std::optional<int> region_of_interest() const {
    const std::string& roi = ctx_.region_of_interest;
    if (roi.empty()) return std::nullopt;
    for (bool ally : {false, true}) {
      const std::string prefix = ally ? "Ally #" : "Enemy #";
      if (roi.rfind(prefix, 0) != 0) continue;
      const int id = std::atoi(roi.c_str() + prefix.size());
      for (const auto& e : ally ? o_.allies : o_.enemies) {
        if (e.id != id) continue;
        if (!ally && e.can_attack) return action::target(id);
        return path(e.position, e.unit_type);
      }
      return std::nullopt;
    }
    static const std::pair<const char*, Vec2> kBearings[] = {
        {"North", {0, 1}},      {"South", {0, -1}},      {"East", {1, 0}},       {"West", {-1, 0}},
        {"Northeast", {1, 1}},  {"Northwest", {-1, 1}},  {"Southeast", {1, -1}}, {"Southwest", {-1, -1}},
    };
    const std::string loc_prefix = "Location: ";
    if (roi.rfind(loc_prefix, 0) != 0) return std::nullopt;
    const std::string where = roi.substr(loc_prefix.size());
    for (const auto& [name, dir] : kBearings) {
      if (where == name) return path(dir / dir.norm());
    }
    return std::nullopt;
  }

  const Skill& skill_;
  const SkillContext& ctx_;
  const ObsData& o_;
  EvalDiagnostics* diag_;
};

}  // namespace

double advantage_factor(const EntityView& unit, const ObsData& view) {
  const Power allies = combat_power(view.allies, unit.position);
  const Power enemies = combat_power(view.enemies, unit.position);
  double factor = 1.0;
  if (allies.power > enemies.power * 1.3) {
    factor = 1.2;
    if (allies.melee >= 3) factor *= 1.2;
  }
  if (enemies.melee + enemies.ranged == 1) {
    factor *= 2.0;
  } else if (allies.melee + allies.ranged > enemies.melee + enemies.ranged) {
    factor *= 1.2;
  }
  return factor;
}

double target_score(const Skill& skill, const EntityView& unit, const SkillContext& ctx, EvalDiagnostics* diag) {
  TacticContext tc;
  tc.obs = &ctx.view;
  tc.priorities = &expert_priorities();
  tc.counters = &expert_counters();
  tc.params = &skill.params;
  const double s = eval_score(skill.score_expr, unit, tc, diag);
  if (unit.is_ally || unit.health <= 0.0) return s;
  return s * advantage_factor(unit, ctx.view);
}

std::optional<int> run_template(ControlTemplate tmpl, const Skill& skill, const SkillContext& ctx,
                                EvalDiagnostics* diag) {
  const Runner r(skill, ctx, diag);
  switch (tmpl) {
    case ControlTemplate::kMedivacSupport:
      return r.medivac_support();
    case ControlTemplate::kMeleeEngage:
      return r.melee_engage(false);
    case ControlTemplate::kBanelingAoe:
      return r.melee_engage(true);
    case ControlTemplate::kRangedKite:
      return r.ranged_kite();
    case ControlTemplate::kDefaultCenter:
      return r.default_center();
  }
  return std::nullopt;
}

int execute_skill(const Skill& skill, const SkillContext& ctx, EvalDiagnostics* diag) {
  const ObsData& o = ctx.view;
  if (o.available_actions.empty()) return action::kNoOp;
  if (o.has_action(action::kNoOp)) return action::kNoOp;
  if (auto a = run_template(skill.control_template, skill, ctx, diag); a && o.has_action(*a)) return *a;
  if (auto a = run_template(ControlTemplate::kDefaultCenter, skill, ctx, diag); a && o.has_action(*a)) return *a;
  return choose(o.available_actions, ctx.rng);
}

std::vector<ControlTemplate> templates_for(std::string_view unit_type) {
  std::vector<ControlTemplate> out;
  if (unit_type == "medivac") {
    out.push_back(ControlTemplate::kMedivacSupport);
  } else if (unit_type == "baneling") {
    out.push_back(ControlTemplate::kBanelingAoe);
    out.push_back(ControlTemplate::kMeleeEngage);
  } else if (is_melee_type(unit_type)) {
    out.push_back(ControlTemplate::kMeleeEngage);
  } else {
    out.push_back(ControlTemplate::kRangedKite);
  }
  out.push_back(ControlTemplate::kDefaultCenter);
  return out;
}

SkillLibrary bootstrap_library() {
  const ParamMap score = {{"focus_base", 1.2}, {"persistence", 2.0}, {"overcommit", 0.5}};
  auto with = [&](ParamMap extra) {
    ParamMap p = score;
    p.insert(extra.begin(), extra.end());
    return p;
  };
  SkillLibrary lib;
  lib.add(make_skill("medivac_support",
                     "Medivac healer support. Heal the wounded ally with the best score while its health is under "
                     "the heal threshold, keep a standoff from the enemy centroid behind the melee allies, and flee "
                     "away from enemies when no ally is nearby.",
                     kExpertScoreExpr, ControlTemplate::kMedivacSupport,
                     with({{"kite_offset", 2.0}, {"standoff", 5.0}, {"heal_threshold", 0.9}, {"bearing_gate", kPi / 9}})));
  lib.add(make_skill("melee_engage",
                     "Melee engage for zealot and zergling. Regroup with melee allies, rank enemies by threat plus a "
                     "cluster bonus, charge the best target with A* pursuit and keep hitting the last target.",
                     kExpertScoreExpr, ControlTemplate::kMeleeEngage,
                     with({{"cluster_radius", 0.2},
                           {"cluster_base", 1.2},
                           {"regroup_distance", 0.5},
                           {"regroup_criterion", 2.0},
                           {"spacing", 0.05},
                           {"bearing_gate", kPi / 9}})));
  lib.add(make_skill("ranged_kite",
                     "Ranged kiting and focus fire for stalker, colossus, hydralisk, marine and marauder. Retreat to "
                     "a safe point behind melee allies when a melee threat closes in, concentrate fire on targets "
                     "other allies already shoot, and fight at maximum range.",
                     kExpertScoreExpr, ControlTemplate::kRangedKite,
                     with({{"kite_offset", 2.0},
                           {"threat_radius", 4.0},
                           {"threat_offset", 1.0},
                           {"reposition_distance", 0.9},
                           {"focus_add", 0.5},
                           {"safe_penalty", 0.3},
                           {"bearing_gate", kPi / 9}})));
  lib.add(make_skill("baneling_aoe",
                     "Baneling splash detonation. Seek the densest enemy cluster with a wide cluster radius and a "
                     "strong cluster multiplier, roll in and explode for area damage.",
                     kExpertScoreExpr, ControlTemplate::kBanelingAoe,
                     with({{"cluster_radius", 0.3},
                           {"cluster_base", 1.5},
                           {"regroup_distance", 0.5},
                           {"regroup_criterion", 2.0},
                           {"spacing", 0.1},
                           {"bearing_gate", kPi / 9}})));
  lib.add(make_skill("default_center",
                     "Default fallback movement. Head for the region of interest named by perception, otherwise "
                     "walk toward the map center, otherwise pick any available action at random.",
                     kExpertScoreExpr, ControlTemplate::kDefaultCenter, score));
  return lib;
}

}  // namespace skirmish
