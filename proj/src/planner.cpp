#include "skirmish/planner/planner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <regex>

#include "skirmish/obs/obs_text.hpp"
#include "skirmish/world/scenario.hpp"

namespace skirmish {

void LocalMemory::add(MemoryEntry e) {
  cumulative_reward_by_skill[e.skill_id] += e.reward;
  history.push_back(std::move(e));
  while (history.size() > history_limit) history.pop_front();
}

std::string bearing_name(Vec2 d) {
  static const char* kNames[] = {"East", "Northeast", "North", "Northwest", "West", "Southwest", "South", "Southeast"};
  if (d.norm() == 0.0) return "Center";
  const double sector = std::round(std::atan2(d.y, d.x) / (std::numbers::pi / 4));
  const int idx = ((static_cast<int>(sector) % 8) + 8) % 8;
  return kNames[idx];
}

const std::vector<DirectivePatch>& directive_cycle(ControlTemplate tmpl) {
  static const std::vector<DirectivePatch> ranged = {
      {"focus_base", 1.25, SynthesisTarget::kScoreTarget, "to concentrate fire on targets allies already shoot"},
      {"threat_radius", 1.5, SynthesisTarget::kControlLogic, "so shooters back off before melee units connect"},
      {"kite_offset", 0.5, SynthesisTarget::kControlLogic, "so retreats stay short and shooters keep firing"},
  };
  static const std::vector<DirectivePatch> melee = {
      {"focus_base", 1.25, SynthesisTarget::kScoreTarget, "to gang up on targets allies already hit"},
      {"persistence", 1.5, SynthesisTarget::kScoreTarget, "to stay on the chosen target"},
  };
  static const std::vector<DirectivePatch> baneling = {
      {"cluster_base", 1.2, SynthesisTarget::kControlLogic, "to favour dense enemy clusters for splash"},
      {"focus_base", 1.25, SynthesisTarget::kScoreTarget, "to follow the team's target"},
  };
  static const std::vector<DirectivePatch> medivac = {
      {"heal_threshold", 1.05, SynthesisTarget::kControlLogic, "to top up allies earlier"},
      {"standoff", 0.8, SynthesisTarget::kControlLogic, "to stay closer to the wounded"},
  };
  static const std::vector<DirectivePatch> center = {
      {"focus_base", 1.25, SynthesisTarget::kScoreTarget, "to concentrate fire"},
  };
  switch (tmpl) {
    case ControlTemplate::kRangedKite:
      return ranged;
    case ControlTemplate::kMeleeEngage:
      return melee;
    case ControlTemplate::kBanelingAoe:
      return baneling;
    case ControlTemplate::kMedivacSupport:
      return medivac;
    case ControlTemplate::kDefaultCenter:
      return center;
  }
  return center;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string directive_text(const DirectivePatch& p, double from) {
  const std::string change = p.param + " from " + fmt(from) + " to " + fmt(from * p.factor);
  if (p.target == SynthesisTarget::kScoreTarget) return "Adjust " + change + " " + p.rationale;
  return "Implement tighter control " + p.rationale + ": change " + change;
}

SituationReport MockBackend::perceive(const PhaseContext& ctx) {
  SituationReport r;
  const ObsData& o = *ctx.obs;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu allies and %zu enemies in sight; health %.2f, shield %.2f", o.allies.size(),
                o.enemies.size(), o.own_health, o.own_shield);
  r.game_situation = buf;
  if (!o.enemies.empty()) {
    const EntityView* nearest = &o.enemies.front();
    for (const auto& e : o.enemies) {
      if (e.distance < nearest->distance) nearest = &e;
    }
    r.region_of_interest = "Enemy #" + std::to_string(nearest->id);
    return r;
  }
  const EntityRecord* freshest = nullptr;
  if (ctx.knowledge != nullptr) {
    for (const auto& [key, rec] : *ctx.knowledge) {
      if (key.team != Team::kEnemy) continue;
      if (freshest == nullptr || rec.observed_at > freshest->observed_at ||
          (rec.observed_at == freshest->observed_at && rec.hops < freshest->hops)) {
        freshest = &rec;
      }
    }
  }
  if (freshest != nullptr) {
    r.region_of_interest = "Location: " + bearing_name(freshest->global_pos - o.own_position * kMapSize);
    return r;
  }
  r.region_of_interest = "Location: Center";
  return r;
}

ReflectionReport MockBackend::reflect(const PhaseContext&, const PreviousResult& prev) {
  ReflectionReport r;
  r.skill_reward = prev.skill_reward;
  r.success = prev.skill_reward > cfg_.success_threshold;
  char buf[200];
  if (r.success) {
    std::snprintf(buf, sizeof buf, "%s earned %.4f over %d steps", prev.skill_id.c_str(), prev.skill_reward, prev.steps);
  } else {
    std::snprintf(buf, sizeof buf, "stagnation: %s earned %.4f over %d steps", prev.skill_id.c_str(), prev.skill_reward,
                  prev.steps);
  }
  r.notes = buf;
  return r;
}

std::optional<SubTask> MockBackend::propose_subtask(const PhaseContext& ctx, const ReflectionReport*) {
  const LocalMemory& mem = *ctx.memory;
  if (mem.failure_streak < cfg_.stagnation_streak) return std::nullopt;
  const auto skill = ctx.library->get(mem.current_skill);
  if (!skill) return std::nullopt;
  const auto& cycle = directive_cycle(skill->control_template);
  const DirectivePatch& patch = cycle[static_cast<std::size_t>(mem.directives_issued) % cycle.size()];
  auto it = skill->params.find(patch.param);
  if (it == skill->params.end()) return std::nullopt;
  return SubTask{directive_text(patch, it->second), patch.target};
}

std::optional<std::string> MockBackend::generate_skill(const PhaseContext&, const SubTask& task, const Skill& base) {
  static const std::regex kChange(R"(([a-z_]+) from (-?[0-9.eE+-]+) to (-?[0-9.eE+-]+))");
  std::smatch m;
  if (!std::regex_search(task.text, m, kChange)) return std::nullopt;
  if (!base.params.count(m[1].str())) return std::nullopt;
  return "$" + m[1].str() + " = " + m[3].str();
}

std::string MockBackend::select_skill(const PhaseContext& ctx, const std::vector<RankedSkill>& candidates,
                                      const ReflectionReport* report) {
  if (candidates.empty()) throw SkillError("select_skill: no candidates");
  const std::string& top = candidates.front().skill->skill_id;
  if (report != nullptr && !report->success && candidates.size() > 1 && top == ctx.memory->current_skill) {
    return candidates[1].skill->skill_id;
  }
  return top;
}

AgentPlanner::AgentPlanner(int agent_id, PlannerConfig cfg, PlannerBackend* backend, SkillLibrary* library, Rng* rng,
                           const UnitCatalog* catalog)
    : agent_id_(agent_id), cfg_(cfg), backend_(backend), library_(library), rng_(rng), catalog_(catalog) {
  memory_.history_limit = cfg.history_limit;
}

std::string AgentPlanner::task_text(std::string_view unit_type) const {
  if (memory_.current_task) return memory_.current_task->text;
  return "Defeat all enemy units with the " + std::string(unit_type);
}

std::vector<RankedSkill> AgentPlanner::candidates(const std::string& unit_type, const std::string& query) const {
  const auto allowed = templates_for(unit_type);
  auto ranked = library_->retrieve(query, library_->size());
  std::vector<RankedSkill> role, fallback;
  for (auto& r : ranked) {
    const auto t = r.skill->control_template;
    if (t == ControlTemplate::kDefaultCenter) {
      fallback.push_back(r);
    } else if (std::find(allowed.begin(), allowed.end(), t) != allowed.end()) {
      role.push_back(r);
    }
  }
  return role.empty() ? fallback : role;
}

AgentStepTrace AgentPlanner::step(const AgentStepInput& in) {
  AgentStepTrace trace;
  const ObsData& obs = *in.obs;
  if (!obs.alive) return trace;

  static const Knowledge kEmpty;
  const Knowledge& knowledge = in.knowledge ? *in.knowledge : kEmpty;
  const ObsData view = tactical_view(obs, knowledge);

  PhaseContext ctx;
  ctx.agent_id = agent_id_;
  ctx.t = in.t;
  ctx.scenario = in.scenario;
  ctx.unit_type = obs.own_unit_type;
  ctx.obs = &obs;
  ctx.view = &view;
  ctx.knowledge = &knowledge;
  ctx.memory = &memory_;
  ctx.library = library_;
  ctx.task_text = task_text(obs.own_unit_type);
  ctx.ally_tasks = in.ally_tasks;

  const bool decide = memory_.current_skill.empty() || in.t % cfg_.decision_interval == 0;
  if (decide) {
    trace.decided = true;
    const SituationReport situation = backend_->perceive(ctx);
    region_of_interest_ = situation.region_of_interest;
    ctx.game_situation = situation.game_situation;

    std::optional<ReflectionReport> report;
    if (cfg_.reflection_enabled && !memory_.current_skill.empty()) {
      report = backend_->reflect(ctx, {memory_.current_skill, memory_.skill_reward, memory_.skill_steps});
      memory_.failure_streak = report->success ? 0 : memory_.failure_streak + 1;
      memory_.last_reflection = report;
      memory_.last_reasoning = report->notes;
      trace.reflection = report;
    }
    const ReflectionReport* report_ptr = report ? &*report : nullptr;

    auto sub = backend_->propose_subtask(ctx, report_ptr);
    if (sub) {
      memory_.current_task = sub;
      memory_.failure_streak = 0;
      ++memory_.directives_issued;
      trace.subtask = sub;
      ctx.task_text = sub->text;
      if (cfg_.synthesis_enabled) {
        if (auto base = library_->get(memory_.current_skill)) {
          if (auto payload = backend_->generate_skill(ctx, *sub, *base)) {
            try {
              Skill variant = synthesize_variant(*base, sub->text, sub->target, *payload);
              if (!library_->get(variant.skill_id)) {
                trace.synthesized_skill = variant.skill_id;
                library_->add(std::move(variant));
              }
            } catch (const SkillError& e) {
              trace.synthesis_error = e.what();
            }
          }
        }
      }
    }

    if (memory_.current_skill.empty() || sub || (report && !report->success)) {
      const auto ranked = candidates(obs.own_unit_type, ctx.task_text);
      std::string chosen = backend_->select_skill(ctx, ranked, report_ptr);
      if (!library_->get(chosen)) chosen = ranked.front().skill->skill_id;
      memory_.current_skill = chosen;
      memory_.skill_reward = 0.0;
      memory_.skill_steps = 0;
    }
    trace.warnings = backend_->drain_warnings();
  }

  const auto skill = library_->get(memory_.current_skill);
  SkillContext sc;
  sc.view = view;
  sc.catalog = catalog_;
  sc.rng = rng_;
  sc.region_of_interest = region_of_interest_;
  trace.action = execute_skill(*skill, sc);
  trace.skill_id = memory_.current_skill;
  trace.region_of_interest = region_of_interest_;
  return trace;
}

void AgentPlanner::record_reward(int t, std::uint64_t obs_digest, double reward) {
  if (memory_.current_skill.empty()) return;
  memory_.skill_reward += reward;
  ++memory_.skill_steps;
  memory_.add({t, obs_digest, memory_.current_skill, reward});
}

}  // namespace skirmish
