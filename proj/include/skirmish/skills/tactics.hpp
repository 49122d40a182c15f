#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skirmish/comms/comms.hpp"
#include "skirmish/core/rng.hpp"
#include "skirmish/skills/skill.hpp"
#include "skirmish/world/unit_catalog.hpp"

namespace skirmish {

/// Priority and counter tables of the expert skill.
const PriorityTable& expert_priorities();
const CounterTable& expert_counters();

/// Score expression shared by the bootstrapped skills.
extern const char* const kExpertScoreExpr;

/// Everything a control template reads. `view` is the agent's observation
/// with shared enemy records merged into its enemy list.
struct SkillContext {
  ObsData view;
  const UnitCatalog* catalog = nullptr;
  /// Draws for random fallbacks; nullptr picks the first candidate instead.
  Rng* rng = nullptr;
  /// "Enemy #3", "Ally #1", "Location: Northeast", or empty.
  std::string region_of_interest;
};

/// Adds every remembered enemy the observation does not already show,
/// positioned relative to the agent and scaled by its sight range. can_attack
/// follows the action list. Enemies stay sorted by id.
ObsData tactical_view(const ObsData& obs, const Knowledge& knowledge);

/// Score of one entity under `skill`: the expression times, for enemies, the
/// combat-advantage factor computed around that enemy.
double target_score(const Skill& skill, const EntityView& unit, const SkillContext& ctx,
                    EvalDiagnostics* diag = nullptr);
double advantage_factor(const EntityView& unit, const ObsData& view);

/// Runs the skill's control template. Returns 0 when 0 is available; the
/// result is always one of view.available_actions.
int execute_skill(const Skill& skill, const SkillContext& ctx, EvalDiagnostics* diag = nullptr);

/// Individual templates; nothing means "no decision", and the caller falls back.
std::optional<int> run_template(ControlTemplate tmpl, const Skill& skill, const SkillContext& ctx,
                                EvalDiagnostics* diag = nullptr);

/// The five expert skills, one per template.
SkillLibrary bootstrap_library();

/// Templates a unit type may run: its role template plus default_center.
std::vector<ControlTemplate> templates_for(std::string_view unit_type);

}  // namespace skirmish
