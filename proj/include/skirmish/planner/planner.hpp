#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "skirmish/comms/comms.hpp"
#include "skirmish/core/rng.hpp"
#include "skirmish/skills/skill.hpp"
#include "skirmish/skills/tactics.hpp"

namespace skirmish {

struct SubTask {
  std::string text;
  SynthesisTarget target = SynthesisTarget::kScoreTarget;
  bool operator==(const SubTask&) const = default;
};

struct SituationReport {
  std::string game_situation;
  /// "Enemy #k", "Ally #k" or "Location: <direction>".
  std::string region_of_interest;
};

struct ReflectionReport {
  bool success = false;
  std::string notes;
  double skill_reward = 0.0;
};

/// Outcome of the skill that ran since the last selection.
struct PreviousResult {
  std::string skill_id;
  double skill_reward = 0.0;
  int steps = 0;
};

struct MemoryEntry {
  int t = 0;
  std::uint64_t obs_digest = 0;
  std::string skill_id;
  double reward = 0.0;
};

struct LocalMemory {
  std::size_t history_limit = 32;
  std::deque<MemoryEntry> history;
  std::map<std::string, double> cumulative_reward_by_skill;
  std::optional<ReflectionReport> last_reflection;
  std::optional<SubTask> current_task;
  std::string last_reasoning;

  std::string current_skill;
  double skill_reward = 0.0;
  int skill_steps = 0;
  int failure_streak = 0;
  /// Position in the mock directive cycle.
  int directives_issued = 0;

  void add(MemoryEntry e);
};

/// Read-only view handed to every backend phase.
struct PhaseContext {
  int agent_id = 0;
  int t = 0;
  std::string scenario;
  std::string unit_type;
  const ObsData* obs = nullptr;
  const ObsData* view = nullptr;
  const Knowledge* knowledge = nullptr;
  const LocalMemory* memory = nullptr;
  const SkillLibrary* library = nullptr;
  std::string task_text;
  std::vector<std::string> ally_tasks;
  std::string game_situation;
};

class PlannerBackend {
 public:
  virtual ~PlannerBackend() = default;
  virtual std::string name() const = 0;

  virtual SituationReport perceive(const PhaseContext& ctx) = 0;
  virtual ReflectionReport reflect(const PhaseContext& ctx, const PreviousResult& prev) = 0;
  virtual std::optional<SubTask> propose_subtask(const PhaseContext& ctx, const ReflectionReport* report) = 0;
  /// Payload for synthesize_variant, or nothing when no new skill is needed.
  virtual std::optional<std::string> generate_skill(const PhaseContext& ctx, const SubTask& task, const Skill& base) = 0;
  virtual std::string select_skill(const PhaseContext& ctx, const std::vector<RankedSkill>& candidates,
                                   const ReflectionReport* report) = 0;

  /// Calls that fell back to mock behaviour so far.
  virtual int failures() const { return 0; }
  /// Warnings collected since the last call, for the replay log.
  virtual std::vector<std::string> drain_warnings() { return {}; }
};

struct MockConfig {
  double success_threshold = 0.0;
  int stagnation_streak = 3;
};

/// Deterministic rule-based stand-in for the language model.
class MockBackend : public PlannerBackend {
 public:
  explicit MockBackend(MockConfig cfg = {}) : cfg_(cfg) {}
  std::string name() const override { return "mock"; }

  SituationReport perceive(const PhaseContext& ctx) override;
  ReflectionReport reflect(const PhaseContext& ctx, const PreviousResult& prev) override;
  std::optional<SubTask> propose_subtask(const PhaseContext& ctx, const ReflectionReport* report) override;
  std::optional<std::string> generate_skill(const PhaseContext& ctx, const SubTask& task, const Skill& base) override;
  std::string select_skill(const PhaseContext& ctx, const std::vector<RankedSkill>& candidates,
                           const ReflectionReport* report) override;

  const MockConfig& config() const { return cfg_; }

 private:
  MockConfig cfg_;
};

/// One entry of the mock stagnation cycle: scale `param` by `factor`.
struct DirectivePatch {
  std::string param;
  double factor = 1.0;
  SynthesisTarget target = SynthesisTarget::kScoreTarget;
  std::string rationale;
};
const std::vector<DirectivePatch>& directive_cycle(ControlTemplate tmpl);
/// "Adjust <param> from <a> to <b> ..." for score targets, "Implement ...:
/// change <param> from <a> to <b>" for control logic.
std::string directive_text(const DirectivePatch& patch, double from);
/// Eight-way direction word for a displacement with north = +y.
std::string bearing_name(Vec2 delta);

struct PlannerConfig {
  int decision_interval = 5;
  bool reflection_enabled = true;
  bool synthesis_enabled = true;
  std::size_t history_limit = 32;
};

/// What one agent did in one step; mirrored into the replay.
struct AgentStepTrace {
  int action = action::kNoOp;
  bool decided = false;
  std::string skill_id;
  std::string region_of_interest;
  std::optional<ReflectionReport> reflection;
  std::optional<SubTask> subtask;
  std::string synthesized_skill;
  std::string synthesis_error;
  std::vector<std::string> warnings;
};

struct AgentStepInput {
  int t = 0;
  std::string scenario;
  const ObsData* obs = nullptr;
  const Knowledge* knowledge = nullptr;
  /// Allies' task texts from the previous step.
  std::vector<std::string> ally_tasks;
};

/// Per-agent closed loop: perceive, reflect, propose, synthesise, select,
/// execute. Communication happens before this, in the harness.
class AgentPlanner {
 public:
  AgentPlanner(int agent_id, PlannerConfig cfg, PlannerBackend* backend, SkillLibrary* library, Rng* rng,
               const UnitCatalog* catalog);

  AgentStepTrace step(const AgentStepInput& in);
  /// Credits the shared reward of the step just taken.
  void record_reward(int t, std::uint64_t obs_digest, double reward);

  const LocalMemory& memory() const { return memory_; }
  /// Current task text as seen by teammates.
  std::string task_text(std::string_view unit_type) const;

 private:
  std::vector<RankedSkill> candidates(const std::string& unit_type, const std::string& query) const;

  int agent_id_;
  PlannerConfig cfg_;
  PlannerBackend* backend_;
  SkillLibrary* library_;
  Rng* rng_;
  const UnitCatalog* catalog_;
  LocalMemory memory_;
  std::string region_of_interest_;
};

}  // namespace skirmish
