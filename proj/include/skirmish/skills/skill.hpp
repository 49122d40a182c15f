#pragma once

#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "skirmish/skills/embedding.hpp"
#include "skirmish/skills/score_expr.hpp"

namespace skirmish {

enum class ControlTemplate { kMedivacSupport, kMeleeEngage, kRangedKite, kBanelingAoe, kDefaultCenter };
std::string_view to_string(ControlTemplate t);
std::optional<ControlTemplate> control_template_from_string(std::string_view s);
inline constexpr ControlTemplate kAllTemplates[] = {ControlTemplate::kMedivacSupport, ControlTemplate::kMeleeEngage,
                                                    ControlTemplate::kRangedKite, ControlTemplate::kBanelingAoe,
                                                    ControlTemplate::kDefaultCenter};

using ParamMap = std::map<std::string, double>;

struct Skill {
  std::string skill_id;
  std::string doc;
  ScoreExpr score_expr;
  ControlTemplate control_template = ControlTemplate::kDefaultCenter;
  ParamMap params;
  /// embed(doc); refreshed by make_skill.
  Embedding embedding{};
  /// Skill this one was synthesised from; empty for bootstrapped skills.
  std::string parent_id;
};

class SkillError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses the expression, checks that every $param it uses is defined and
/// computes the embedding. Throws SkillError with diagnostics.
Skill make_skill(std::string id, std::string doc, std::string_view score_expr, ControlTemplate tmpl, ParamMap params,
                 std::string parent_id = {});

nlohmann::json skill_to_json(const Skill& skill);
Skill skill_from_json(const nlohmann::json& doc);

struct RankedSkill {
  std::shared_ptr<const Skill> skill;
  double similarity = 0.0;
};

/// Insertion-ordered skill store. Reads may run concurrently; add() takes an
/// exclusive lock.
class SkillLibrary {
 public:
  SkillLibrary() = default;
  SkillLibrary(const SkillLibrary& other);
  SkillLibrary& operator=(const SkillLibrary& other);

  /// Throws SkillError if the id is taken.
  void add(Skill skill);
  std::shared_ptr<const Skill> get(std::string_view id) const;
  std::vector<std::shared_ptr<const Skill>> all() const;
  std::size_t size() const;

  /// Top-k by cosine between embed(query) and each doc embedding; ties go to
  /// the lexicographically smaller id. Throws SkillError when empty.
  std::vector<RankedSkill> retrieve(std::string_view query, std::size_t k) const;

  /// One <skill_id>.json file per skill.
  void dump(const std::string& dir) const;
  /// Loads every *.json file in `dir`, sorted by file name.
  static SkillLibrary load(const std::string& dir);

 private:
  mutable std::shared_mutex mu_;
  std::vector<std::shared_ptr<const Skill>> skills_;
};

enum class SynthesisTarget { kScoreTarget, kControlLogic };
std::string_view to_string(SynthesisTarget t);

/// Builds a refined copy of `base`. The payload is one of
///   $name = <number>     parameter patch
///   template <name>      switch control template (control_logic only)
///   <score expression>   replacement score (score_target only)
/// Anything else, or a payload that fails to parse or type-check, throws
/// SkillError carrying the diagnostics.
Skill synthesize_variant(const Skill& base, std::string_view directive, SynthesisTarget target,
                         std::string_view payload);

}  // namespace skirmish
