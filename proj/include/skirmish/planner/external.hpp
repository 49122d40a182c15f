#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "skirmish/planner/planner.hpp"

namespace skirmish {

class SectionError : public std::runtime_error {
 public:
  explicit SectionError(const std::string& section)
      : std::runtime_error("reply is missing section ##" + section + "##"), section_(section) {}
  const std::string& section() const { return section_; }

 private:
  std::string section_;
};

/// Body per `##Name##:` header. A body of "null" maps to nullopt. For
/// Skill_generation and Skills the first fenced block, if any, replaces the body.
using Sections = std::map<std::string, std::optional<std::string>>;
Sections parse_sectioned_response(const std::string& text, const std::vector<std::string>& required);

/// Replaces every <name> with vars[name]; unknown placeholders are kept.
/// <web_search> and the screenshot placeholders always render empty.
std::string render_prompt(const std::string& tmpl, const std::map<std::string, std::string>& vars);
/// Reads <dir>/<phase>.txt. Throws std::runtime_error when missing.
std::string load_prompt(const std::string& dir, const std::string& phase);

struct ExternalConfig {
  /// http://host:port/path of a chat-completion endpoint.
  std::string url;
  std::string api_key;
  std::string model = "gpt-4o-mini";
  std::chrono::milliseconds timeout{30000};
  std::string prompt_dir = SKIRMISH_DATA_DIR "/prompts";

  /// SKIRMISH_LLM_URL, SKIRMISH_LLM_API_KEY, SKIRMISH_LLM_MODEL, SKIRMISH_LLM_TIMEOUT_MS.
  static ExternalConfig from_env();
};

/// Sends each phase to a chat-completion endpoint and parses the sectioned
/// reply. Any transport or parse failure falls back to the mock for that
/// phase and is recorded as a warning.
class ExternalBackend : public PlannerBackend {
 public:
  explicit ExternalBackend(ExternalConfig cfg, MockConfig mock = {});
  std::string name() const override { return "external"; }

  SituationReport perceive(const PhaseContext& ctx) override;
  ReflectionReport reflect(const PhaseContext& ctx, const PreviousResult& prev) override;
  std::optional<SubTask> propose_subtask(const PhaseContext& ctx, const ReflectionReport* report) override;
  std::optional<std::string> generate_skill(const PhaseContext& ctx, const SubTask& task, const Skill& base) override;
  std::string select_skill(const PhaseContext& ctx, const std::vector<RankedSkill>& candidates,
                           const ReflectionReport* report) override;

  int failures() const override { return failures_; }
  std::vector<std::string> drain_warnings() override;

  /// Raw completion call: returns the assistant message content.
  /// Throws std::runtime_error on transport or shape errors.
  std::string complete(const std::string& prompt);

 private:
  std::optional<Sections> ask(const std::string& phase, const std::map<std::string, std::string>& vars,
                              const std::vector<std::string>& required);
  std::map<std::string, std::string> common_vars(const PhaseContext& ctx) const;
  void fail(const std::string& phase, const std::string& why);

  ExternalConfig cfg_;
  MockBackend mock_;
  int failures_ = 0;
  std::vector<std::string> warnings_;
  std::map<std::string, std::string> prompt_cache_;
};

}  // namespace skirmish
