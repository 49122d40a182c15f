#include "skirmish/planner/external.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "skirmish/obs/obs_text.hpp"

namespace skirmish {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

/// First ```...``` block, without the info string.
std::optional<std::string> first_fence(const std::string& body) {
  const auto open = body.find("```");
  if (open == std::string::npos) return std::nullopt;
  auto start = body.find('\n', open + 3);
  const auto close = body.find("```", open + 3);
  if (close == std::string::npos) return std::nullopt;
  if (start == std::string::npos || start > close) start = open + 2;
  return trim(body.substr(start + 1, close - start - 1));
}

std::string fmt4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

Sections parse_sectioned_response(const std::string& text, const std::vector<std::string>& required) {
  static const std::regex kHeader(R"(##([A-Za-z_]+)##:)");
  Sections out;
  std::vector<std::pair<std::string, std::pair<std::size_t, std::size_t>>> spans;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), kHeader); it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    spans.push_back({m[1].str(), {static_cast<std::size_t>(m.position(0)), static_cast<std::size_t>(m.length(0))}});
  }
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const std::size_t begin = spans[i].second.first + spans[i].second.second;
    const std::size_t end = i + 1 < spans.size() ? spans[i + 1].second.first : text.size();
    std::string body = trim(text.substr(begin, end - begin));
    const std::string& name = spans[i].first;
    if (name == "Skill_generation" || name == "Skills") {
      if (auto fenced = first_fence(body)) body = *fenced;
    }
    if (body == "null" || body == "'null'" || body == "\"null\"") {
      out[name] = std::nullopt;
    } else {
      out[name] = body;
    }
  }
  for (const auto& r : required) {
    if (!out.count(r)) throw SectionError(r);
  }
  return out;
}

std::string render_prompt(const std::string& tmpl, const std::map<std::string, std::string>& vars) {
  static const std::regex kPlaceholder(R"(<([a-z_]+)>)");
  static const std::vector<std::string> kBlank = {"web_search", "minimap", "screenshot", "image"};
  std::string out;
  auto last = tmpl.cbegin();
  for (auto it = std::sregex_iterator(tmpl.begin(), tmpl.end(), kPlaceholder); it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    out.append(last, m[0].first);
    const std::string key = m[1].str();
    if (std::find(kBlank.begin(), kBlank.end(), key) != kBlank.end()) {
      // rendered empty
    } else if (auto v = vars.find(key); v != vars.end()) {
      out += v->second;
    } else {
      out += m[0].str();
    }
    last = m[0].second;
  }
  out.append(last, tmpl.cend());
  return out;
}

std::string load_prompt(const std::string& dir, const std::string& phase) {
  const std::string path = dir + "/" + phase + ".txt";
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("prompt template not found: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExternalConfig ExternalConfig::from_env() {
  ExternalConfig c;
  if (const char* v = std::getenv("SKIRMISH_LLM_URL")) c.url = v;
  if (const char* v = std::getenv("SKIRMISH_LLM_API_KEY")) c.api_key = v;
  if (const char* v = std::getenv("SKIRMISH_LLM_MODEL")) c.model = v;
  if (const char* v = std::getenv("SKIRMISH_LLM_TIMEOUT_MS")) c.timeout = std::chrono::milliseconds(std::atol(v));
  if (const char* v = std::getenv("SKIRMISH_PROMPT_DIR")) c.prompt_dir = v;
  return c;
}

ExternalBackend::ExternalBackend(ExternalConfig cfg, MockConfig mock) : cfg_(std::move(cfg)), mock_(mock) {}

std::vector<std::string> ExternalBackend::drain_warnings() {
  std::vector<std::string> out;
  out.swap(warnings_);
  return out;
}

void ExternalBackend::fail(const std::string& phase, const std::string& why) {
  ++failures_;
  warnings_.push_back(phase + ": " + why + "; mock fallback");
}

std::string ExternalBackend::complete(const std::string& prompt) {
  static const std::regex kUrl(R"(^(http)://([^/:]+)(?::(\d+))?(/.*)?$)");
  std::smatch m;
  if (cfg_.url.empty()) throw std::runtime_error("SKIRMISH_LLM_URL is not set");
  if (!std::regex_match(cfg_.url, m, kUrl)) {
    throw std::runtime_error("unsupported endpoint URL '" + cfg_.url + "' (plain http://host[:port]/path only)");
  }
  const int port = m[3].matched ? std::stoi(m[3].str()) : 80;
  const std::string path = m[4].matched ? m[4].str() : "/v1/chat/completions";

  httplib::Client cli(m[2].str(), port);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(cfg_.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(cfg_.timeout - secs);
  cli.set_connection_timeout(secs.count(), usecs.count());
  cli.set_read_timeout(secs.count(), usecs.count());
  cli.set_write_timeout(secs.count(), usecs.count());

  httplib::Headers headers;
  if (!cfg_.api_key.empty()) headers.emplace("Authorization", "Bearer " + cfg_.api_key);
  const nlohmann::json body = {{"model", cfg_.model},
                               {"temperature", 0},
                               {"messages", nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})}};
  auto res = cli.Post(path, headers, body.dump(), "application/json");
  if (!res) throw std::runtime_error("request failed: " + httplib::to_string(res.error()));
  if (res->status != 200) throw std::runtime_error("HTTP " + std::to_string(res->status));
  try {
    const auto reply = nlohmann::json::parse(res->body);
    return reply.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed completion body: ") + e.what());
  }
}

std::optional<Sections> ExternalBackend::ask(const std::string& phase, const std::map<std::string, std::string>& vars,
                                             const std::vector<std::string>& required) {
  try {
    auto it = prompt_cache_.find(phase);
    if (it == prompt_cache_.end()) it = prompt_cache_.emplace(phase, load_prompt(cfg_.prompt_dir, phase)).first;
    const std::string reply = complete(render_prompt(it->second, vars));
    return parse_sectioned_response(reply, required);
  } catch (const std::exception& e) {
    fail(phase, e.what());
    return std::nullopt;
  }
}

std::map<std::string, std::string> ExternalBackend::common_vars(const PhaseContext& ctx) const {
  std::map<std::string, std::string> v;
  v["task_description"] = ctx.task_text;
  v["unit_type"] = ctx.unit_type;
  v["observation"] = ctx.obs ? render_obs(*ctx.obs) : "";
  v["game_situation"] = ctx.game_situation;
  std::string allies;
  for (const auto& t : ctx.ally_tasks) allies += "- " + t + "\n";
  v["ally_task"] = allies;
  std::string shared;
  if (ctx.knowledge) {
    for (const auto& [key, rec] : *ctx.knowledge) {
      shared += std::string(to_string(key.team)) + " #" + std::to_string(key.id) + " " + rec.unit_type + " at (" +
                fmt4(rec.global_pos.x) + ", " + fmt4(rec.global_pos.y) + "), seen t=" + std::to_string(rec.observed_at) +
                ", hops=" + std::to_string(rec.hops) + "\n";
    }
  }
  v["shared_info"] = shared.empty() ? "none" : shared;
  v["current_skill"] = ctx.memory ? ctx.memory->current_skill : "";
  v["last_reasoning"] = ctx.memory ? ctx.memory->last_reasoning : "";
  std::string skills;
  if (ctx.library) {
    for (const auto& s : ctx.library->all()) skills += "- " + s->skill_id + ": " + s->doc + "\n";
  }
  v["skill_list"] = skills;
  return v;
}

SituationReport ExternalBackend::perceive(const PhaseContext& ctx) {
  static const std::regex kRoi(R"(^(Enemy #\d+|Ally #\d+|Location: [A-Za-z]+)$)");
  auto s = ask("perception", common_vars(ctx), {"Game_situation", "Region_of_interest"});
  if (s) {
    const auto& roi = (*s)["Region_of_interest"];
    if (roi && std::regex_match(*roi, kRoi)) {
      SituationReport r;
      r.game_situation = (*s)["Game_situation"].value_or("");
      r.region_of_interest = *roi;
      return r;
    }
    fail("perception", "region of interest not in the expected form");
  }
  return mock_.perceive(ctx);
}

ReflectionReport ExternalBackend::reflect(const PhaseContext& ctx, const PreviousResult& prev) {
  auto v = common_vars(ctx);
  v["previous_skill"] = prev.skill_id;
  v["skill_reward"] = fmt4(prev.skill_reward);
  v["skill_steps"] = std::to_string(prev.steps);
  auto s = ask("reflection", v, {"Success", "Reflection"});
  if (s) {
    const std::string verdict = (*s)["Success"].value_or("");
    if (verdict == "true" || verdict == "false") {
      ReflectionReport r;
      r.success = verdict == "true";
      r.notes = (*s)["Reflection"].value_or("");
      r.skill_reward = prev.skill_reward;
      return r;
    }
    fail("reflection", "Success must be true or false");
  }
  return mock_.reflect(ctx, prev);
}

std::optional<SubTask> ExternalBackend::propose_subtask(const PhaseContext& ctx, const ReflectionReport* report) {
  auto v = common_vars(ctx);
  v["reflection"] = report ? report->notes : "";
  auto s = ask("task_reasoning", v, {"Task_guidance"});
  if (!s) return mock_.propose_subtask(ctx, report);
  const auto& g = (*s)["Task_guidance"];
  if (!g) return std::nullopt;
  const auto& skill = (*s)["Skill_guidance"];
  const bool control = skill && skill->find("control") != std::string::npos;
  return SubTask{*g, control ? SynthesisTarget::kControlLogic : SynthesisTarget::kScoreTarget};
}

std::optional<std::string> ExternalBackend::generate_skill(const PhaseContext& ctx, const SubTask& task,
                                                           const Skill& base) {
  auto v = common_vars(ctx);
  v["subtask"] = task.text;
  v["synthesis_target"] = std::string(to_string(task.target));
  v["base_skill"] = skill_to_json(base).dump(2);
  auto s = ask("skill_generation", v, {"Skill_generation"});
  if (!s) return mock_.generate_skill(ctx, task, base);
  return (*s)["Skill_generation"];
}

std::string ExternalBackend::select_skill(const PhaseContext& ctx, const std::vector<RankedSkill>& candidates,
                                          const ReflectionReport* report) {
  static const std::regex kCall(R"(^\s*([A-Za-z0-9_~]+)\s*\(\s*obs\s*=\s*'current'\s*\)\s*$)");
  auto v = common_vars(ctx);
  std::string list;
  for (const auto& c : candidates) list += "- " + c.skill->skill_id + ": " + c.skill->doc + "\n";
  v["candidate_skills"] = list;
  auto s = ask("actor", v, {"Skills"});
  if (s) {
    std::smatch m;
    const std::string call = (*s)["Skills"].value_or("");
    if (std::regex_match(call, m, kCall)) {
      const std::string id = m[1].str();
      for (const auto& c : candidates) {
        if (c.skill->skill_id == id) return id;
      }
      fail("actor", "skill '" + id + "' is not a candidate");
    } else {
      fail("actor", "Skills section is not a skill call");
    }
  }
  return mock_.select_skill(ctx, candidates, report);
}

}  // namespace skirmish
