#include "skirmish/harness/replay.hpp"

#include <fstream>
#include <sstream>

namespace skirmish {

namespace {

using nlohmann::json;

json unit_to_json(const UnitState& u) {
  return {{"id", u.id},         {"kind", to_string(u.kind)}, {"x", u.pos.x},
          {"y", u.pos.y},       {"health", u.health},        {"shield", u.shield},
          {"cooldown", u.cooldown}, {"alive", u.alive},      {"last_action", u.last_action}};
}

UnitState unit_from_json(const json& j, Team team) {
  UnitState u;
  u.id = j.at("id").get<int>();
  u.team = team;
  const auto kind = unit_kind_from_string(j.at("kind").get<std::string>());
  if (!kind) throw ReplayError("unknown unit kind " + j.at("kind").dump());
  u.kind = *kind;
  u.pos = {j.at("x").get<double>(), j.at("y").get<double>()};
  u.health = j.at("health").get<double>();
  u.shield = j.at("shield").get<double>();
  u.cooldown = j.at("cooldown").get<int>();
  u.alive = j.at("alive").get<bool>();
  u.last_action = j.at("last_action").get<int>();
  return u;
}

json known_to_json(const KnownEntity& k) {
  return {{"team", to_string(k.team)}, {"id", k.id}, {"hops", k.hops}, {"observed_at", k.observed_at},
          {"source", k.source_agent}};
}

KnownEntity known_from_json(const json& j) {
  KnownEntity k;
  k.team = j.at("team").get<std::string>() == "ally" ? Team::kAlly : Team::kEnemy;
  k.id = j.at("id").get<int>();
  k.hops = j.at("hops").get<int>();
  k.observed_at = j.at("observed_at").get<int>();
  k.source_agent = j.at("source").get<int>();
  return k;
}

json event_to_json(const AgentEvent& e) {
  json j = {{"agent", e.agent}, {"roi", e.region_of_interest}};
  if (e.reflection_success) {
    j["reflection"] = {{"success", *e.reflection_success}, {"skill_reward", e.reflection_reward}};
  }
  if (!e.subtask.empty()) j["subtask"] = e.subtask;
  if (!e.synthesized_skill.empty()) j["synthesized"] = e.synthesized_skill;
  if (!e.synthesis_error.empty()) j["synthesis_error"] = e.synthesis_error;
  if (!e.warnings.empty()) j["warnings"] = e.warnings;
  return j;
}

AgentEvent event_from_json(const json& j) {
  AgentEvent e;
  e.agent = j.at("agent").get<int>();
  e.region_of_interest = j.at("roi").get<std::string>();
  if (j.contains("reflection")) {
    e.reflection_success = j["reflection"].at("success").get<bool>();
    e.reflection_reward = j["reflection"].at("skill_reward").get<double>();
  }
  e.subtask = j.value("subtask", "");
  e.synthesized_skill = j.value("synthesized", "");
  e.synthesis_error = j.value("synthesis_error", "");
  if (j.contains("warnings")) e.warnings = j["warnings"].get<std::vector<std::string>>();
  return e;
}

}  // namespace

nlohmann::json replay_record_to_json(const ReplayRecord& r) {
  json allies = json::array(), enemies = json::array(), knowledge = json::array(), events = json::array();
  for (const auto& u : r.allies) allies.push_back(unit_to_json(u));
  for (const auto& u : r.enemies) enemies.push_back(unit_to_json(u));
  for (const auto& agent : r.knowledge) {
    json list = json::array();
    for (const auto& k : agent) list.push_back(known_to_json(k));
    knowledge.push_back(std::move(list));
  }
  for (const auto& e : r.events) events.push_back(event_to_json(e));
  json j = {
      {"schema_version", r.schema_version},
      {"t", r.t},
      {"world", {{"allies", allies}, {"enemies", enemies}, {"spotter", r.spotter}, {"hash", r.world_hash}}},
      {"obs_digests", r.obs_digests},
      {"knowledge", knowledge},
      {"skills", r.skills},
      {"actions", {{"allies", r.ally_actions}, {"enemies", r.enemy_actions}}},
      {"reward", r.reward},
      {"done", r.done},
      {"events", events},
  };
  if (!r.meta.is_null()) j["meta"] = r.meta;
  return j;
}

ReplayRecord replay_record_from_json(const nlohmann::json& j) {
  try {
    ReplayRecord r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kReplaySchemaVersion) {
      throw ReplayError("replay schema_version " + std::to_string(r.schema_version) + " not supported (expected " +
                        std::to_string(kReplaySchemaVersion) + ")");
    }
    r.t = j.at("t").get<int>();
    const json& w = j.at("world");
    for (const auto& u : w.at("allies")) r.allies.push_back(unit_from_json(u, Team::kAlly));
    for (const auto& u : w.at("enemies")) r.enemies.push_back(unit_from_json(u, Team::kEnemy));
    r.spotter = w.at("spotter").get<std::vector<int>>();
    r.world_hash = w.at("hash").get<std::string>();
    r.obs_digests = j.at("obs_digests").get<std::vector<std::string>>();
    for (const auto& agent : j.at("knowledge")) {
      std::vector<KnownEntity> list;
      for (const auto& k : agent) list.push_back(known_from_json(k));
      r.knowledge.push_back(std::move(list));
    }
    r.skills = j.at("skills").get<std::vector<std::string>>();
    r.ally_actions = j.at("actions").at("allies").get<std::vector<int>>();
    r.enemy_actions = j.at("actions").at("enemies").get<std::vector<int>>();
    r.reward = j.at("reward").get<double>();
    r.done = j.at("done").get<bool>();
    for (const auto& e : j.at("events")) r.events.push_back(event_from_json(e));
    if (j.contains("meta")) r.meta = j["meta"];
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ReplayError(std::string("malformed replay record: ") + e.what());
  }
}

std::string serialize_replay(const std::vector<ReplayRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += replay_record_to_json(r).dump();
    out += '\n';
  }
  return out;
}

std::vector<ReplayRecord> parse_replay(const std::string& text) {
  std::vector<ReplayRecord> out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ReplayError("replay line " + std::to_string(line_no) + ": " + e.what());
    }
    out.push_back(replay_record_from_json(j));
  }
  return out;
}

void write_replay(const std::string& path, const std::vector<ReplayRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write replay " + path);
  out << serialize_replay(records);
}

std::vector<ReplayRecord> read_replay(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open replay " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_replay(ss.str());
}

}  // namespace skirmish
