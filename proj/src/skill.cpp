#include "skirmish/skills/skill.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>

#include "skirmish/core/hash.hpp"

namespace skirmish {

std::string_view to_string(ControlTemplate t) {
  switch (t) {
    case ControlTemplate::kMedivacSupport:
      return "medivac_support";
    case ControlTemplate::kMeleeEngage:
      return "melee_engage";
    case ControlTemplate::kRangedKite:
      return "ranged_kite";
    case ControlTemplate::kBanelingAoe:
      return "baneling_aoe";
    case ControlTemplate::kDefaultCenter:
      return "default_center";
  }
  return "default_center";
}

std::optional<ControlTemplate> control_template_from_string(std::string_view s) {
  for (ControlTemplate t : kAllTemplates) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

std::string_view to_string(SynthesisTarget t) {
  return t == SynthesisTarget::kScoreTarget ? "score_target" : "control_logic";
}

Skill make_skill(std::string id, std::string doc, std::string_view score_expr, ControlTemplate tmpl, ParamMap params,
                 std::string parent_id) {
  if (id.empty()) throw SkillError("skill id must not be empty");
  Skill s;
  try {
    s.score_expr = parse_score_expr(score_expr);
  } catch (const ScoreExprError& e) {
    throw SkillError("skill " + id + ": score_expr " + e.what());
  }
  for (const auto& p : s.score_expr.params()) {
    if (!params.count(p)) throw SkillError("skill " + id + ": score_expr uses undefined parameter $" + p);
  }
  s.skill_id = std::move(id);
  s.doc = std::move(doc);
  s.control_template = tmpl;
  s.params = std::move(params);
  s.embedding = embed(s.doc);
  s.parent_id = std::move(parent_id);
  return s;
}

nlohmann::json skill_to_json(const Skill& s) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : s.params) params[k] = v;
  nlohmann::json j = {
      {"skill_id", s.skill_id},
      {"doc", s.doc},
      {"score_expr", s.score_expr.source()},
      {"control_template", to_string(s.control_template)},
      {"params", params},
  };
  if (!s.parent_id.empty()) j["parent_id"] = s.parent_id;
  return j;
}

Skill skill_from_json(const nlohmann::json& j) {
  try {
    const auto tmpl_name = j.at("control_template").get<std::string>();
    const auto tmpl = control_template_from_string(tmpl_name);
    if (!tmpl) throw SkillError("unknown control_template '" + tmpl_name + "'");
    ParamMap params;
    if (j.contains("params")) {
      for (const auto& [k, v] : j.at("params").items()) params[k] = v.get<double>();
    }
    return make_skill(j.at("skill_id").get<std::string>(), j.at("doc").get<std::string>(),
                      j.at("score_expr").get<std::string>(), *tmpl, std::move(params), j.value("parent_id", ""));
  } catch (const nlohmann::json::exception& e) {
    throw SkillError(std::string("malformed skill document: ") + e.what());
  }
}

SkillLibrary::SkillLibrary(const SkillLibrary& other) {
  std::shared_lock lock(other.mu_);
  skills_ = other.skills_;
}

SkillLibrary& SkillLibrary::operator=(const SkillLibrary& other) {
  if (this == &other) return *this;
  std::vector<std::shared_ptr<const Skill>> copy;
  {
    std::shared_lock lock(other.mu_);
    copy = other.skills_;
  }
  std::unique_lock lock(mu_);
  skills_ = std::move(copy);
  return *this;
}

void SkillLibrary::add(Skill skill) {
  std::unique_lock lock(mu_);
  for (const auto& s : skills_) {
    if (s->skill_id == skill.skill_id) throw SkillError("duplicate skill id '" + skill.skill_id + "'");
  }
  skills_.push_back(std::make_shared<const Skill>(std::move(skill)));
}

std::shared_ptr<const Skill> SkillLibrary::get(std::string_view id) const {
  std::shared_lock lock(mu_);
  for (const auto& s : skills_) {
    if (s->skill_id == id) return s;
  }
  return nullptr;
}

std::vector<std::shared_ptr<const Skill>> SkillLibrary::all() const {
  std::shared_lock lock(mu_);
  return skills_;
}

std::size_t SkillLibrary::size() const {
  std::shared_lock lock(mu_);
  return skills_.size();
}

std::vector<RankedSkill> SkillLibrary::retrieve(std::string_view query, std::size_t k) const {
  if (k == 0) throw SkillError("retrieve: k must be at least 1");
  const Embedding q = embed(query);
  std::vector<RankedSkill> ranked;
  {
    std::shared_lock lock(mu_);
    if (skills_.empty()) throw SkillError("retrieve: library is empty");
    for (const auto& s : skills_) ranked.push_back({s, cosine(q, s->embedding)});
  }
  std::sort(ranked.begin(), ranked.end(), [](const RankedSkill& a, const RankedSkill& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.skill->skill_id < b.skill->skill_id;
  });
  if (ranked.size() > k) ranked.resize(k);
  return ranked;
}

void SkillLibrary::dump(const std::string& dir) const {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  for (const auto& s : all()) {
    const fs::path path = fs::path(dir) / (s->skill_id + ".json");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << skill_to_json(*s).dump(2) << '\n';
  }
}

SkillLibrary SkillLibrary::load(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw std::runtime_error("not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  SkillLibrary lib;
  for (const auto& path : files) {
    std::ifstream in(path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw SkillError(path.string() + ": " + e.what());
    }
    lib.add(skill_from_json(j));
  }
  return lib;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string short_hash(std::string_view s) { return hex64(fnv1a(s)).substr(0, 8); }

}  // namespace

Skill synthesize_variant(const Skill& base, std::string_view directive, SynthesisTarget target,
                         std::string_view payload) {
  const std::string_view body = trim(payload);
  if (body.empty()) throw SkillError("empty skill payload");
  const std::string id = base.skill_id + "~" + short_hash(std::string(to_string(target)) + ":" + std::string(body));
  const std::string doc = base.doc + " Refined: " + std::string(trim(directive));

  if (body.front() == '$') {
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw SkillError("parameter patch needs '$name = value'");
    const std::string name(trim(body.substr(1, eq - 1)));
    if (!base.params.count(name)) throw SkillError("skill " + base.skill_id + " has no parameter $" + name);
    const std::string value_text(trim(body.substr(eq + 1)));
    char* end = nullptr;
    const double value = std::strtod(value_text.c_str(), &end);
    if (value_text.empty() || *end != '\0' || !std::isfinite(value)) {
      throw SkillError("parameter patch value '" + value_text + "' is not a number");
    }
    ParamMap params = base.params;
    params[name] = value;
    return make_skill(id, doc, base.score_expr.source(), base.control_template, std::move(params), base.skill_id);
  }

  if (body.substr(0, 9) == "template ") {
    if (target != SynthesisTarget::kControlLogic) {
      throw SkillError("a template switch needs a control_logic directive");
    }
    const auto name = trim(body.substr(9));
    const auto tmpl = control_template_from_string(name);
    if (!tmpl) throw SkillError("unknown control template '" + std::string(name) + "'");
    return make_skill(id, doc, base.score_expr.source(), *tmpl, base.params, base.skill_id);
  }

  if (target != SynthesisTarget::kScoreTarget) {
    throw SkillError("a score expression needs a score_target directive");
  }
  return make_skill(id, doc, body, base.control_template, base.params, base.skill_id);
}

}  // namespace skirmish
