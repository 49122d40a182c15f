#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "oracles.hpp"
#include "skirmish/skills/embedding.hpp"
#include "skirmish/skills/pathfinding.hpp"
#include "skirmish/skills/skill.hpp"
#include "skirmish/skills/tactics.hpp"

using namespace skirmish;

namespace {

Grid random_grid(Rng& rng) {
  Grid g;
  const int blobs = static_cast<int>(rng.below(11));
  for (int b = 0; b < blobs; ++b) {
    const int cx = static_cast<int>(rng.below(kGridSize)), cy = static_cast<int>(rng.below(kGridSize));
    const int r = 1 + static_cast<int>(rng.below(4));
    for (int y = cy - r; y <= cy + r; ++y) {
      for (int x = cx - r; x <= cx + r; ++x) {
        if (Grid::inside({x, y}) && (x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r) g.set_blocked({x, y}, true);
      }
    }
  }
  return g;
}

/// Self plus allies whose last action targets enemy #1 `attackers` times.
double enemy_score(const Skill& skill, const std::string& self_type, const std::string& ally_type, int attackers,
                   int self_last_action = action::kStop) {
  ObsData o;
  o.agent_id = 0;
  o.own_unit_type = self_type;
  o.own_health = 1.0;
  o.own_sight_range = 9;
  o.own_shoot_range = 6;
  o.last_action = self_last_action;
  for (int i = 1; i <= 4; ++i) {
    EntityView a{true, i, ally_type, {-0.1 * i, 0.1}, 0.0, 1.0, 0.0, false, action::kStop};
    a.distance = std::hypot(a.position.x, a.position.y);
    if (i <= attackers) a.last_action = action::target(1);
    o.allies.push_back(a);
  }
  EntityView target{false, 1, "stalker", {0.3, 0.4}, 0.5, 0.6, 0.2, true, 0};
  o.enemies.push_back(target);
  const TacticContext ctx{&o, &expert_priorities(), &expert_counters(), &skill.params};
  return eval_score(skill.score_expr, target, ctx);
}

}  // namespace

TEST_CASE("embedding basics") {
  CHECK(tokenize("Focus-Fire, the ZEALOT x2!") == std::vector<std::string>{"focus", "fire", "the", "zealot", "x2"});
  const Embedding empty = embed("  ...  ");
  CHECK(empty[0] == 1.0);
  for (std::size_t i = 1; i < kEmbeddingDim; ++i) REQUIRE(empty[i] == 0.0);
  const Embedding e = embed("kite the zealots kite");
  double norm = 0.0;
  for (double v : e) norm += v * v;
  CHECK(norm == doctest::Approx(1.0));
  CHECK(cosine(e, e) == doctest::Approx(1.0));
  CHECK(cosine(e, Embedding{}) == 0.0);
  CHECK(embed("Kite THE zealots kite") == e);
}

TEST_CASE("every bootstrapped skill retrieves itself first") {
  const SkillLibrary lib = bootstrap_library();
  CHECK(lib.size() == 5);
  for (const auto& s : lib.all()) {
    const auto top = lib.retrieve(s->doc, 1);
    REQUIRE(top.size() == 1);
    CHECK(top[0].skill->skill_id == s->skill_id);
    CHECK(top[0].similarity == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(SkillLibrary{}.retrieve("x", 1), SkillError);
}

TEST_CASE("A* first step lies on a shortest path") {
  Rng rng(17);
  int reachable = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Grid g = random_grid(rng);
    const Cell start{static_cast<int>(rng.below(kGridSize)), static_cast<int>(rng.below(kGridSize))};
    const Cell goal{static_cast<int>(rng.below(kGridSize)), static_cast<int>(rng.below(kGridSize))};
    const auto dist = oracle::grid_distances(g, start, goal);
    const auto at = [&](Cell c) { return dist[static_cast<std::size_t>(c.y * kGridSize + c.x)]; };
    const auto step = astar_first_step(g, start, goal);
    if (start == goal || at(start) == std::numeric_limits<int>::max()) {
      CHECK_FALSE(step.has_value());
      continue;
    }
    REQUIRE(step.has_value());
    const Cell next = step_cell(start, *step);
    REQUIRE(Grid::inside(next));
    CHECK(at(next) == at(start) - 1);
    ++reachable;
  }
  CHECK(reachable > 150);
}

TEST_CASE("A* prefers North among equal first moves") {
  const Grid g;
  CHECK(astar_first_step(g, {5, 5}, {5, 9}) == Direction::kNorth);
  CHECK(astar_first_step(g, {5, 5}, {5, 1}) == Direction::kSouth);
  CHECK(astar_first_step(g, {5, 5}, {9, 5}) == Direction::kEast);
  Grid wall;
  for (int x = 0; x < kGridSize; ++x) wall.set_blocked({x, 7}, true);
  CHECK_FALSE(astar_first_step(wall, {5, 5}, {5, 9}).has_value());
}

TEST_CASE("skill JSON and library directory round trip") {
  const SkillLibrary lib = bootstrap_library();
  for (const auto& s : lib.all()) {
    const Skill back = skill_from_json(skill_to_json(*s));
    CHECK(back.skill_id == s->skill_id);
    CHECK(back.doc == s->doc);
    CHECK(back.params == s->params);
    CHECK(back.control_template == s->control_template);
    CHECK(back.score_expr.canonical() == s->score_expr.canonical());
    CHECK(back.embedding == s->embedding);
  }
  const auto dir = std::filesystem::temp_directory_path() / "skirmish_skill_rt";
  std::filesystem::remove_all(dir);
  lib.dump(dir.string());
  const SkillLibrary again = SkillLibrary::load(dir.string());
  CHECK(again.size() == lib.size());
  for (const auto& s : lib.all()) CHECK(again.get(s->skill_id) != nullptr);
  std::filesystem::remove_all(dir);
}

TEST_CASE("make_skill rejects undefined parameters and duplicate ids") {
  CHECK_THROWS_AS(make_skill("x", "doc", "$missing * 2", ControlTemplate::kDefaultCenter, {}), SkillError);
  CHECK_THROWS_AS(make_skill("x", "doc", "1 +", ControlTemplate::kDefaultCenter, {}), SkillError);
  SkillLibrary lib;
  lib.add(make_skill("x", "doc", "$a", ControlTemplate::kDefaultCenter, {{"a", 1.0}}));
  CHECK_THROWS_AS(lib.add(make_skill("x", "doc", "1", ControlTemplate::kDefaultCenter, {})), SkillError);
}

TEST_CASE("synthesize_variant edits only what the payload names") {
  const SkillLibrary lib = bootstrap_library();
  const auto base = lib.all().front();
  const std::string canon = base->score_expr.canonical();

  const Skill p = synthesize_variant(*base, "raise focus", SynthesisTarget::kScoreTarget, "$focus_base = 1.5");
  CHECK(p.params.at("focus_base") == 1.5);
  CHECK(p.score_expr.canonical() == canon);
  CHECK(p.parent_id == base->skill_id);
  CHECK(p.skill_id != base->skill_id);

  const Skill r =
      synthesize_variant(*base, "simpler", SynthesisTarget::kScoreTarget, "priority(unit) * (2 - unit.health)");
  CHECK(r.score_expr.canonical() == parse_score_expr("priority(unit) * (2 - unit.health)").canonical());
  CHECK(r.params == base->params);

  const Skill t = synthesize_variant(*base, "engage", SynthesisTarget::kControlLogic, "template melee_engage");
  CHECK(t.control_template == ControlTemplate::kMeleeEngage);
  CHECK(t.score_expr.canonical() == canon);

  CHECK_THROWS_AS(synthesize_variant(*base, "d", SynthesisTarget::kScoreTarget, "template melee_engage"), SkillError);
  CHECK_THROWS_AS(synthesize_variant(*base, "d", SynthesisTarget::kScoreTarget, "priority(unit"), SkillError);
  CHECK_THROWS_AS(synthesize_variant(*base, "d", SynthesisTarget::kControlLogic, "template nowhere"), SkillError);
}

TEST_CASE("focus fire multiplies by focus_base per attacker") {
  const SkillLibrary lib = bootstrap_library();
  for (const auto& s : lib.all()) {
    const double base = s->params.at("focus_base");
    CHECK(base == 1.2);
    for (int n : {1, 2}) {
      const double ratio = enemy_score(*s, "stalker", "stalker", n) / enemy_score(*s, "stalker", "stalker", n - 1);
      CHECK(std::fabs(ratio - 1.2) < 1e-9);
    }
  }
}

TEST_CASE("melee overcommit halves the score") {
  const SkillLibrary lib = bootstrap_library();
  for (const auto& s : lib.all()) {
    const double lone = enemy_score(*s, "zergling", "zergling", 0);
    CHECK(enemy_score(*s, "zergling", "zergling", 3) / lone == 0.5);
    CHECK(enemy_score(*s, "zergling", "zergling", 4) / lone == 0.5);
    // Staying on the current target is exempt.
    const double stay = enemy_score(*s, "zergling", "zergling", 3, action::target(1));
    CHECK(stay / enemy_score(*s, "zergling", "zergling", 0, action::target(1)) ==
          doctest::Approx(std::pow(1.2, 3)));
  }
}

TEST_CASE("execute_skill always returns an available action") {
  Rng rng(23);
  const SkillLibrary lib = bootstrap_library();
  for (const auto& name : builtin_scenario_names()) {
    const auto spec = builtin_scenario(name);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      WorldState w = spawn_scenario(spec, seed);
      for (auto* team : {&w.allies, &w.enemies}) {
        for (auto& u : *team) u.pos = {rng.uniform(10, 22), rng.uniform(10, 22)};
      }
      for (int i = 0; i < static_cast<int>(w.allies.size()); ++i) {
        SkillContext ctx;
        ctx.view = observe(w, i);
        ctx.catalog = &spec.catalog;
        ctx.rng = &rng;
        for (const auto& s : lib.all()) {
          const int a = execute_skill(*s, ctx);
          CHECK(std::find(ctx.view.available_actions.begin(), ctx.view.available_actions.end(), a) !=
                ctx.view.available_actions.end());
        }
      }
    }
  }
}
