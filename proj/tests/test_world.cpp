#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "skirmish/world/world.hpp"

using namespace skirmish;

namespace {

JointAction random_joint(const WorldState& w, Rng& rng, const TargetGrants* grants = nullptr) {
  JointAction j;
  for (const auto& u : w.allies) {
    const auto m = available_actions(w, Team::kAlly, u.id, grants);
    j.allies.push_back(m.actions[rng.below(m.actions.size())]);
  }
  for (const auto& u : w.enemies) {
    const auto m = available_actions(w, Team::kEnemy, u.id);
    j.enemies.push_back(m.actions[rng.below(m.actions.size())]);
  }
  return j;
}

/// Nudges every unit toward the middle so fights happen under random play.
WorldState crowded(const std::string& scenario, std::uint64_t seed) {
  WorldState w = spawn_scenario(builtin_scenario(scenario), seed);
  Rng rng(seed);
  for (auto* team : {&w.allies, &w.enemies}) {
    for (auto& u : *team) u.pos = {rng.uniform(12, 20), rng.uniform(12, 20)};
  }
  return w;
}

}  // namespace

TEST_CASE("spawn is a pure function of scenario and seed") {
  const auto spec = builtin_scenario("protoss_5v5");
  CHECK(spawn_scenario(spec, 7).hash() == spawn_scenario(spec, 7).hash());
  CHECK(spawn_scenario(spec, 7).hash() != spawn_scenario(spec, 8).hash());
}

TEST_CASE("spawn respects rectangles and mirrors ally types") {
  for (const auto& name : builtin_scenario_names()) {
    const auto spec = builtin_scenario(name);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto w = spawn_scenario(spec, seed);
      REQUIRE(w.allies.size() == static_cast<std::size_t>(spec.n_allies));
      REQUIRE(w.enemies.size() == static_cast<std::size_t>(spec.n_enemies));
      for (const auto& u : w.allies) {
        CHECK(u.pos.x >= spec.ally_spawn.x0);
        CHECK(u.pos.x <= spec.ally_spawn.x1);
        CHECK(u.pos.y >= spec.ally_spawn.y0);
        CHECK(u.pos.y <= spec.ally_spawn.y1);
        CHECK(u.health == 1.0);
      }
      for (std::size_t i = 0; i < w.allies.size() && i < w.enemies.size(); ++i) {
        CHECK(w.enemies[i].kind == w.allies[i].kind);
      }
      CHECK(w.timestep == 0);
    }
  }
}

TEST_CASE("action masks agree with a brute-force range check") {
  Rng rng(11);
  int checked = 0;
  for (const auto& name : builtin_scenario_names()) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      WorldState w = crowded(name, seed);
      for (int t = 0; t < 25; ++t) {
        for (const auto& self : w.enemies) {
          const auto m = available_actions(w, Team::kEnemy, self.id);
          if (!self.alive) {
            CHECK(m.actions == std::vector<int>{0});
            continue;
          }
          const UnitType& type = w.spec->catalog[self.kind];
          const auto& targets = type.is_healer ? w.enemies : w.allies;
          for (const auto& o : targets) {
            const double d = std::hypot(o.pos.x - self.pos.x, o.pos.y - self.pos.y);
            bool expect = o.alive && d <= type.shoot_range;
            if (type.is_healer) expect = expect && o.id != self.id && d < type.sight_range;
            CHECK(m.contains(action::target(o.id)) == expect);
            ++checked;
          }
        }
        for (const auto& self : w.allies) {
          if (!self.alive) continue;
          const UnitType& type = w.spec->catalog[self.kind];
          if (type.is_healer) continue;
          const auto m = available_actions(w, Team::kAlly, self.id);
          for (const auto& e : w.enemies) {
            const double d = std::hypot(e.pos.x - self.pos.x, e.pos.y - self.pos.y);
            const bool sees = w.spotter[static_cast<std::size_t>(e.id)] == self.id && d < type.sight_range;
            CHECK(m.contains(action::target(e.id)) == (e.alive && d <= type.shoot_range && sees));
            ++checked;
          }
        }
        auto r = step(w, random_joint(w, rng));
        w = r.next;
        if (r.done) break;
      }
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("moves stay inside the map") {
  auto w = spawn_scenario(builtin_scenario("terran_5v5"), 3);
  w.allies[0].pos = {0.2, 31.5};
  const auto m = available_actions(w, Team::kAlly, 0);
  CHECK_FALSE(m.contains(action::kNorth));
  CHECK_FALSE(m.contains(action::kWest));
  CHECK(m.contains(action::kSouth));
  CHECK(m.contains(action::kEast));
}

TEST_CASE("grants add targets only inside shoot range") {
  auto w = spawn_scenario(builtin_scenario("protoss_5v5"), 1);
  for (auto& u : w.allies) u.pos = {2, 2};
  w.allies[0].kind = UnitKind::kStalker;
  w.allies[0].pos = {10, 10};
  w.enemies[0].pos = {14, 10};
  w.enemies[1].pos = {25, 25};
  for (auto& s : w.spotter) s = 4;
  const TargetGrants none(w.allies.size());
  TargetGrants grants(w.allies.size());
  grants[0] = {0, 1};
  CHECK_FALSE(available_actions(w, Team::kAlly, 0, &none).contains(action::target(0)));
  CHECK(available_actions(w, Team::kAlly, 0, &grants).contains(action::target(0)));
  CHECK_FALSE(available_actions(w, Team::kAlly, 0, &grants).contains(action::target(1)));
}

TEST_CASE("step rejects actions outside the mask") {
  auto w = spawn_scenario(builtin_scenario("protoss_5v5"), 2);
  JointAction j{std::vector<int>(5, action::kStop), std::vector<int>(5, action::kStop)};
  j.allies[2] = action::target(4);
  try {
    step(w, j);
    FAIL("expected ActionRejected");
  } catch (const ActionRejected& e) {
    const std::string msg = e.what();
    CHECK(msg.find("ally agent 2") != std::string::npos);
    CHECK(msg.find("action 10") != std::string::npos);
  }
  j.allies.pop_back();
  CHECK_THROWS_AS(step(w, j), ActionRejected);
}

TEST_CASE("dense reward matches the accounting oracle") {
  Rng rng(5);
  int steps = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const WorldState initial = crowded("protoss_5v5", seed);
    WorldState w = initial;
    while (true) {
      auto r = step(w, random_joint(w, rng));
      CHECK(r.reward == doctest::Approx(oracle::dense_reward(w, r.next, initial)).epsilon(1e-12));
      ++steps;
      w = r.next;
      if (r.done) break;
    }
  }
  CHECK(steps > 100);
}

TEST_CASE("a perfect dense win sums to the target") {
  auto w = spawn_scenario(builtin_scenario("protoss_5v5"), 4);
  double full = 0.0;
  for (const auto& e : w.enemies) full += oracle::hitpoints(w, e);
  CHECK((full + 10.0 * 5 + 200.0) / dense_reward_scale(w) == doctest::Approx(kDenseRewardTarget));
}

TEST_CASE("sparse reward is the win flag") {
  Rng rng(9);
  auto spec = builtin_scenario("zerg_5v5");
  spec.reward_mode = RewardMode::kSparse;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    WorldState w = spawn_scenario(spec, seed);
    for (auto* team : {&w.allies, &w.enemies}) {
      for (auto& u : *team) u.pos = {rng.uniform(14, 18), rng.uniform(14, 18)};
    }
    while (true) {
      auto r = step(w, random_joint(w, rng));
      CHECK(r.reward == (r.info.win ? 1.0 : 0.0));
      w = r.next;
      if (r.done) break;
    }
  }
}

TEST_CASE("shields absorb damage before health") {
  auto spec = builtin_scenario("protoss_5v5");
  WorldState w = spawn_scenario(spec, 0);
  for (auto& u : w.allies) u.pos = {1, 1};
  for (auto& u : w.enemies) u.pos = {30, 30};
  w.allies[0].kind = UnitKind::kStalker;
  w.enemies[0].kind = UnitKind::kZealot;
  w.allies[0].pos = {10, 10};
  w.enemies[0].pos = {13, 10};
  w.spotter[0] = 0;
  const UnitType& zealot = spec.catalog[UnitKind::kZealot];
  const UnitType& stalker = spec.catalog[UnitKind::kStalker];
  JointAction j{std::vector<int>(5, action::kStop), std::vector<int>(5, action::kStop)};
  j.allies[0] = action::target(0);
  auto r = step(w, j);
  const auto& hit = r.next.enemies[0];
  const double shield_hp = zealot.max_shield;
  if (stalker.damage_per_hit <= shield_hp) {
    CHECK(hit.health == 1.0);
    CHECK(hit.shield == doctest::Approx(1.0 - stalker.damage_per_hit / shield_hp));
  } else {
    CHECK(hit.shield == 0.0);
  }
  CHECK(r.info.damage_dealt == doctest::Approx(stalker.damage_per_hit));
  CHECK(r.next.allies[0].cooldown == stalker.attack_cooldown);
}

TEST_CASE("dead agents observe nothing and may only no-op") {
  auto w = spawn_scenario(builtin_scenario("terran_5v5"), 1);
  w.allies[3].alive = false;
  w.allies[3].health = 0.0;
  const ObsData o = observe(w, 3);
  CHECK_FALSE(o.alive);
  CHECK(o.available_actions == std::vector<int>{0});
  CHECK(o.allies.empty());
  CHECK(o.enemies.empty());
}

TEST_CASE("first spotter keeps the enemy until it dies") {
  auto w = spawn_scenario(builtin_scenario("protoss_5v5"), 0);
  for (auto& u : w.allies) u.pos = {2, 2};
  for (auto& u : w.enemies) u.pos = {30, 30};
  w.allies[1].pos = {10, 16};
  w.allies[2].pos = {12, 16};
  w.enemies[0].pos = {16, 16};
  JointAction stop{std::vector<int>(5, action::kStop), std::vector<int>(5, action::kStop)};
  auto r = step(w, stop);
  CHECK(r.next.spotter[0] == 1);
  CHECK(ally_sees_enemy(r.next, 1, 0));
  CHECK_FALSE(ally_sees_enemy(r.next, 2, 0));
  w = r.next;
  w.allies[1].alive = false;
  w.allies[1].health = 0.0;
  stop.allies[1] = action::kNoOp;
  r = step(w, stop);
  CHECK(r.next.spotter[0] == 2);
}
