#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "skirmish/core/hash.hpp"
#include "skirmish/harness/harness.hpp"

using namespace skirmish;
namespace fs = std::filesystem;

namespace {

EpisodeResult result(std::uint64_t seed, bool win, double ret = 0.0, int length = 10) {
  EpisodeResult r;
  r.seed = seed;
  r.win = win;
  r.ret = ret;
  r.length = length;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.seeds = {0, 1};
  cfg.episodes_per_seed = 2;
  cfg.workers = 2;
  return cfg;
}

}  // namespace

TEST_CASE("aggregate uses median and population std of seed win rates") {
  std::vector<EpisodeResult> rs;
  const std::vector<int> wins = {1, 2, 3, 2, 2};
  for (std::uint64_t s = 0; s < 5; ++s) {
    for (int e = 0; e < 5; ++e) rs.push_back(result(s, e < wins[s], e, 10 + e));
  }
  const Aggregate a = aggregate(rs);
  const std::vector<double> rates = {0.2, 0.4, 0.6, 0.4, 0.4};
  CHECK(a.median_win_rate == doctest::Approx(oracle::median(rates)));
  CHECK(a.median_win_rate == doctest::Approx(0.4));
  CHECK(a.std_win_rate == doctest::Approx(oracle::pstdev(rates)));
  CHECK(a.mean_return == doctest::Approx(2.0));
  CHECK(a.mean_length == doctest::Approx(12.0));

  const Aggregate one = aggregate({result(3, true), result(3, false)});
  CHECK(one.median_win_rate == 0.5);
  CHECK(one.std_win_rate == 0.0);
  CHECK_THROWS_AS(aggregate({}), std::invalid_argument);

  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> xs(1 + rng.below(9));
    for (auto& x : xs) x = rng.uniform();
    CHECK(median(xs) == doctest::Approx(oracle::median(xs)));
    CHECK(population_std(xs) == doctest::Approx(oracle::pstdev(xs)));
  }
}

TEST_CASE("replay records survive a file round trip") {
  const auto spec = builtin_scenario("protoss_5v5");
  EpisodeOptions opts;
  std::vector<ReplayRecord> records;
  const auto r = run_episode(spec, 12, opts, &records);
  REQUIRE(records.size() == static_cast<std::size_t>(r.length) + 1);
  CHECK(records.front().meta.is_object());
  CHECK(records.back().done);
  for (std::size_t i = 0; i + 1 < records.size(); ++i) CHECK_FALSE(records[i].done);
  for (const auto& rec : records) {
    for (const auto& known : rec.knowledge) {
      for (const auto& k : known) CHECK(k.hops <= opts.max_hops);
    }
  }
  const auto path = fs::temp_directory_path() / "skirmish_replay_rt.jsonl";
  write_replay(path.string(), records);
  CHECK(read_replay(path.string()) == records);
  CHECK(hex64(fnv1a(slurp(path))) == hex64(fnv1a(serialize_replay(records))));
  fs::remove(path);

  auto j = replay_record_to_json(records[0]);
  j["schema_version"] = 99;
  CHECK_THROWS_AS(replay_record_from_json(j), ReplayError);
  CHECK_THROWS_AS(parse_replay("{not json}\n"), ReplayError);
}

TEST_CASE("episodes are deterministic and report the summed reward") {
  const auto spec = builtin_scenario("terran_5v5");
  double summed = 0.0;
  int steps = 0;
  EpisodeOptions opts;
  opts.on_step = [&](const WorldState&, const StepResult& s) {
    summed += s.reward;
    ++steps;
  };
  const auto a = run_episode(spec, 5, opts);
  CHECK(a.ret == doctest::Approx(summed).epsilon(1e-12));
  CHECK(a.length == steps);
  opts.on_step = nullptr;
  std::vector<ReplayRecord> ra, rb;
  const auto x = run_episode(spec, 5, opts, &ra);
  const auto y = run_episode(spec, 5, opts, &rb);
  CHECK(x.win == y.win);
  CHECK(x.ret == y.ret);
  CHECK(serialize_replay(ra) == serialize_replay(rb));
}

TEST_CASE("scripted opponent attacks in range, else closes in") {
  auto spec = builtin_scenario("protoss_5v5");
  spec.enemy_mix = {{UnitKind::kStalker, 1.0}};
  spec.ally_mix = {{UnitKind::kStalker, 1.0}};
  WorldState w = spawn_scenario(spec, 0);
  for (auto& u : w.allies) u.pos = {2, 2};
  for (auto& u : w.enemies) u.pos = {30, 30};
  w.allies[2].pos = {20, 16};
  w.enemies[0].pos = {24, 16};
  w.enemies[1].pos = {30, 16};
  const auto acts = scripted_opponent(w);
  REQUIRE(acts.size() == w.enemies.size());
  CHECK(acts[0] == action::target(2));
  CHECK(acts[1] == action::kWest);
  for (std::size_t i = 0; i < acts.size(); ++i) {
    CHECK(available_actions(w, Team::kEnemy, static_cast<int>(i)).contains(acts[i]));
  }
}

TEST_CASE("config JSON overrides named fields only") {
  ExperimentConfig cfg;
  apply_config_json(cfg, {{"scenario", "zerg_5v5"}, {"seeds", 3}, {"episodes", 7}, {"comm", false}});
  CHECK(cfg.scenario == "zerg_5v5");
  CHECK(cfg.seeds == std::vector<std::uint64_t>{0, 1, 2});
  CHECK(cfg.episodes_per_seed == 7);
  CHECK(cfg.effective_max_hops() == 0);
  CHECK(cfg.reflection_enabled);
  apply_config_json(cfg, {{"seeds", {4, 9}}, {"reward", "sparse"}});
  CHECK(cfg.seeds == std::vector<std::uint64_t>{4, 9});
  CHECK(cfg.reward_mode == RewardMode::kSparse);
  CHECK_THROWS(apply_config_json(cfg, {{"colour", "blue"}}));
  const auto j = config_to_json(cfg);
  CHECK(j.at("max_hops") == 0);
  CHECK(j.at("scenario") == "zerg_5v5");
  ExperimentConfig bad;
  bad.episodes_per_seed = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("no_comm is the same experiment as zero hops") {
  ExperimentConfig a = small_config();
  a.comm_enabled = false;
  ExperimentConfig b = small_config();
  b.max_hops = 0;
  const auto ra = run_experiment(a);
  const auto rb = run_experiment(b);
  CHECK(ra.summary.dump() == rb.summary.dump());
}

TEST_CASE("experiment output is reproducible across directories") {
  const auto root = fs::temp_directory_path() / "skirmish_exp";
  fs::remove_all(root);
  ExperimentConfig cfg = small_config();
  cfg.out_dir = (root / "a").string();
  run_experiment(cfg);
  cfg.out_dir = (root / "b").string();
  cfg.workers = 1;
  const auto rep = run_experiment(cfg);
  CHECK(slurp(root / "a" / "summary.json") == slurp(root / "b" / "summary.json"));
  for (const auto& seed : rep.summary.at("per_seed")) {
    const auto& paths = seed.at("replays");
    const auto& hashes = seed.at("replay_hashes");
    REQUIRE(paths.size() == 2);
    for (std::size_t i = 0; i < paths.size(); ++i) {
      const std::string rel = paths[i];
      CHECK(fs::path(rel).is_relative());
      CHECK(hex64(fnv1a(slurp(root / "a" / rel))) == hashes[i].get<std::string>());
    }
  }
  fs::remove_all(root);
}
