// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "oracles.hpp"
#include "skirmish/core/hash.hpp"
#include "skirmish/harness/harness.hpp"
#include "skirmish/obs/obs_text.hpp"
#include "skirmish/skills/tactics.hpp"

using namespace skirmish;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> seed_rates(const ExperimentReport& r) {
  std::vector<double> out;
  for (const auto& s : r.per_seed) out.push_back(s.win_rate);
  return out;
}

int total_synthesized(const ExperimentReport& r) {
  int n = 0;
  for (const auto& e : r.episodes) n += e.skills_synthesized;
  return n;
}

ExperimentConfig gate_config() {
  ExperimentConfig cfg;
  cfg.scenario = "protoss_5v5";
  cfg.seeds = {0, 1, 2, 3, 4};
  cfg.episodes_per_seed = 40;
  cfg.write_replays = false;
  return cfg;
}

Outcome comm_gain() {
  const auto t0 = Clock::now();
  ExperimentConfig with = gate_config();
  ExperimentConfig without = gate_config();
  without.max_hops = 0;
  const double a = run_experiment(with).agg.median_win_rate;
  const double b = run_experiment(without).agg.median_win_rate;
  const double secs = seconds_since(t0);
  return {a - b >= 0.15 && secs < 300, fmt("median hops=3 %.3f, hops=0 %.3f, %.0f s", a, b, secs)};
}

Outcome synthesis_gain() {
  const auto t0 = Clock::now();
  ExperimentConfig full = gate_config();
  ExperimentConfig plain = gate_config();
  plain.synthesis_enabled = false;
  const auto rf = run_experiment(full);
  const auto rp = run_experiment(plain);
  const double secs = seconds_since(t0);
  const auto a = seed_rates(rf), b = seed_rates(rp);
  int better = 0;
  for (std::size_t i = 0; i < a.size(); ++i) better += a[i] > b[i] ? 1 : 0;
  const int synthesized = total_synthesized(rf);
  const bool ok = rf.agg.median_win_rate >= rp.agg.median_win_rate - 0.02 && better >= 3 && synthesized > 0 &&
                  total_synthesized(rp) == 0 && secs < 600;
  return {ok, fmt("median full %.3f, no_synthesis %.3f, ", rf.agg.median_win_rate, rp.agg.median_win_rate) +
                  std::to_string(better) + "/5 seeds better, " + std::to_string(synthesized) + " skills, " +
                  fmt("%.0f s", secs)};
}

Outcome closure_matches() {
  Rng rng(1001);
  int bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(12));
    const int hops = static_cast<int>(rng.below(5));
    std::vector<Vec2> pos;
    std::vector<double> sight;
    std::vector<bool> alive;
    std::vector<std::vector<EntityRecord>> hop0(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      pos.push_back({rng.uniform(0, 32), rng.uniform(0, 32)});
      sight.push_back(rng.uniform(4, 14));
      alive.push_back(rng.uniform() < 0.9);
      const int k = static_cast<int>(rng.below(4));
      for (int j = 0; j < k; ++j) {
        EntityRecord r;
        r.key = {rng.uniform() < 0.7 ? Team::kEnemy : Team::kAlly, static_cast<int>(rng.below(6))};
        r.unit_type = "zealot";
        r.global_pos = {rng.uniform(0, 32), rng.uniform(0, 32)};
        r.health = rng.uniform();
        r.observed_at = static_cast<int>(rng.below(3));
        r.source_agent = i;
        bool dup = false;
        for (const auto& o : hop0[static_cast<std::size_t>(i)]) dup = dup || o.key == r.key;
        if (!dup) hop0[static_cast<std::size_t>(i)].push_back(r);
      }
    }
    const auto got = propagate(hop0, build_visibility_graph(pos, sight, alive), hops);
    const auto want = oracle::closure(hop0, oracle::visibility(pos, sight, alive), alive, hops);
    bool same = got.size() == want.size();
    for (std::size_t i = 0; same && i < want.size(); ++i) same = got[i] == want[i];
    bad += same ? 0 : 1;
  }
  return {bad == 0, std::to_string(1000 - bad) + "/1000 graphs match"};
}

Outcome chain() {
  auto spec = builtin_scenario("protoss_5v5");
  spec.n_allies = 4;
  spec.n_enemies = 2;
  spec.ally_mix = {{UnitKind::kStalker, 1.0}};
  spec.enemy_mix = {{UnitKind::kStalker, 1.0}};
  WorldState w = spawn_scenario(spec, 0);
  for (int i = 0; i < 4; ++i) w.allies[static_cast<std::size_t>(i)].pos = {2.0 + 6.0 * i, 16.0};
  w.enemies[0].pos = {30.0, 2.0};
  w.enemies[1].pos = {26.0, 16.0};
  w.spotter = {-1, 3};
  auto ego_sees = [&](int hops) -> std::optional<EntityRecord> {
    GlobalEntityMemory mem(4, hops);
    std::vector<std::vector<EntityRecord>> hop0;
    for (int i = 0; i < 4; ++i) hop0.push_back(record_local(i, observe(w, i), 0));
    mem.update(0, hop0, build_visibility_graph(w));
    const auto it = mem.knowledge(0).find({Team::kEnemy, 1});
    if (it == mem.knowledge(0).end()) return std::nullopt;
    return it->second;
  };
  const auto three = ego_sees(3);
  const auto two = ego_sees(2);
  const bool ok = three && three->hops == 3 && three->source_agent == 3 && !two;
  return {ok, std::string("max_hops=3 ") + (three ? "knows" : "misses") + " Enemy #1 via " +
                  (three ? std::to_string(three->hops) : std::string("-")) + " hops, max_hops=2 " +
                  (two ? "knows" : "misses") + " it"};
}

Outcome astar_matches() {
  const auto t0 = Clock::now();
  Rng rng(5005);
  int bad = 0;
  for (int trial = 0; trial < 500; ++trial) {
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
    const Cell start{static_cast<int>(rng.below(kGridSize)), static_cast<int>(rng.below(kGridSize))};
    const Cell goal{static_cast<int>(rng.below(kGridSize)), static_cast<int>(rng.below(kGridSize))};
    const auto dist = oracle::grid_distances(g, start, goal);
    const auto at = [&](Cell c) { return dist[static_cast<std::size_t>(c.y * kGridSize + c.x)]; };
    const auto step = astar_first_step(g, start, goal);
    const bool none = start == goal || at(start) == std::numeric_limits<int>::max();
    if (none) {
      bad += step ? 1 : 0;
      continue;
    }
    if (!step) {
      ++bad;
      continue;
    }
    const Cell next = step_cell(start, *step);
    bad += Grid::inside(next) && at(next) == at(start) - 1 ? 0 : 1;
  }
  const double secs = seconds_since(t0);
  return {bad == 0 && secs < 30, std::to_string(500 - bad) + fmt("/500 grids agree, %.2f s", secs)};
}

double enemy_score(const Skill& skill, const std::string& self_type, int attackers) {
  ObsData o;
  o.own_unit_type = self_type;
  o.own_health = 1.0;
  o.own_sight_range = 9;
  o.own_shoot_range = 6;
  o.last_action = action::kStop;
  for (int i = 1; i <= 4; ++i) {
    EntityView a{true, i, self_type, {-0.1 * i, 0.1}, 0.0, 1.0, 0.0, false, action::kStop};
    a.distance = std::hypot(a.position.x, a.position.y);
    if (i <= attackers) a.last_action = action::target(1);
    o.allies.push_back(a);
  }
  const EntityView target{false, 1, "stalker", {0.3, 0.4}, 0.5, 0.6, 0.2, true, 0};
  o.enemies.push_back(target);
  const TacticContext ctx{&o, &expert_priorities(), &expert_counters(), &skill.params};
  return eval_score(skill.score_expr, target, ctx);
}

Outcome focus_fire() {
  const SkillLibrary lib = bootstrap_library();
  double worst = 0.0;
  bool over = true;
  for (const auto& s : lib.all()) {
    for (int n : {1, 2}) {
      worst = std::max(worst, std::fabs(enemy_score(*s, "stalker", n) / enemy_score(*s, "stalker", n - 1) - 1.2));
    }
    over = over && enemy_score(*s, "zergling", 3) / enemy_score(*s, "zergling", 0) == 0.5;
  }
  return {worst <= 1e-9 && over, fmt("max |ratio - 1.2| = %.2e, overcommit ", worst) + (over ? "0.5" : "wrong")};
}

Outcome obs_roundtrip() {
  Rng rng(7007);
  int bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const ObsData o = oracle::random_obs(rng);
    try {
      const std::string text = render_obs(o);
      const ObsData back = parse_obs(text);
      bad += back == quantized(o) && render_obs(back) == text ? 0 : 1;
    } catch (const ObsParseError&) {
      ++bad;
    }
  }
  return {bad == 0, std::to_string(10000 - bad) + "/10000 observations round-trip"};
}

Outcome reproducible(const fs::path& root) {
  fs::remove_all(root);
  ExperimentConfig cfg = gate_config();
  cfg.write_replays = true;
  cfg.out_dir = (root / "a").string();
  const auto a = run_ablation(cfg);
  cfg.out_dir = (root / "b").string();
  const auto b = run_ablation(cfg);
  int files = 0, bad = 0;
  for (const auto& cond : a) {
    for (const char* f : {"summary.json"}) {
      ++files;
      bad += slurp(root / "a" / cond.name / f) == slurp(root / "b" / cond.name / f) ? 0 : 1;
    }
    for (const auto& seed : cond.report.summary.at("per_seed")) {
      for (const auto& rel : seed.at("replays")) {
        ++files;
        const std::string hb = hex64(fnv1a(slurp(root / "b" / cond.name / rel.get<std::string>())));
        const std::string ha = hex64(fnv1a(slurp(root / "a" / cond.name / rel.get<std::string>())));
        bad += ha == hb ? 0 : 1;
      }
    }
  }
  ++files;
  bad += slurp(root / "a" / "ablation.json") == slurp(root / "b" / "ablation.json") ? 0 : 1;
  for (std::size_t i = 0; i < a.size(); ++i) bad += a[i].report.summary == b[i].report.summary ? 0 : 1;
  return {bad == 0, std::to_string(files - bad) + "/" + std::to_string(files) + " files identical"};
}

Outcome retrieval() {
  const SkillLibrary lib = bootstrap_library();
  int hits = 0;
  for (const auto& s : lib.all()) hits += lib.retrieve(s->doc, 1).front().skill->skill_id == s->skill_id ? 1 : 0;
  return {hits == static_cast<int>(lib.size()) && hits > 0,
          std::to_string(hits) + "/" + std::to_string(lib.size()) + " skills top-1 for their own doc"};
}

Outcome reward_modes() {
  auto sparse = builtin_scenario("protoss_5v5");
  sparse.reward_mode = RewardMode::kSparse;
  EpisodeOptions opts;
  int bad_sparse = 0;
  for (std::uint64_t e = 0; e < 100; ++e) {
    const auto r = run_episode(sparse, mix_seed(424242, e), opts);
    bad_sparse += (r.ret == 0.0 || r.ret == 1.0) && r.ret == (r.win ? 1.0 : 0.0) ? 0 : 1;
  }
  const auto dense = builtin_scenario("protoss_5v5");
  double worst = 0.0;
  for (std::uint64_t e = 0; e < 20; ++e) {
    std::optional<WorldState> initial;
    double expected = 0.0;
    opts.on_step = [&](const WorldState& before, const StepResult& s) {
      if (!initial) initial = before;
      const double want = oracle::dense_reward(before, s.next, *initial);
      worst = std::max(worst, std::fabs(want - s.reward));
      expected += want;
    };
    const auto r = run_episode(dense, mix_seed(7, e), opts);
    worst = std::max(worst, std::fabs(expected - r.ret));
  }
  return {bad_sparse == 0 && worst <= 1e-9,
          std::to_string(100 - bad_sparse) + fmt("/100 sparse returns equal win, dense max error %.2e", worst)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::string work = (fs::temp_directory_path() / "skirmish_acceptance").string();
  app.add_option("--work", work, "Scratch directory for the reproducibility runs");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"communication gain", comm_gain},
      {"synthesis gain", synthesis_gain},
      {"gossip closure", closure_matches},
      {"four-agent chain", chain},
      {"A* optimality", astar_matches},
      {"focus fire and overcommit", focus_fire},
      {"observation round trip", obs_roundtrip},
      {"reproducibility", [&] { return reproducible(work); }},
      {"skill self-retrieval", retrieval},
      {"reward modes", reward_modes},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  fs::remove_all(work);
  return failed == 0 ? 0 : 1;
}
