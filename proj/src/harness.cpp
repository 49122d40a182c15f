#include "skirmish/harness/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "skirmish/comms/comms.hpp"
#include "skirmish/core/hash.hpp"
#include "skirmish/obs/obs_text.hpp"
#include "skirmish/planner/external.hpp"
#include "skirmish/skills/tactics.hpp"

namespace skirmish {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(BackendKind b) { return b == BackendKind::kMock ? "mock" : "external"; }

BackendKind backend_kind_from_string(std::string_view s) {
  if (s == "mock") return BackendKind::kMock;
  if (s == "external") return BackendKind::kExternal;
  throw std::invalid_argument("unknown backend '" + std::string(s) + "' (expected mock or external)");
}

void ExperimentConfig::validate() const {
  if (seeds.empty()) throw std::invalid_argument("config: seeds must be non-empty");
  if (max_hops < 0) throw std::invalid_argument("config: max_hops must be >= 0");
  if (episodes_per_seed <= 0) throw std::invalid_argument("config: episodes_per_seed must be > 0");
  if (decision_interval <= 0) throw std::invalid_argument("config: decision_interval must be > 0");
  if (ttl <= 0) throw std::invalid_argument("config: ttl must be > 0");
  if (workers < 0) throw std::invalid_argument("config: workers must be >= 0");
}

void apply_config_json(ExperimentConfig& cfg, const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("config file must hold a JSON object");
  static const std::vector<std::string> kKnown = {
      "scenario", "scenario_file", "seeds",       "episodes",  "backend", "max_hops",      "comm",
      "reflection", "synthesis",   "reward",      "decision_interval", "ttl", "skills_dir", "persist_library", "out", "write_replays",
      "workers"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(kKnown.begin(), kKnown.end(), key) == kKnown.end()) {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  try {
    if (j.contains("scenario")) cfg.scenario = j["scenario"].get<std::string>();
    if (j.contains("scenario_file")) cfg.scenario_file = j["scenario_file"].get<std::string>();
    if (j.contains("seeds")) {
      if (j["seeds"].is_number_integer()) {
        const int n = j["seeds"].get<int>();
        if (n <= 0) throw std::invalid_argument("config: seeds must be > 0");
        cfg.seeds.clear();
        for (int i = 0; i < n; ++i) cfg.seeds.push_back(static_cast<std::uint64_t>(i));
      } else {
        cfg.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
      }
    }
    if (j.contains("episodes")) cfg.episodes_per_seed = j["episodes"].get<int>();
    if (j.contains("backend")) cfg.backend = backend_kind_from_string(j["backend"].get<std::string>());
    if (j.contains("max_hops")) cfg.max_hops = j["max_hops"].get<int>();
    if (j.contains("comm")) cfg.comm_enabled = j["comm"].get<bool>();
    if (j.contains("reflection")) cfg.reflection_enabled = j["reflection"].get<bool>();
    if (j.contains("synthesis")) cfg.synthesis_enabled = j["synthesis"].get<bool>();
    if (j.contains("reward")) cfg.reward_mode = reward_mode_from_string(j["reward"].get<std::string>());
    if (j.contains("decision_interval")) cfg.decision_interval = j["decision_interval"].get<int>();
    if (j.contains("ttl")) cfg.ttl = j["ttl"].get<int>();
    if (j.contains("skills_dir")) cfg.skills_dir = j["skills_dir"].get<std::string>();
    if (j.contains("persist_library")) cfg.persist_library = j["persist_library"].get<bool>();
    if (j.contains("out")) cfg.out_dir = j["out"].get<std::string>();
    if (j.contains("write_replays")) cfg.write_replays = j["write_replays"].get<bool>();
    if (j.contains("workers")) cfg.workers = j["workers"].get<int>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  // Only settings that influence results; comm is folded into max_hops.
  json j = {
      {"scenario", cfg.scenario_file.empty() ? cfg.scenario : resolve_scenario(cfg).name},
      {"seeds", cfg.seeds},
      {"episodes", cfg.episodes_per_seed},
      {"backend", to_string(cfg.backend)},
      {"max_hops", cfg.effective_max_hops()},
      {"reflection", cfg.reflection_enabled},
      {"synthesis", cfg.synthesis_enabled},
      {"reward", to_string(resolve_scenario(cfg).reward_mode)},
      {"decision_interval", cfg.decision_interval},
      {"ttl", cfg.ttl},
      {"persist_library", cfg.persist_library},
      {"skills", cfg.skills_dir.empty() ? std::string("bootstrap") : cfg.skills_dir},
  };
  return j;
}

ScenarioSpec resolve_scenario(const ExperimentConfig& cfg) {
  ScenarioSpec spec = cfg.scenario_file.empty() ? builtin_scenario(cfg.scenario) : load_scenario_file(cfg.scenario_file);
  if (cfg.reward_mode) spec.reward_mode = *cfg.reward_mode;
  return spec;
}

namespace {

int nearest_living(const std::vector<UnitState>& units, Vec2 from, int skip = -1) {
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& u : units) {
    if (!u.alive || u.id == skip) continue;
    const double d = (u.pos - from).norm();
    if (d < best_d) {
      best_d = d;
      best = u.id;
    }
  }
  return best;
}

/// Available move that brings `self` closest to `goal`; nothing if none improves.
std::optional<int> greedy_move(const WorldState& w, const UnitState& self, const ActionMask& mask, Vec2 goal) {
  double best_d = (self.pos - goal).norm();
  std::optional<int> best;
  for (Direction d : kDirections) {
    const int a = move_action(d);
    if (!mask.contains(a)) continue;
    const double nd = (self.pos + direction_vector(d) * w.type_of(self).move_speed - goal).norm();
    if (nd < best_d) {
      best_d = nd;
      best = a;
    }
  }
  return best;
}

int idle(const ActionMask& mask) { return mask.contains(action::kStop) ? action::kStop : action::kNoOp; }

}  // namespace

std::vector<int> scripted_opponent(const WorldState& world) {
  std::vector<int> out(world.enemies.size(), action::kNoOp);
  for (const auto& self : world.enemies) {
    if (!self.alive) continue;
    const ActionMask mask = available_actions(world, Team::kEnemy, self.id);
    const UnitType& type = world.type_of(self);
    int& act = out[static_cast<std::size_t>(self.id)];

    if (type.is_healer) {
      // Most wounded teammate in reach, then stay with the nearest teammate.
      int target = -1;
      double lowest = 1.0;
      for (int a : mask.actions) {
        if (!action::is_target(a)) continue;
        const UnitState& mate = world.enemies[static_cast<std::size_t>(action::target_index(a))];
        if (mate.health < lowest) {
          lowest = mate.health;
          target = a;
        }
      }
      if (target >= 0) {
        act = target;
        continue;
      }
      const int mate = nearest_living(world.enemies, self.pos, self.id);
      std::optional<int> mv;
      if (mate >= 0 && (world.enemies[static_cast<std::size_t>(mate)].pos - self.pos).norm() > type.shoot_range / 2) {
        mv = greedy_move(world, self, mask, world.enemies[static_cast<std::size_t>(mate)].pos);
      }
      act = mv ? *mv : idle(mask);
      continue;
    }

    int target = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int a : mask.actions) {
      if (!action::is_target(a)) continue;
      const double d = (world.allies[static_cast<std::size_t>(action::target_index(a))].pos - self.pos).norm();
      if (d < best_d) {
        best_d = d;
        target = a;
      }
    }
    if (target >= 0) {
      act = target;
      continue;
    }
    const int ally = nearest_living(world.allies, self.pos);
    std::optional<int> mv;
    if (ally >= 0) mv = greedy_move(world, self, mask, world.allies[static_cast<std::size_t>(ally)].pos);
    act = mv ? *mv : idle(mask);
  }
  return out;
}

namespace {

const SkillLibrary& base_library() {
  static const SkillLibrary lib = bootstrap_library();
  return lib;
}

std::unique_ptr<PlannerBackend> make_backend(BackendKind kind) {
  if (kind == BackendKind::kExternal) return std::make_unique<ExternalBackend>(ExternalConfig::from_env());
  return std::make_unique<MockBackend>();
}

std::vector<std::vector<KnownEntity>> knowledge_snapshot(const GlobalEntityMemory& memory, int n) {
  std::vector<std::vector<KnownEntity>> out;
  for (int i = 0; i < n; ++i) {
    std::vector<KnownEntity> list;
    for (const auto& [key, rec] : memory.knowledge(i)) {
      list.push_back({key.team, key.id, rec.hops, rec.observed_at, rec.source_agent});
    }
    out.push_back(std::move(list));
  }
  return out;
}

ReplayRecord state_record(const WorldState& w) {
  ReplayRecord r;
  r.t = w.timestep;
  r.allies = w.allies;
  r.enemies = w.enemies;
  r.spotter = w.spotter;
  r.world_hash = hex64(w.hash());
  return r;
}

}  // namespace

EpisodeResult run_episode(const ScenarioSpec& spec, std::uint64_t episode_seed, const EpisodeOptions& opts,
                          std::vector<ReplayRecord>* replay) {
  EpisodeResult res;
  WorldState world = spawn_scenario(spec, episode_seed);
  const int n = static_cast<int>(world.allies.size());

  SkillLibrary own;
  if (!opts.shared_library) own = opts.library ? *opts.library : base_library();
  SkillLibrary& library = opts.shared_library ? *opts.shared_library : own;
  auto backend = make_backend(opts.backend);
  Rng rng(mix_seed(episode_seed, 0x7ac71c5));
  GlobalEntityMemory memory(n, opts.max_hops, opts.ttl);

  std::vector<AgentPlanner> planners;
  planners.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    planners.emplace_back(i, opts.planner, backend.get(), &library, &rng, &spec.catalog);
  }
  std::vector<std::string> tasks(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) tasks[static_cast<std::size_t>(i)] = planners[static_cast<std::size_t>(i)].task_text(
      to_string(world.allies[static_cast<std::size_t>(i)].kind));

  const std::size_t before = library.size();
  bool first = true;
  while (true) {
    const int t = world.timestep;

    // Communication strictly precedes every agent's perception.
    std::vector<std::vector<EntityRecord>> hop0;
    for (int i = 0; i < n; ++i) hop0.push_back(record_local(i, observe(world, i), t));
    memory.update(t, hop0, build_visibility_graph(world));
    TargetGrants grants;
    for (int i = 0; i < n; ++i) grants.push_back(memory.fresh_enemies(i, t));

    ReplayRecord rec = state_record(world);
    if (first) {
      rec.meta = {{"scenario", spec.name},
                  {"seed", episode_seed},
                  {"max_hops", opts.max_hops},
                  {"ttl", opts.ttl},
                  {"decision_interval", opts.planner.decision_interval},
                  {"reflection", opts.planner.reflection_enabled},
                  {"synthesis", opts.planner.synthesis_enabled},
                  {"backend", to_string(opts.backend)},
                  {"reward", to_string(spec.reward_mode)}};
      first = false;
    }
    rec.knowledge = knowledge_snapshot(memory, n);

    JointAction joint;
    std::vector<std::uint64_t> digests;
    for (int i = 0; i < n; ++i) {
      const ObsData obs = observe(world, i, &grants);
      digests.push_back(obs_digest(obs));
      rec.obs_digests.push_back(hex64(digests.back()));
      AgentStepInput in;
      in.t = t;
      in.scenario = spec.name;
      in.obs = &obs;
      in.knowledge = &memory.knowledge(i);
      for (int j = 0; j < n; ++j) {
        if (j != i) in.ally_tasks.push_back(tasks[static_cast<std::size_t>(j)]);
      }
      AgentStepTrace trace = planners[static_cast<std::size_t>(i)].step(in);
      joint.allies.push_back(trace.action);
      rec.skills.push_back(trace.skill_id);
      if (trace.decided) {
        AgentEvent ev;
        ev.agent = i;
        ev.region_of_interest = trace.region_of_interest;
        if (trace.reflection) {
          ev.reflection_success = trace.reflection->success;
          ev.reflection_reward = trace.reflection->skill_reward;
        }
        if (trace.subtask) ev.subtask = trace.subtask->text;
        ev.synthesized_skill = trace.synthesized_skill;
        ev.synthesis_error = trace.synthesis_error;
        ev.warnings = trace.warnings;
        rec.events.push_back(std::move(ev));
      }
    }
    joint.enemies = scripted_opponent(world);

    StepResult sr = step(world, joint, &grants);
    for (int i = 0; i < n; ++i) {
      planners[static_cast<std::size_t>(i)].record_reward(t, digests[static_cast<std::size_t>(i)], sr.reward);
      tasks[static_cast<std::size_t>(i)] =
          planners[static_cast<std::size_t>(i)].task_text(to_string(world.allies[static_cast<std::size_t>(i)].kind));
    }
    if (opts.on_step) opts.on_step(world, sr);

    rec.ally_actions = joint.allies;
    rec.enemy_actions = joint.enemies;
    rec.reward = sr.reward;
    if (replay) replay->push_back(std::move(rec));

    res.ret += sr.reward;
    world = std::move(sr.next);
    if (sr.done) {
      res.win = sr.info.win;
      break;
    }
  }
  res.length = world.timestep;
  if (replay) {
    ReplayRecord last = state_record(world);
    last.done = true;
    replay->push_back(std::move(last));
  }
  res.backend_failure_count = backend->failures();
  res.skills_synthesized = static_cast<int>(library.size() - before);
  return res;
}

double median(std::vector<double> xs) {
  if (xs.empty()) throw std::invalid_argument("median of empty input");
  std::sort(xs.begin(), xs.end());
  const std::size_t m = xs.size() / 2;
  return xs.size() % 2 == 1 ? xs[m] : (xs[m - 1] + xs[m]) / 2.0;
}

double population_std(const std::vector<double>& xs) {
  if (xs.empty()) throw std::invalid_argument("std of empty input");
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size()));
}

namespace {

std::vector<SeedSummary> per_seed(const std::vector<EpisodeResult>& results) {
  std::vector<SeedSummary> out;
  std::vector<int> counts;
  for (const auto& r : results) {
    auto it = std::find_if(out.begin(), out.end(), [&](const SeedSummary& s) { return s.seed == r.seed; });
    if (it == out.end()) {
      out.push_back({r.seed, 0.0, 0.0, 0.0});
      counts.push_back(0);
      it = out.end() - 1;
    }
    const auto k = static_cast<std::size_t>(it - out.begin());
    it->win_rate += r.win ? 1.0 : 0.0;
    it->mean_return += r.ret;
    it->mean_length += r.length;
    ++counts[k];
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k].win_rate /= counts[k];
    out[k].mean_return /= counts[k];
    out[k].mean_length /= counts[k];
  }
  return out;
}

}  // namespace

Aggregate aggregate(const std::vector<EpisodeResult>& results) {
  if (results.empty()) throw std::invalid_argument("aggregate: no episode results");
  const auto seeds = per_seed(results);
  std::vector<double> rates;
  for (const auto& s : seeds) rates.push_back(s.win_rate);
  Aggregate a;
  a.median_win_rate = median(rates);
  a.std_win_rate = population_std(rates);
  for (const auto& r : results) {
    a.mean_return += r.ret;
    a.mean_length += r.length;
  }
  a.mean_return /= static_cast<double>(results.size());
  a.mean_length /= static_cast<double>(results.size());
  return a;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const ScenarioSpec spec = resolve_scenario(cfg);
  validate(spec);

  EpisodeOptions opts;
  opts.planner.decision_interval = cfg.decision_interval;
  opts.planner.reflection_enabled = cfg.reflection_enabled;
  opts.planner.synthesis_enabled = cfg.synthesis_enabled;
  opts.max_hops = cfg.effective_max_hops();
  opts.ttl = cfg.ttl;
  opts.backend = cfg.backend;
  if (!cfg.skills_dir.empty()) opts.library = std::make_shared<const SkillLibrary>(SkillLibrary::load(cfg.skills_dir));

  const bool writing = !cfg.out_dir.empty();
  const fs::path out(cfg.out_dir);
  if (writing && cfg.write_replays) fs::create_directories(out / "replays");
  if (writing) fs::create_directories(out);

  // A job is a run of consecutive episodes of one seed. With a persistent
  // library the whole seed is one job so its episodes stay in order.
  struct Job {
    std::size_t seed_index;
    int first;
    int count;
  };
  const int E = cfg.episodes_per_seed;
  std::vector<Job> jobs;
  for (std::size_t si = 0; si < cfg.seeds.size(); ++si) {
    if (cfg.persist_library) {
      jobs.push_back({si, 0, E});
    } else {
      for (int e = 0; e < E; ++e) jobs.push_back({si, e, 1});
    }
  }
  std::vector<EpisodeResult> results(cfg.seeds.size() * static_cast<std::size_t>(E));

  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto worker = [&] {
    while (true) {
      const std::size_t k = next.fetch_add(1);
      if (k >= jobs.size()) return;
      try {
        const Job& job = jobs[k];
        const std::uint64_t seed = cfg.seeds[job.seed_index];
        SkillLibrary library = opts.library ? *opts.library : bootstrap_library();
        EpisodeOptions local = opts;
        if (cfg.persist_library) local.shared_library = &library;
        for (int e = job.first; e < job.first + job.count; ++e) {
          std::vector<ReplayRecord> replay;
          EpisodeResult r = run_episode(spec, mix_seed(seed, static_cast<std::uint64_t>(e)), local, &replay);
          r.seed = seed;
          r.episode = e;
          const std::string text = serialize_replay(replay);
          r.replay_hash = hex64(fnv1a(text));
          if (writing && cfg.write_replays) {
            const std::string name = "replays/seed" + std::to_string(seed) + "_ep" + std::to_string(e) + ".jsonl";
            std::ofstream f(out / name, std::ios::binary);
            if (!f) throw std::runtime_error("cannot write " + (out / name).string());
            f << text;
            r.replay_path = name;
          }
          results[job.seed_index * static_cast<std::size_t>(E) + static_cast<std::size_t>(e)] = std::move(r);
        }
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (!err) err = std::current_exception();
        next = jobs.size();
      }
    }
  };
  unsigned n_workers = cfg.workers > 0 ? static_cast<unsigned>(cfg.workers) : std::thread::hardware_concurrency();
  n_workers = std::max(1u, std::min<unsigned>(n_workers, static_cast<unsigned>(jobs.size())));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (err) std::rethrow_exception(err);

  ExperimentReport rep;
  rep.episodes = std::move(results);
  rep.per_seed = per_seed(rep.episodes);
  rep.agg = aggregate(rep.episodes);

  json seeds = json::array();
  int failures = 0, synthesized = 0;
  for (const auto& s : rep.per_seed) {
    json hashes = json::array(), paths = json::array();
    for (const auto& e : rep.episodes) {
      if (e.seed != s.seed) continue;
      hashes.push_back(e.replay_hash);
      if (!e.replay_path.empty()) paths.push_back(e.replay_path);
    }
    json entry = {{"seed", s.seed},
                  {"win_rate", s.win_rate},
                  {"mean_return", s.mean_return},
                  {"mean_length", s.mean_length},
                  {"replay_hashes", hashes}};
    if (!paths.empty()) entry["replays"] = paths;
    seeds.push_back(std::move(entry));
  }
  for (const auto& e : rep.episodes) {
    failures += e.backend_failure_count;
    synthesized += e.skills_synthesized;
  }
  rep.summary = {{"schema_version", 1},
                 {"config", config_to_json(cfg)},
                 {"per_seed", seeds},
                 {"median_win_rate", rep.agg.median_win_rate},
                 {"std_win_rate", rep.agg.std_win_rate},
                 {"mean_return", rep.agg.mean_return},
                 {"mean_length", rep.agg.mean_length},
                 {"backend_failures", failures},
                 {"skills_synthesized", synthesized}};
  if (writing) {
    std::ofstream f(out / "summary.json", std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (out / "summary.json").string());
    f << rep.summary.dump(2) << '\n';
  }
  return rep;
}

std::vector<AblationCondition> run_ablation(const ExperimentConfig& base) {
  std::vector<std::pair<std::string, ExperimentConfig>> grid;
  grid.emplace_back("full", base);
  grid.emplace_back("no_comm", base);
  grid.back().second.comm_enabled = false;
  grid.emplace_back("no_reflection", base);
  grid.back().second.reflection_enabled = false;
  grid.emplace_back("no_synthesis", base);
  grid.back().second.synthesis_enabled = false;

  std::vector<AblationCondition> out;
  json table = json::object();
  for (auto& [name, cfg] : grid) {
    if (!base.out_dir.empty()) cfg.out_dir = (fs::path(base.out_dir) / name).string();
    AblationCondition c{name, run_experiment(cfg)};
    table[name] = {{"median_win_rate", c.report.agg.median_win_rate},
                   {"std_win_rate", c.report.agg.std_win_rate},
                   {"mean_return", c.report.agg.mean_return},
                   {"mean_length", c.report.agg.mean_length}};
    out.push_back(std::move(c));
  }
  if (!base.out_dir.empty()) {
    std::ofstream f(fs::path(base.out_dir) / "ablation.json", std::ios::binary);
    if (!f) throw std::runtime_error("cannot write ablation.json");
    f << json{{"schema_version", 1}, {"config", config_to_json(base)}, {"conditions", table}}.dump(2) << '\n';
  }
  return out;
}

}  // namespace skirmish
