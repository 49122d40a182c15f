// Command-line front end: run, ablation, replay, skills.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "skirmish/harness/harness.hpp"
#include "skirmish/harness/replay.hpp"
#include "skirmish/skills/tactics.hpp"

using namespace skirmish;
using nlohmann::json;

namespace {

struct RunFlags {
  std::string config_file;
  std::string scenario;
  std::string scenario_file;
  int seeds = 0;
  int episodes = 0;
  std::string backend;
  int max_hops = -1;
  bool no_comm = false;
  bool no_reflection = false;
  bool no_synthesis = false;
  std::string reward;
  std::string skills_dir;
  std::string out;
  int workers = -1;
  bool no_replays = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--config", f.config_file, "JSON config file; flags override it")->check(CLI::ExistingFile);
  cmd->add_option("--scenario", f.scenario, "Built-in scenario name");
  cmd->add_option("--scenario-file", f.scenario_file, "Scenario JSON file")->check(CLI::ExistingFile);
  cmd->add_option("--seeds", f.seeds, "Number of seeds (0..n-1)")->check(CLI::PositiveNumber);
  cmd->add_option("--episodes", f.episodes, "Episodes per seed")->check(CLI::PositiveNumber);
  cmd->add_option("--backend", f.backend, "mock or external")->check(CLI::IsMember({"mock", "external"}));
  cmd->add_option("--max-hops", f.max_hops, "Relay hop bound")->check(CLI::NonNegativeNumber);
  cmd->add_flag("--no-comm", f.no_comm, "Disable communication (max hops 0)");
  cmd->add_flag("--no-reflection", f.no_reflection, "Skip the reflection phase");
  cmd->add_flag("--no-synthesis", f.no_synthesis, "Never register new skills");
  cmd->add_option("--reward", f.reward, "dense or sparse")->check(CLI::IsMember({"dense", "sparse"}));
  cmd->add_option("--skills", f.skills_dir, "Start from a dumped skill library")->check(CLI::ExistingDirectory);
  cmd->add_option("--out", f.out, "Output directory");
  cmd->add_option("--workers", f.workers, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  cmd->add_flag("--no-replays", f.no_replays, "Write the summary only");
}

ExperimentConfig build_config(const RunFlags& f) {
  ExperimentConfig cfg;
  if (!f.config_file.empty()) {
    std::ifstream in(f.config_file);
    apply_config_json(cfg, json::parse(in));
  }
  if (!f.scenario.empty()) cfg.scenario = f.scenario;
  if (!f.scenario_file.empty()) cfg.scenario_file = f.scenario_file;
  if (f.seeds > 0) {
    cfg.seeds.clear();
    for (int i = 0; i < f.seeds; ++i) cfg.seeds.push_back(static_cast<std::uint64_t>(i));
  }
  if (f.episodes > 0) cfg.episodes_per_seed = f.episodes;
  if (!f.backend.empty()) cfg.backend = backend_kind_from_string(f.backend);
  if (f.max_hops >= 0) cfg.max_hops = f.max_hops;
  if (f.no_comm) cfg.comm_enabled = false;
  if (f.no_reflection) cfg.reflection_enabled = false;
  if (f.no_synthesis) cfg.synthesis_enabled = false;
  if (!f.reward.empty()) cfg.reward_mode = reward_mode_from_string(f.reward);
  if (!f.skills_dir.empty()) cfg.skills_dir = f.skills_dir;
  if (!f.out.empty()) cfg.out_dir = f.out;
  if (f.workers >= 0) cfg.workers = f.workers;
  if (f.no_replays) cfg.write_replays = false;
  cfg.validate();
  return cfg;
}

void print_report(const std::string& label, const ExperimentReport& r) {
  std::printf("%-14s median win %.3f  std %.3f  return %.3f  length %.1f  per-seed [", label.c_str(),
              r.agg.median_win_rate, r.agg.std_win_rate, r.agg.mean_return, r.agg.mean_length);
  for (std::size_t i = 0; i < r.per_seed.size(); ++i) std::printf("%s%.3f", i ? " " : "", r.per_seed[i].win_rate);
  std::printf("]\n");
}

std::string unit_line(const UnitState& u) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s#%d %-9s (%6.2f,%6.2f) hp %.3f sh %.3f cd %d%s", to_string(u.team), u.id,
                std::string(to_string(u.kind)).c_str(), u.pos.x, u.pos.y, u.health, u.shield, u.cooldown,
                u.alive ? "" : " dead");
  return buf;
}

void print_replay(const std::vector<ReplayRecord>& records, bool verbose) {
  if (!records.empty() && !records.front().meta.is_null()) std::printf("meta %s\n", records.front().meta.dump().c_str());
  double ret = 0.0;
  for (const auto& r : records) {
    ret += r.reward;
    int alive_a = 0, alive_e = 0;
    for (const auto& u : r.allies) alive_a += u.alive;
    for (const auto& u : r.enemies) alive_e += u.alive;
    std::printf("t=%3d allies %d enemies %d reward %+.4f", r.t, alive_a, alive_e, r.reward);
    if (!r.skills.empty()) {
      std::printf("  skills");
      for (const auto& s : r.skills) std::printf(" %s", s.empty() ? "-" : s.c_str());
    }
    if (!r.ally_actions.empty()) {
      std::printf("  actions");
      for (int a : r.ally_actions) std::printf(" %d", a);
    }
    std::printf("%s\n", r.done ? "  done" : "");
    if (verbose) {
      for (const auto& u : r.allies) std::printf("    %s\n", unit_line(u).c_str());
      for (const auto& u : r.enemies) std::printf("    %s\n", unit_line(u).c_str());
    }
    for (const auto& e : r.events) {
      if (!e.subtask.empty()) std::printf("    agent %d subtask: %s\n", e.agent, e.subtask.c_str());
      if (!e.synthesized_skill.empty()) std::printf("    agent %d synthesized %s\n", e.agent, e.synthesized_skill.c_str());
      for (const auto& w : e.warnings) std::printf("    agent %d warning: %s\n", e.agent, w.c_str());
    }
  }
  std::printf("records %zu  return %.4f\n", records.size(), ret);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-agent skirmish simulator with a skill-library planner"};
  app.require_subcommand(1);

  RunFlags run_flags;
  auto* run = app.add_subcommand("run", "Run seeded episodes and write replays plus summary.json");
  add_run_flags(run, run_flags);

  RunFlags abl_flags;
  auto* ablation = app.add_subcommand("ablation", "Run full / no_comm / no_reflection / no_synthesis");
  add_run_flags(ablation, abl_flags);

  std::string replay_path;
  bool replay_verbose = false;
  auto* replay = app.add_subcommand("replay", "Pretty-print a replay file");
  replay->add_option("path", replay_path, "Replay .jsonl")->required()->check(CLI::ExistingFile);
  replay->add_flag("-v,--verbose", replay_verbose, "Print every unit");

  auto* skills = app.add_subcommand("skills", "Inspect the skill library");
  skills->require_subcommand(1);
  std::string lib_dir;
  auto* list = skills->add_subcommand("list", "List skills");
  list->add_option("--from", lib_dir, "Load from a dumped directory instead of the bootstrap set");
  std::string show_id;
  auto* show = skills->add_subcommand("show", "Print one skill as JSON");
  show->add_option("id", show_id)->required();
  show->add_option("--from", lib_dir, "Load from a dumped directory");
  std::string dump_dir;
  auto* dump = skills->add_subcommand("dump", "Write the bootstrap skills, one JSON file each");
  dump->add_option("dir", dump_dir)->required();
  std::string load_dir;
  auto* load = skills->add_subcommand("load", "Validate and list a dumped library");
  load->add_option("dir", load_dir)->required()->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const auto cfg = build_config(run_flags);
      const auto rep = run_experiment(cfg);
      print_report("run", rep);
      if (!cfg.out_dir.empty()) std::printf("summary written to %s/summary.json\n", cfg.out_dir.c_str());
    } else if (*ablation) {
      const auto cfg = build_config(abl_flags);
      for (const auto& c : run_ablation(cfg)) print_report(c.name, c.report);
      if (!cfg.out_dir.empty()) std::printf("ablation written to %s/ablation.json\n", cfg.out_dir.c_str());
    } else if (*replay) {
      print_replay(read_replay(replay_path), replay_verbose);
    } else if (*skills) {
      if (*list) {
        const SkillLibrary lib = lib_dir.empty() ? bootstrap_library() : SkillLibrary::load(lib_dir);
        for (const auto& s : lib.all()) {
          std::printf("%-24s %-16s %s\n", s->skill_id.c_str(), std::string(to_string(s->control_template)).c_str(),
                      s->doc.c_str());
        }
      } else if (*show) {
        const SkillLibrary lib = lib_dir.empty() ? bootstrap_library() : SkillLibrary::load(lib_dir);
        const auto s = lib.get(show_id);
        if (!s) {
          std::fprintf(stderr, "no skill '%s'\n", show_id.c_str());
          return 1;
        }
        std::printf("%s\n", skill_to_json(*s).dump(2).c_str());
      } else if (*dump) {
        std::filesystem::create_directories(dump_dir);
        const SkillLibrary lib = bootstrap_library();
        lib.dump(dump_dir);
        std::printf("wrote %zu skills to %s\n", lib.size(), dump_dir.c_str());
      } else if (*load) {
        const SkillLibrary lib = SkillLibrary::load(load_dir);
        std::printf("loaded %zu skills\n", lib.size());
        for (const auto& s : lib.all()) std::printf("  %s\n", s->skill_id.c_str());
      }
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
