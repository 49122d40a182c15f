#include "skirmish/comms/comms.hpp"

#include <algorithm>
#include <stdexcept>

#include "skirmish/world/scenario.hpp"

namespace skirmish {

std::vector<EntityRecord> record_local(int agent, const ObsData& obs, int t) {
  std::vector<EntityRecord> out;
  if (!obs.alive) return out;
  const Vec2 origin = obs.own_position * kMapSize;
  for (const auto* list : {&obs.allies, &obs.enemies}) {
    for (const auto& e : *list) {
      EntityRecord r;
      r.key = {e.is_ally ? Team::kAlly : Team::kEnemy, e.id};
      r.unit_type = e.unit_type;
      r.global_pos = e.position * obs.own_sight_range + origin;
      r.health = e.health;
      r.shield = e.shield;
      r.observed_at = t;
      r.source_agent = agent;
      r.hops = 0;
      out.push_back(std::move(r));
    }
  }
  return out;
}

bool VisibilityGraph::has_edge(int i, int j) const {
  const auto& n = adj.at(static_cast<std::size_t>(i));
  return std::binary_search(n.begin(), n.end(), j);
}

std::vector<std::pair<int, int>> VisibilityGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < size; ++i) {
    for (int j : adj[static_cast<std::size_t>(i)]) {
      if (i < j) out.emplace_back(i, j);
    }
  }
  return out;
}

VisibilityGraph build_visibility_graph(const std::vector<Vec2>& pos, const std::vector<double>& sight,
                                       const std::vector<bool>& alive) {
  VisibilityGraph g;
  g.size = static_cast<int>(pos.size());
  g.present = alive;
  g.adj.assign(pos.size(), {});
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (!alive[i]) continue;
    for (std::size_t j = i + 1; j < pos.size(); ++j) {
      if (alive[j] && distance(pos[i], pos[j]) <= std::min(sight[i], sight[j])) {
        g.adj[i].push_back(static_cast<int>(j));
        g.adj[j].push_back(static_cast<int>(i));
      }
    }
  }
  for (auto& n : g.adj) std::sort(n.begin(), n.end());
  return g;
}

VisibilityGraph build_visibility_graph(const WorldState& world) {
  std::vector<Vec2> pos;
  std::vector<double> sight;
  std::vector<bool> alive;
  for (const auto& a : world.allies) {
    pos.push_back(a.pos);
    sight.push_back(world.type_of(a).sight_range);
    alive.push_back(a.alive);
  }
  return build_visibility_graph(pos, sight, alive);
}

EntityRecord merge_records(const EntityRecord& a, const EntityRecord& b) {
  if (a.key != b.key) throw std::invalid_argument("merge_records: entity keys differ");
  if (a.observed_at != b.observed_at) return a.observed_at > b.observed_at ? a : b;
  if (a.hops != b.hops) return a.hops < b.hops ? a : b;
  if (a.source_agent != b.source_agent) return a.source_agent < b.source_agent ? a : b;
  return a;
}

namespace {

void absorb(Knowledge& into, const EntityRecord& r) {
  auto [it, inserted] = into.try_emplace(r.key, r);
  if (!inserted) it->second = merge_records(it->second, r);
}

}  // namespace

std::vector<Knowledge> propagate(const std::vector<std::vector<EntityRecord>>& hop0, const VisibilityGraph& graph,
                                 int max_hops) {
  if (max_hops < 0) throw std::invalid_argument("max_hops must be >= 0");
  const auto n = static_cast<std::size_t>(graph.size);
  std::vector<Knowledge> known(n);
  for (std::size_t i = 0; i < n && i < hop0.size(); ++i) {
    if (!graph.present[i]) continue;
    for (const auto& r : hop0[i]) absorb(known[i], r);
  }
  for (int round = 0; round < max_hops; ++round) {
    std::vector<Knowledge> next = known;
    for (std::size_t i = 0; i < n; ++i) {
      for (int j : graph.adj[i]) {
        for (const auto& [key, r] : known[static_cast<std::size_t>(j)]) {
          EntityRecord relayed = r;
          ++relayed.hops;
          absorb(next[i], relayed);
        }
      }
    }
    known = std::move(next);
  }
  return known;
}

GlobalEntityMemory::GlobalEntityMemory(int n_agents, int max_hops, int ttl)
    : max_hops_(max_hops), ttl_(ttl), per_agent_(static_cast<std::size_t>(n_agents)) {
  if (max_hops < 0) throw std::invalid_argument("max_hops must be >= 0");
  if (ttl < 1) throw std::invalid_argument("ttl must be >= 1");
}

void GlobalEntityMemory::update(int t, const std::vector<std::vector<EntityRecord>>& hop0,
                                const VisibilityGraph& graph) {
  const auto fresh = propagate(hop0, graph, max_hops_);
  for (std::size_t i = 0; i < per_agent_.size(); ++i) {
    auto& mem = per_agent_[i];
    if (i >= graph.present.size() || !graph.present[i]) {
      mem.clear();
      continue;
    }
    std::erase_if(mem, [&](const auto& kv) { return t - kv.second.observed_at >= ttl_; });
    for (const auto& [key, r] : fresh[i]) absorb(mem, r);
  }
}

std::vector<int> GlobalEntityMemory::fresh_enemies(int agent, int t) const {
  std::vector<int> ids;
  for (const auto& [key, r] : knowledge(agent)) {
    if (key.team == Team::kEnemy && r.observed_at == t) ids.push_back(key.id);
  }
  return ids;
}

}  // namespace skirmish
