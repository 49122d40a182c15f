#pragma once

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "skirmish/core/vec2.hpp"
#include "skirmish/obs/obs_data.hpp"
#include "skirmish/world/world.hpp"

namespace skirmish {

struct EntityKey {
  Team team = Team::kEnemy;
  int id = 0;
  auto operator<=>(const EntityKey&) const = default;
};

/// One sighting, as relayed between allies.
struct EntityRecord {
  EntityKey key;
  std::string unit_type;
  /// Absolute map coordinates.
  Vec2 global_pos;
  double health = 0.0;
  double shield = 0.0;
  int observed_at = 0;
  int source_agent = 0;
  int hops = 0;

  bool operator==(const EntityRecord&) const = default;
};

using Knowledge = std::map<EntityKey, EntityRecord>;

/// Hop-0 records for everything in `obs`. Positions are made absolute with
/// rel * sight_range + own_position * 32.
std::vector<EntityRecord> record_local(int agent, const ObsData& obs, int t);

/// Undirected graph over ally ids. Edge (i, j) iff both alive and
/// distance <= min(sight_i, sight_j).
struct VisibilityGraph {
  int size = 0;
  std::vector<bool> present;
  /// Sorted neighbour lists, one per ally id.
  std::vector<std::vector<int>> adj;

  bool has_edge(int i, int j) const;
  /// Pairs (i, j) with i < j, sorted.
  std::vector<std::pair<int, int>> edges() const;
};

VisibilityGraph build_visibility_graph(const WorldState& world);
VisibilityGraph build_visibility_graph(const std::vector<Vec2>& pos, const std::vector<double>& sight,
                                       const std::vector<bool>& alive);

/// Freshest wins, then fewer hops, then lower source id. Throws
/// std::invalid_argument on a key mismatch.
EntityRecord merge_records(const EntityRecord& a, const EntityRecord& b);

/// Synchronous gossip: max_hops rounds in which every node hands its best
/// records to its neighbours. hop0[i] are agent i's own sightings.
std::vector<Knowledge> propagate(const std::vector<std::vector<EntityRecord>>& hop0, const VisibilityGraph& graph,
                                 int max_hops);

/// Per-agent knowledge carried across timesteps. Records older than ttl steps
/// are dropped; dead agents forget everything.
class GlobalEntityMemory {
 public:
  GlobalEntityMemory(int n_agents, int max_hops, int ttl = 10);

  int max_hops() const { return max_hops_; }
  int ttl() const { return ttl_; }

  /// Share phase for timestep t: propagate this step's sightings and fold them
  /// into each agent's memory.
  void update(int t, const std::vector<std::vector<EntityRecord>>& hop0, const VisibilityGraph& graph);

  const Knowledge& knowledge(int agent) const { return per_agent_.at(static_cast<std::size_t>(agent)); }
  /// Enemy ids with a record observed at exactly t, sorted.
  std::vector<int> fresh_enemies(int agent, int t) const;

 private:
  int max_hops_;
  int ttl_;
  std::vector<Knowledge> per_agent_;
};

}  // namespace skirmish
