// Reference implementations used to check the library. Each is written
// from the rules directly and shares no code with the module it checks.
#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <tuple>
#include <vector>

#include "skirmish/comms/comms.hpp"
#include "skirmish/core/rng.hpp"
#include "skirmish/obs/obs_data.hpp"
#include "skirmish/skills/pathfinding.hpp"
#include "skirmish/world/world.hpp"

namespace oracle {

using namespace skirmish;

/// Hop distances from `src` over an adjacency matrix, -1 when unreachable.
inline std::vector<int> bfs(const std::vector<std::vector<bool>>& adj, int src) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> dist(static_cast<std::size_t>(n), -1);
  std::deque<int> q{src};
  dist[static_cast<std::size_t>(src)] = 0;
  while (!q.empty()) {
    const int u = q.front();
    q.pop_front();
    for (int v = 0; v < n; ++v) {
      if (adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] && dist[static_cast<std::size_t>(v)] < 0) {
        dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
        q.push_back(v);
      }
    }
  }
  return dist;
}

/// Brute-force visibility adjacency: both alive and within the smaller sight.
inline std::vector<std::vector<bool>> visibility(const std::vector<Vec2>& pos, const std::vector<double>& sight,
                                                 const std::vector<bool>& alive) {
  const std::size_t n = pos.size();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !alive[i] || !alive[j]) continue;
      const double dx = pos[i].x - pos[j].x, dy = pos[i].y - pos[j].y;
      adj[i][j] = std::sqrt(dx * dx + dy * dy) <= std::min(sight[i], sight[j]);
    }
  }
  return adj;
}

/// For every agent: the record each key would end with if every sighting
/// within max_hops arrived along a shortest path. Best = freshest, then
/// fewest hops, then lowest source id.
inline std::vector<std::map<EntityKey, EntityRecord>> closure(const std::vector<std::vector<EntityRecord>>& hop0,
                                                              const std::vector<std::vector<bool>>& adj,
                                                              const std::vector<bool>& alive, int max_hops) {
  const std::size_t n = adj.size();
  std::vector<std::map<EntityKey, EntityRecord>> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!alive[i]) continue;
    const auto dist = bfs(adj, static_cast<int>(i));
    for (std::size_t s = 0; s < n; ++s) {
      if (!alive[s] || dist[s] < 0 || dist[s] > max_hops) continue;
      for (const auto& r0 : hop0[s]) {
        EntityRecord r = r0;
        r.hops = dist[s];
        auto it = out[i].find(r.key);
        if (it == out[i].end()) {
          out[i].emplace(r.key, r);
          continue;
        }
        const auto rank = [](const EntityRecord& x) { return std::make_tuple(-x.observed_at, x.hops, x.source_agent); };
        if (rank(r) < rank(it->second)) it->second = r;
      }
    }
  }
  return out;
}

/// Dijkstra (unit weights, so effectively BFS) distance to `goal` for every
/// cell; start and goal count as free.
inline std::vector<int> grid_distances(const Grid& g, Cell start, Cell goal) {
  constexpr int N = kGridSize;
  std::vector<int> dist(N * N, std::numeric_limits<int>::max());
  using Item = std::pair<int, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  auto free = [&](Cell c) { return c == start || c == goal || !g.blocked(c); };
  dist[static_cast<std::size_t>(goal.y * N + goal.x)] = 0;
  pq.push({0, goal.y * N + goal.x});
  while (!pq.empty()) {
    const auto [d, idx] = pq.top();
    pq.pop();
    if (d > dist[static_cast<std::size_t>(idx)]) continue;
    const Cell c{idx % N, idx / N};
    const Cell nbrs[4] = {{c.x, c.y + 1}, {c.x, c.y - 1}, {c.x + 1, c.y}, {c.x - 1, c.y}};
    for (const Cell nb : nbrs) {
      if (nb.x < 0 || nb.y < 0 || nb.x >= N || nb.y >= N || !free(nb)) continue;
      const int k = nb.y * N + nb.x;
      if (d + 1 < dist[static_cast<std::size_t>(k)]) {
        dist[static_cast<std::size_t>(k)] = d + 1;
        pq.push({d + 1, k});
      }
    }
  }
  return dist;
}

/// Hitpoints of a unit in absolute terms.
inline double hitpoints(const WorldState& w, const UnitState& u) {
  const UnitType& t = w.spec->catalog[u.kind];
  return u.health * t.max_health + u.shield * t.max_shield;
}

/// Dense reward of one transition recomputed from the two states. Valid
/// when the enemy team cannot heal.
inline double dense_reward(const WorldState& before, const WorldState& after, const WorldState& initial) {
  double dealt = 0.0;
  int kills = 0;
  for (std::size_t i = 0; i < before.enemies.size(); ++i) {
    dealt += hitpoints(before, before.enemies[i]) - hitpoints(after, after.enemies[i]);
    if (before.enemies[i].alive && !after.enemies[i].alive) ++kills;
  }
  bool enemies_dead = true, ally_alive = false;
  for (const auto& e : after.enemies) enemies_dead = enemies_dead && !e.alive;
  for (const auto& a : after.allies) ally_alive = ally_alive || a.alive;
  const bool win = enemies_dead && ally_alive;

  double max_total = 0.0;
  for (const auto& e : initial.enemies) {
    const UnitType& t = initial.spec->catalog[e.kind];
    max_total += t.max_health + t.max_shield;
  }
  max_total += 10.0 * static_cast<double>(initial.enemies.size()) + 200.0;
  const double scale = max_total / 20.0;
  return (dealt + 10.0 * kills + (win ? 200.0 : 0.0)) / scale;
}

inline double median(std::vector<double> xs) {
  std::nth_element(xs.begin(), xs.begin() + static_cast<long>(xs.size() / 2), xs.end());
  const double hi = xs[xs.size() / 2];
  if (xs.size() % 2 == 1) return hi;
  const double lo = *std::max_element(xs.begin(), xs.begin() + static_cast<long>(xs.size() / 2));
  return (lo + hi) / 2.0;
}

/// Population standard deviation, Welford update.
inline double pstdev(const std::vector<double>& xs) {
  double mean = 0.0, m2 = 0.0;
  int n = 0;
  for (double x : xs) {
    ++n;
    const double d = x - mean;
    mean += d / n;
    m2 += d * (x - mean);
  }
  return std::sqrt(m2 / n);
}

/// Random observation that satisfies every rule of the text grammar.
inline ObsData random_obs(Rng& rng) {
  static const char* kTypes[] = {"stalker", "zealot",   "colossus",  "marine", "marauder",
                                 "medivac", "zergling", "hydralisk", "baneling"};
  ObsData o;
  o.agent_id = static_cast<int>(rng.below(10));
  o.own_unit_type = kTypes[rng.below(9)];
  if (rng.uniform() < 0.05) {
    o.alive = false;
    o.available_actions = {0};
    return o;
  }
  auto real = [&](double lo, double hi) {
    // Mix in exact grid values and tiny magnitudes that round to zero.
    const double u = rng.uniform();
    if (u < 0.05) return 0.0;
    if (u < 0.1) return rng.uniform(-4e-5, 4e-5);
    return rng.uniform(lo, hi);
  };
  o.own_health = real(0, 1);
  o.own_shield = real(0, 1);
  o.own_position = {real(0, 1), real(0, 1)};
  o.own_sight_range = rng.uniform(1, 12);
  o.own_shoot_range = rng.uniform(1, 12);
  o.last_action = static_cast<int>(rng.below(20));
  o.available_actions.push_back(action::kStop);
  for (Direction d : kDirections) {
    const bool can = rng.uniform() < 0.7;
    o.can_move[static_cast<std::size_t>(d)] = can;
    if (can) o.available_actions.push_back(move_action(d));
  }
  const bool healer = o.own_unit_type == std::string("medivac");
  for (int team = 0; team < 2; ++team) {
    const bool ally = team == 0;
    int id = -1;
    const int count = static_cast<int>(rng.below(6));
    for (int k = 0; k < count; ++k) {
      id += 1 + static_cast<int>(rng.below(3));
      EntityView e;
      e.is_ally = ally;
      e.id = id;
      e.unit_type = kTypes[rng.below(9)];
      e.position = {real(-1, 1), real(-1, 1)};
      e.distance = std::sqrt(e.position.x * e.position.x + e.position.y * e.position.y);
      e.health = real(0, 1);
      e.shield = real(0, 1);
      e.can_attack = (ally == healer) && rng.uniform() < 0.5;
      if (ally) e.last_action = static_cast<int>(rng.below(20));
      (ally ? o.allies : o.enemies).push_back(e);
    }
  }
  std::vector<int> targets;
  for (const auto* list : {&o.allies, &o.enemies}) {
    for (const auto& e : *list) {
      if (e.can_attack) targets.push_back(action::target(e.id));
    }
  }
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  o.available_actions.insert(o.available_actions.end(), targets.begin(), targets.end());
  return o;
}

}  // namespace oracle
