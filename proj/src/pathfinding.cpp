#include "skirmish/skills/pathfinding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "skirmish/world/scenario.hpp"

namespace skirmish {

Cell cell_of(Vec2 pos) {
  auto clamp = [](double v) { return std::clamp(static_cast<int>(std::floor(v)), 0, kGridSize - 1); };
  return {clamp(pos.x), clamp(pos.y)};
}

Cell step_cell(Cell c, Direction d) {
  const Vec2 v = direction_vector(d);
  return {c.x + static_cast<int>(v.x), c.y + static_cast<int>(v.y)};
}

namespace {

struct OpenEntry {
  double f;
  double h;
  std::uint64_t seq;
  int cell;
};

struct Worse {
  bool operator()(const OpenEntry& a, const OpenEntry& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.h != b.h) return a.h > b.h;
    return a.seq > b.seq;
  }
};

int flat(Cell c) { return c.y * kGridSize + c.x; }
Cell unflat(int i) { return {i % kGridSize, i / kGridSize}; }

double heuristic(Cell a, Cell b) { return std::hypot(a.x - b.x, a.y - b.y); }

}  // namespace

std::optional<Direction> astar_first_step(const Grid& grid, Cell start, Cell goal) {
  if (start == goal || !Grid::inside(start) || !Grid::inside(goal)) return std::nullopt;
  constexpr int kCells = kGridSize * kGridSize;
  std::vector<int> g(kCells, std::numeric_limits<int>::max());
  std::vector<int> parent(kCells, -1);
  std::vector<bool> closed(kCells, false);
  std::priority_queue<OpenEntry, std::vector<OpenEntry>, Worse> open;
  std::uint64_t seq = 0;

  g[static_cast<std::size_t>(flat(start))] = 0;
  open.push({heuristic(start, goal), heuristic(start, goal), seq++, flat(start)});
  while (!open.empty()) {
    const OpenEntry cur = open.top();
    open.pop();
    const auto ci = static_cast<std::size_t>(cur.cell);
    if (closed[ci]) continue;
    closed[ci] = true;
    const Cell c = unflat(cur.cell);
    if (c == goal) {
      int i = cur.cell;
      while (parent[static_cast<std::size_t>(i)] != flat(start)) i = parent[static_cast<std::size_t>(i)];
      const Cell first = unflat(i);
      for (Direction d : kDirections) {
        if (step_cell(start, d) == first) return d;
      }
      return std::nullopt;
    }
    for (Direction d : kDirections) {
      const Cell n = step_cell(c, d);
      if (!Grid::inside(n)) continue;
      if (grid.blocked(n) && !(n == goal)) continue;
      const auto ni = static_cast<std::size_t>(flat(n));
      const int ng = g[ci] + 1;
      if (closed[ni] || ng >= g[ni]) continue;
      g[ni] = ng;
      parent[ni] = cur.cell;
      const double h = heuristic(n, goal);
      open.push({ng + h, h, seq++, flat(n)});
    }
  }
  return std::nullopt;
}

Grid rasterize(const ObsData& obs, const UnitCatalog& catalog, std::optional<Cell> pursued,
               std::string_view pursued_type) {
  Grid grid;
  const Vec2 self = obs.own_position * kMapSize;
  for (const auto* list : {&obs.allies, &obs.enemies}) {
    for (const auto& e : *list) {
      const Vec2 p = e.position * obs.own_sight_range + self;
      const Cell home = cell_of(p);
      if (pursued && !pursued_type.empty() && e.unit_type == pursued_type && home == *pursued) continue;
      const UnitType* type = catalog.find(e.unit_type);
      const double r = type != nullptr ? type->collision_radius : 0.5;
      grid.set_blocked(home, true);
      const int lo_x = std::max(0, static_cast<int>(std::floor(p.x - r)));
      const int hi_x = std::min(kGridSize - 1, static_cast<int>(std::floor(p.x + r)));
      const int lo_y = std::max(0, static_cast<int>(std::floor(p.y - r)));
      const int hi_y = std::min(kGridSize - 1, static_cast<int>(std::floor(p.y + r)));
      for (int y = lo_y; y <= hi_y; ++y) {
        for (int x = lo_x; x <= hi_x; ++x) {
          if (std::hypot(x + 0.5 - p.x, y + 0.5 - p.y) <= r) grid.set_blocked({x, y}, true);
        }
      }
    }
  }
  grid.set_blocked(cell_of(self), false);
  return grid;
}

std::optional<int> find_path(const ObsData& obs, double dx, double dy, std::string_view target_type,
                             const UnitCatalog* catalog) {
  static const UnitCatalog kDefaults;
  const Vec2 self = obs.own_position * kMapSize;
  const Vec2 target = Vec2{dx, dy} * obs.own_sight_range + self;
  const Cell start = cell_of(self);
  const Cell goal = cell_of(target);
  const Grid grid = rasterize(obs, catalog ? *catalog : kDefaults, goal, target_type);
  const auto dir = astar_first_step(grid, start, goal);
  if (!dir) return std::nullopt;
  const int a = move_action(*dir);
  if (!obs.has_action(a)) return std::nullopt;
  return a;
}

}  // namespace skirmish
