#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "skirmish/obs/obs_data.hpp"
#include "skirmish/world/unit_catalog.hpp"

namespace skirmish {

inline constexpr int kGridSize = 32;

struct Cell {
  int x = 0;
  int y = 0;
  bool operator==(const Cell&) const = default;
};

/// 32x32 occupancy grid; cell (x, y) covers [x, x+1) x [y, y+1).
class Grid {
 public:
  static bool inside(Cell c) { return c.x >= 0 && c.y >= 0 && c.x < kGridSize && c.y < kGridSize; }
  bool blocked(Cell c) const { return cells_[index(c)]; }
  void set_blocked(Cell c, bool b) { cells_[index(c)] = b; }

 private:
  static std::size_t index(Cell c) { return static_cast<std::size_t>(c.y * kGridSize + c.x); }
  std::array<bool, kGridSize * kGridSize> cells_{};
};

/// Cell containing an absolute map position, clamped to the grid.
Cell cell_of(Vec2 pos);
Cell step_cell(Cell c, Direction d);

/// A* over 4-connected cells with unit cost and Euclidean heuristic. Open
/// nodes are ordered by f, then h, then insertion order; neighbours are
/// pushed N, S, E, W. Returns the first move of the path, or nothing when
/// start == goal or the goal is unreachable. Start and goal are treated as
/// free.
std::optional<Direction> astar_first_step(const Grid& grid, Cell start, Cell goal);

/// Blocks the cell under every other unit in `obs` plus any cell whose centre
/// lies within that unit's collision radius. The agent's own cell stays free.
Grid rasterize(const ObsData& obs, const UnitCatalog& catalog, std::optional<Cell> pursued = std::nullopt,
               std::string_view pursued_type = {});

/// Path toward the point (dx, dy), given relative to the agent and divided by
/// its sight range. When target_type is set, units of that type sitting in
/// the goal cell are not treated as obstacles. Returns a move action that is
/// also available, or nothing.
std::optional<int> find_path(const ObsData& obs, double dx, double dy, std::string_view target_type = {},
                             const UnitCatalog* catalog = nullptr);

}  // namespace skirmish
