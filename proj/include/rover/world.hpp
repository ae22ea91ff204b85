#pragma once

#include <cmath>
#include <cstdint>
#include <set>
#include <utility>

#include "rover/geometry.hpp"

namespace rover {

inline constexpr double kCellSizeM = 0.25;

struct Cell {
  std::int64_t ix{0};
  std::int64_t iy{0};

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

inline Cell cell_of(Vec2 p) {
  return {static_cast<std::int64_t>(std::floor(p.x / kCellSizeM)),
          static_cast<std::int64_t>(std::floor(p.y / kCellSizeM))};
}

inline Vec2 cell_center(Cell c) {
  return {(static_cast<double>(c.ix) + 0.5) * kCellSizeM, (static_cast<double>(c.iy) + 0.5) * kCellSizeM};
}

// Static occupancy: a rectangle [0, width) x [0, height) with rubble cells.
struct World {
  double width_m{0.0};
  double height_m{0.0};
  std::set<Cell> rubble;

  bool in_bounds(Vec2 p) const { return p.x >= 0.0 && p.y >= 0.0 && p.x < width_m && p.y < height_m; }

  bool cell_in_bounds(Cell c) const { return in_bounds(cell_center(c)); }

  bool is_rubble(Cell c) const { return rubble.contains(c); }

  bool blocked(Vec2 p) const { return !in_bounds(p) || is_rubble(cell_of(p)); }
};

}  // namespace rover
