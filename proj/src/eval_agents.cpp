#include "ufg/eval_agents.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <utility>

#include "ufg/errors.hpp"

namespace ufg {

namespace {

// Rays passing within this distance of a grid corner step diagonally, so
// exact-diagonal rays do not clip the two side cells.
constexpr double kCornerTolerance = 1e-9;

void require_walkable(const MapLayout& layout, CellCoord c) {
  if (!layout.walkable(c)) {
    throw DomainError("cell (" + std::to_string(c.row) + "," + std::to_string(c.col) + ") is not walkable");
  }
}

}  // namespace

bool blocks_rays(const Cell& cell) noexcept {
  return cell.content == CellContent::Building ||
         (cell.content == CellContent::Free && cell.props.size() >= static_cast<std::size_t>(kBlockingPropCount));
}

std::optional<CellCoord> cast_ray(const MapLayout& layout, CellCoord origin, double angle, int range_cells) {
  require_walkable(layout, origin);
  const double dx = std::cos(angle);
  const double dy = std::sin(angle);
  constexpr double inf = std::numeric_limits<double>::infinity();

  const int step_c = dx > 0 ? 1 : -1;
  const int step_r = dy > 0 ? 1 : -1;
  const double delta_c = dx != 0 ? std::abs(1.0 / dx) : inf;
  const double delta_r = dy != 0 ? std::abs(1.0 / dy) : inf;
  // Starting at the cell center, the first boundary is half a cell away on each axis.
  double next_c = 0.5 * delta_c;
  double next_r = 0.5 * delta_r;

  CellCoord cell = origin;
  while (true) {
    double t = 0.0;
    if (std::abs(next_c - next_r) <= kCornerTolerance) {
      t = next_c;
      cell.col += step_c;
      cell.row += step_r;
      next_c += delta_c;
      next_r += delta_r;
    } else if (next_c < next_r) {
      t = next_c;
      cell.col += step_c;
      next_c += delta_c;
    } else {
      t = next_r;
      cell.row += step_r;
      next_r += delta_r;
    }
    if (t > range_cells || !in_grid(cell)) return std::nullopt;
    if (blocks_rays(layout.at(cell))) return cell;
  }
}

double cover_score(const MapLayout& layout, CellCoord cell, int n_rays, int range_cells) {
  require_walkable(layout, cell);
  if (n_rays <= 0) throw DomainError("n_rays must be positive");
  int blocked = 0;
  for (int k = 0; k < n_rays; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / n_rays;
    if (cast_ray(layout, cell, angle, range_cells)) ++blocked;
  }
  return static_cast<double>(blocked) / n_rays;
}

CoverMap compute_cover_map(const MapLayout& layout, const RayParams& params) {
  CoverMap map;
  map.params = params;
  for (int i = 0; i < kCellCount; ++i) {
    const CellCoord c = cell_at(i);
    if (layout.walkable(c)) map.score[static_cast<std::size_t>(i)] = cover_score(layout, c, params.n_rays, params.range_cells);
  }
  return map;
}

std::vector<CellCoord> find_choke_points(const MapLayout& layout) {
  std::array<int, kCellCount> disc;
  std::array<int, kCellCount> low{};
  std::array<int, kCellCount> parent;
  std::array<bool, kCellCount> articulation{};
  disc.fill(-1);
  parent.fill(-1);
  int timer = 0;

  // (cell, next neighbour slot) frames of the iterative DFS.
  std::vector<std::pair<int, int>> stack;
  for (int root = 0; root < kCellCount; ++root) {
    if (disc[static_cast<std::size_t>(root)] >= 0 || !layout.grid[static_cast<std::size_t>(root)].walkable()) continue;
    int root_children = 0;
    disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
    stack.emplace_back(root, 0);

    while (!stack.empty()) {
      auto& [u, slot] = stack.back();
      const auto ui = static_cast<std::size_t>(u);
      if (slot < 4) {
        const CellCoord cu = cell_at(u);
        const CellCoord d = kNeighbours4[static_cast<std::size_t>(slot++)];
        const CellCoord cv{cu.row + d.row, cu.col + d.col};
        if (!layout.walkable(cv)) continue;
        const int v = cell_index(cv);
        const auto vi = static_cast<std::size_t>(v);
        if (disc[vi] < 0) {
          parent[vi] = u;
          disc[vi] = low[vi] = timer++;
          if (u == root) ++root_children;
          stack.emplace_back(v, 0);  // invalidates u/slot references
        } else if (v != parent[ui]) {
          low[ui] = std::min(low[ui], disc[vi]);
        }
      } else {
        const int done = u;
        stack.pop_back();
        const int p = parent[static_cast<std::size_t>(done)];
        if (p < 0) continue;
        const auto pi = static_cast<std::size_t>(p);
        low[pi] = std::min(low[pi], low[static_cast<std::size_t>(done)]);
        if (p != root && low[static_cast<std::size_t>(done)] >= disc[pi]) articulation[pi] = true;
      }
    }
    if (root_children >= 2) articulation[static_cast<std::size_t>(root)] = true;
  }

  std::vector<CellCoord> out;
  for (int i = 0; i < kCellCount; ++i) {
    if (articulation[static_cast<std::size_t>(i)]) out.push_back(cell_at(i));
  }
  return out;
}

bool walk_reachable(const MapLayout& layout, CellCoord from, CellCoord to) {
  if (!layout.walkable(from) || !layout.walkable(to)) return false;
  std::array<bool, kCellCount> seen{};
  std::deque<CellCoord> queue{from};
  seen[static_cast<std::size_t>(cell_index(from))] = true;
  while (!queue.empty()) {
    const CellCoord c = queue.front();
    queue.pop_front();
    if (c == to) return true;
    for (auto d : kNeighbours4) {
      const CellCoord n{c.row + d.row, c.col + d.col};
      if (!layout.walkable(n) || seen[static_cast<std::size_t>(cell_index(n))]) continue;
      seen[static_cast<std::size_t>(cell_index(n))] = true;
      queue.push_back(n);
    }
  }
  return false;
}

PlayabilityReport playability(const MapLayout& layout, const PlayabilityConfig& config) {
  PlayabilityReport report;
  report.spawns_reachable = walk_reachable(layout, layout.spawns[0], layout.spawns[1]);

  int walkable = 0;
  const CoverMap cover = compute_cover_map(layout, config.rays);
  for (int i = 0; i < kCellCount; ++i) {
    const auto& score = cover.score[static_cast<std::size_t>(i)];
    if (!score) continue;
    ++walkable;
    if (*score < config.exposure_threshold) report.exposed_cells.push_back(cell_at(i));
  }
  report.walkable_fraction = static_cast<double>(walkable) / kCellCount;
  report.choke_points = find_choke_points(layout);
  report.passed = report.spawns_reachable && report.walkable_fraction >= config.min_walkable_fraction;
  return report;
}

}  // namespace ufg
