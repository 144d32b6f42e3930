#pragma once

#include <array>
#include <optional>
#include <vector>

#include "ufg/map_model.hpp"

namespace ufg {

struct RayParams {
  int n_rays = 16;
  int range_cells = 8;
};

/// Free cells with at least this many props obstruct sight lines.
inline constexpr int kBlockingPropCount = 2;

[[nodiscard]] bool blocks_rays(const Cell& cell) noexcept;

/// Grid DDA from the center of `origin`. Angle 0 points east (+col), pi/2
/// points south (+row). Returns the first blocking cell whose entry point
/// lies within `range_cells` of the origin center; the origin itself never
/// blocks and leaving the grid ends the ray. Throws DomainError if the
/// origin is not walkable.
[[nodiscard]] std::optional<CellCoord> cast_ray(const MapLayout& layout, CellCoord origin, double angle,
                                                int range_cells);

/// Fraction of `n_rays` evenly spaced rays (angles 2*pi*k/n) that hit a blocker.
[[nodiscard]] double cover_score(const MapLayout& layout, CellCoord cell, int n_rays = 16, int range_cells = 8);

struct CoverMap {
  RayParams params;
  std::array<std::optional<double>, kCellCount> score{};  // empty on non-walkable cells
};

[[nodiscard]] CoverMap compute_cover_map(const MapLayout& layout, const RayParams& params = {});

/// Articulation points of the 4-connected walkability graph, row-major.
[[nodiscard]] std::vector<CellCoord> find_choke_points(const MapLayout& layout);

/// BFS over walkable cells.
[[nodiscard]] bool walk_reachable(const MapLayout& layout, CellCoord from, CellCoord to);

struct PlayabilityConfig {
  RayParams rays;
  double exposure_threshold = 0.125;
  double min_walkable_fraction = 0.3;
};

struct PlayabilityReport {
  bool spawns_reachable = false;
  double walkable_fraction = 0.0;
  std::vector<CellCoord> exposed_cells;
  std::vector<CellCoord> choke_points;
  bool passed = false;

  friend bool operator==(const PlayabilityReport&, const PlayabilityReport&) = default;
};

[[nodiscard]] PlayabilityReport playability(const MapLayout& layout, const PlayabilityConfig& config = {});

}  // namespace ufg
