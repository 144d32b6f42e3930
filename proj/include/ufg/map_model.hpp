#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ufg {

// Level geometry. The 20x20 active area of 25-unit cells (500 units) sits
// centered in the 512-unit canvas; the remainder is an inert margin.
inline constexpr int kCanvasUnits = 512;
inline constexpr int kCellUnits = 25;
inline constexpr int kGridSize = 20;
inline constexpr int kCellCount = kGridSize * kGridSize;
inline constexpr int kMarginUnits = (kCanvasUnits - kGridSize * kCellUnits) / 2;

// Genome layout: 4 genes per cell, row-major cells.
inline constexpr int kGenesPerCell = 4;
inline constexpr std::size_t kGenomeLength = static_cast<std::size_t>(kCellCount) * kGenesPerCell;
inline constexpr int kContentGene = 0;
inline constexpr int kHeightGene = 1;
inline constexpr int kPrefabGene = 2;
inline constexpr int kPropGene = 3;

inline constexpr int kPrefabCount = 12;
inline constexpr int kMaxStories = 6;
inline constexpr int kMaxPropsPerCell = 3;
inline constexpr int kMaxTotalProps = kCellCount * kMaxPropsPerCell;

struct CellCoord {
  int row = 0;
  int col = 0;

  friend auto operator<=>(const CellCoord&, const CellCoord&) = default;
};

[[nodiscard]] constexpr bool in_grid(CellCoord c) noexcept {
  return c.row >= 0 && c.row < kGridSize && c.col >= 0 && c.col < kGridSize;
}
[[nodiscard]] constexpr int cell_index(CellCoord c) noexcept { return c.row * kGridSize + c.col; }
[[nodiscard]] constexpr CellCoord cell_at(int index) noexcept {
  return {index / kGridSize, index % kGridSize};
}

inline constexpr std::array<CellCoord, 4> kNeighbours4{{{-1, 0}, {1, 0}, {0, -1}, {0, 1}}};

enum class CellContent : std::uint8_t { Street, Building, Free };
enum class PropKind : std::uint8_t { Container, Plant, Furniture, Debris };

[[nodiscard]] const char* to_string(PropKind kind) noexcept;
[[nodiscard]] PropKind prop_kind_from_string(const std::string& name);

struct PropPlacement {
  PropKind kind = PropKind::Container;
  double u = 0.0;  // local sub-position, [0,1)
  double v = 0.0;

  friend bool operator==(const PropPlacement&, const PropPlacement&) = default;
};

struct Cell {
  CellContent content = CellContent::Free;
  int height_stories = 1;  // 1..6, meaningful for buildings only
  int prefab_index = 0;    // 0..11, meaningful for buildings only
  std::vector<PropPlacement> props;  // Free cells only, at most 3

  [[nodiscard]] bool walkable() const noexcept { return content != CellContent::Building; }

  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Real-coded chromosome: exactly kGenomeLength genes in [0,1].
class MapGenome {
 public:
  /// Throws EncodingError on wrong length or a gene outside [0,1] (NaN included).
  explicit MapGenome(std::vector<double> genes);

  /// Total: clamps every entry into [0,1] (NaN maps to 0). Length must still match.
  [[nodiscard]] static MapGenome clamped(std::span<const double> genes);

  [[nodiscard]] std::span<const double> genes() const noexcept { return genes_; }
  [[nodiscard]] double operator[](std::size_t i) const noexcept { return genes_[i]; }
  [[nodiscard]] std::size_t size() const noexcept { return genes_.size(); }

  [[nodiscard]] double gene(int cell, int slot) const noexcept {
    return genes_[static_cast<std::size_t>(cell) * kGenesPerCell + static_cast<std::size_t>(slot)];
  }

  friend bool operator==(const MapGenome&, const MapGenome&) = default;

 private:
  std::vector<double> genes_;
};

/// Content-gene cut points: c < street_below -> Street, c < building_below -> Building, else Free.
struct DecodeThresholds {
  double street_below = 0.25;
  double building_below = 0.55;
};

struct MapLayout {
  std::array<Cell, kCellCount> grid{};
  std::array<CellCoord, 2> spawns{};  // team A (west), team B (east)
  std::vector<CellCoord> repair_log;  // cells converted to street by repair, in order

  [[nodiscard]] const Cell& at(CellCoord c) const noexcept { return grid[static_cast<std::size_t>(cell_index(c))]; }
  [[nodiscard]] Cell& at(CellCoord c) noexcept { return grid[static_cast<std::size_t>(cell_index(c))]; }
  [[nodiscard]] bool walkable(CellCoord c) const noexcept { return in_grid(c) && at(c).walkable(); }

  friend bool operator==(const MapLayout&, const MapLayout&) = default;
};

/// Per-cell threshold decode without repair or spawn placement.
[[nodiscard]] MapLayout decode_cells(const MapGenome& genome, const DecodeThresholds& thresholds = {});

/// Joins street cells into a single 4-connected component. Never fails.
[[nodiscard]] MapLayout repair(MapLayout raw);

/// Picks spawns: the walkable cells of the street-connected walkable region
/// nearest (10,0) and (10,19), ties by row then column.
void place_spawns(MapLayout& layout);

/// decode_cells + repair + place_spawns. Pure and deterministic.
[[nodiscard]] MapLayout decode(const MapGenome& genome, const DecodeThresholds& thresholds = {});

/// Labels 4-connected components of cells satisfying `member`; -1 elsewhere.
/// Components are numbered in row-major order of their first cell.
template <typename Pred>
[[nodiscard]] std::array<int, kCellCount> label_components(const MapLayout& layout, Pred member, int* count = nullptr);

/// Throws EncodingError if any MapLayout invariant is violated.
void validate_layout(const MapLayout& layout);

/// One char per cell: '#' building, '=' street, '.' free, '*' free with props, 'A'/'B' spawns.
[[nodiscard]] std::string to_ascii(const MapLayout& layout);

// ---------------------------------------------------------------------------

template <typename Pred>
std::array<int, kCellCount> label_components(const MapLayout& layout, Pred member, int* count) {
  std::array<int, kCellCount> label;
  label.fill(-1);
  std::vector<int> stack;
  int next = 0;
  for (int start = 0; start < kCellCount; ++start) {
    if (label[static_cast<std::size_t>(start)] >= 0 || !member(layout.grid[static_cast<std::size_t>(start)])) continue;
    label[static_cast<std::size_t>(start)] = next;
    stack.assign(1, start);
    while (!stack.empty()) {
      const CellCoord c = cell_at(stack.back());
      stack.pop_back();
      for (auto d : kNeighbours4) {
        const CellCoord n{c.row + d.row, c.col + d.col};
        if (!in_grid(n)) continue;
        const auto ni = static_cast<std::size_t>(cell_index(n));
        if (label[ni] < 0 && member(layout.grid[ni])) {
          label[ni] = next;
          stack.push_back(static_cast<int>(ni));
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return label;
}

}  // namespace ufg
