#include "ufg/map_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ufg/errors.hpp"
#include "ufg/rng.hpp"

namespace ufg {

namespace {

constexpr std::uint64_t kPropStreamTag = 0x70726f70ULL;  // "prop"
constexpr CellCoord kWestAnchor{kGridSize / 2, 0};
constexpr CellCoord kEastAnchor{kGridSize / 2, kGridSize - 1};

int floor_clamped(double x, int hi) { return std::min(hi, static_cast<int>(std::floor(x))); }

void make_street(MapLayout& layout, CellCoord c) {
  Cell& cell = layout.at(c);
  if (cell.content == CellContent::Street) return;
  cell.content = CellContent::Street;
  cell.props.clear();
  layout.repair_log.push_back(c);
}

bool is_street(const Cell& c) { return c.content == CellContent::Street; }

}  // namespace

const char* to_string(PropKind kind) noexcept {
  switch (kind) {
    case PropKind::Container: return "container";
    case PropKind::Plant: return "plant";
    case PropKind::Furniture: return "furniture";
    case PropKind::Debris: return "debris";
  }
  return "container";
}

PropKind prop_kind_from_string(const std::string& name) {
  for (auto k : {PropKind::Container, PropKind::Plant, PropKind::Furniture, PropKind::Debris}) {
    if (name == to_string(k)) return k;
  }
  throw EncodingError("unknown prop kind '" + name + "'");
}

MapGenome::MapGenome(std::vector<double> genes) : genes_(std::move(genes)) {
  if (genes_.size() != kGenomeLength) {
    throw EncodingError("genome length " + std::to_string(genes_.size()) + ", expected " +
                        std::to_string(kGenomeLength));
  }
  for (std::size_t i = 0; i < genes_.size(); ++i) {
    if (!(genes_[i] >= 0.0 && genes_[i] <= 1.0)) {
      throw EncodingError("gene " + std::to_string(i) + " outside [0,1]");
    }
  }
}

MapGenome MapGenome::clamped(std::span<const double> genes) {
  std::vector<double> v(genes.begin(), genes.end());
  for (auto& g : v) g = std::isnan(g) ? 0.0 : std::clamp(g, 0.0, 1.0);
  return MapGenome(std::move(v));
}

MapLayout decode_cells(const MapGenome& genome, const DecodeThresholds& thresholds) {
  MapLayout layout;
  for (int i = 0; i < kCellCount; ++i) {
    Cell& cell = layout.grid[static_cast<std::size_t>(i)];
    const double content = genome.gene(i, kContentGene);
    if (content < thresholds.street_below) {
      cell.content = CellContent::Street;
    } else if (content < thresholds.building_below) {
      cell.content = CellContent::Building;
    } else {
      cell.content = CellContent::Free;
    }
    cell.height_stories = 1 + floor_clamped(genome.gene(i, kHeightGene) * kMaxStories, kMaxStories - 1);
    cell.prefab_index = floor_clamped(genome.gene(i, kPrefabGene) * kPrefabCount, kPrefabCount - 1);

    if (cell.content != CellContent::Free) continue;
    const double prop_gene = genome.gene(i, kPropGene);
    const int count = floor_clamped(prop_gene * (kMaxPropsPerCell + 1), kMaxPropsPerCell);
    // Quantized so the stream is a function of the gene value alone.
    const auto quantized = static_cast<std::uint64_t>(std::floor(prop_gene * 0x1.0p32));
    CounterRng sub{kPropStreamTag, static_cast<std::uint64_t>(i), quantized};
    for (int k = 0; k < count; ++k) {
      PropPlacement p;
      p.kind = static_cast<PropKind>(floor_clamped(sub.uniform() * 4.0, 3));
      p.u = sub.uniform();
      p.v = sub.uniform();
      cell.props.push_back(p);
    }
  }
  return layout;
}

MapLayout repair(MapLayout layout) {
  int count = 0;
  auto labels = label_components(layout, is_street, &count);

  if (count == 0) {
    for (int c = 0; c < kGridSize; ++c) make_street(layout, {kGridSize / 2, c});
    for (int r = 0; r < kGridSize; ++r) make_street(layout, {r, kGridSize / 2});
    return layout;
  }

  while (count > 1) {
    std::vector<int> sizes(static_cast<std::size_t>(count), 0);
    for (int l : labels) {
      if (l >= 0) ++sizes[static_cast<std::size_t>(l)];
    }
    // max_element keeps the first maximum: the component found first in row-major order.
    const int largest = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

    // Manhattan distance from the largest component to every cell (BFS on the open grid).
    std::array<int, kCellCount> dist;
    dist.fill(-1);
    std::vector<int> inside, frontier;
    for (int i = 0; i < kCellCount; ++i) {
      if (labels[static_cast<std::size_t>(i)] == largest) {
        inside.push_back(i);
        dist[static_cast<std::size_t>(i)] = 0;
      }
    }
    frontier = inside;
    for (std::size_t head = 0; head < frontier.size(); ++head) {
      const CellCoord c = cell_at(frontier[head]);
      for (auto d : kNeighbours4) {
        const CellCoord n{c.row + d.row, c.col + d.col};
        if (!in_grid(n) || dist[static_cast<std::size_t>(cell_index(n))] >= 0) continue;
        dist[static_cast<std::size_t>(cell_index(n))] = dist[static_cast<std::size_t>(frontier[head])] + 1;
        frontier.push_back(cell_index(n));
      }
    }
    int best_dist = std::numeric_limits<int>::max();
    for (int i = 0; i < kCellCount; ++i) {
      const int l = labels[static_cast<std::size_t>(i)];
      if (l >= 0 && l != largest) best_dist = std::min(best_dist, dist[static_cast<std::size_t>(i)]);
    }
    std::vector<int> nearest;
    for (int i = 0; i < kCellCount; ++i) {
      const int l = labels[static_cast<std::size_t>(i)];
      if (l >= 0 && l != largest && dist[static_cast<std::size_t>(i)] == best_dist) nearest.push_back(i);
    }
    // Lexicographically smallest (inside, outside) pair at the minimum distance.
    CellCoord from{}, to{};
    bool found = false;
    for (std::size_t ai = 0; ai < inside.size() && !found; ++ai) {
      const CellCoord ca = cell_at(inside[ai]);
      for (int b : nearest) {
        const CellCoord cb = cell_at(b);
        if (std::abs(ca.row - cb.row) + std::abs(ca.col - cb.col) == best_dist) {
          from = ca;
          to = cb;
          found = true;
          break;
        }
      }
    }

    // Row-first L path: along from.row to to.col, then along to.col to to.row.
    const int step_c = to.col >= from.col ? 1 : -1;
    for (int c = from.col; c != to.col; c += step_c) make_street(layout, {from.row, c});
    const int step_r = to.row >= from.row ? 1 : -1;
    for (int r = from.row; r != to.row; r += step_r) make_street(layout, {r, to.col});

    labels = label_components(layout, is_street, &count);
  }
  return layout;
}

void place_spawns(MapLayout& layout) {
  int count = 0;
  const auto walk = label_components(layout, [](const Cell& c) { return c.walkable(); }, &count);
  int region = -1;
  for (int i = 0; i < kCellCount && region < 0; ++i) {
    if (is_street(layout.grid[static_cast<std::size_t>(i)])) region = walk[static_cast<std::size_t>(i)];
  }

  auto nearest = [&](CellCoord anchor) {
    CellCoord best{};
    int best_d2 = std::numeric_limits<int>::max();
    for (int i = 0; i < kCellCount; ++i) {
      if (walk[static_cast<std::size_t>(i)] != region) continue;
      const CellCoord c = cell_at(i);
      const int dr = c.row - anchor.row;
      const int dc = c.col - anchor.col;
      const int d2 = dr * dr + dc * dc;
      if (d2 < best_d2) {
        best_d2 = d2;
        best = c;
      }
    }
    return best;
  };
  layout.spawns = {nearest(kWestAnchor), nearest(kEastAnchor)};
}

MapLayout decode(const MapGenome& genome, const DecodeThresholds& thresholds) {
  MapLayout layout = repair(decode_cells(genome, thresholds));
  place_spawns(layout);
  return layout;
}

void validate_layout(const MapLayout& layout) {
  for (int i = 0; i < kCellCount; ++i) {
    const Cell& c = layout.grid[static_cast<std::size_t>(i)];
    const std::string where = " at cell " + std::to_string(i);
    if (c.prefab_index < 0 || c.prefab_index >= kPrefabCount) throw EncodingError("prefab index out of range" + where);
    if (c.height_stories < 1 || c.height_stories > kMaxStories) throw EncodingError("height out of range" + where);
    if (c.props.size() > static_cast<std::size_t>(kMaxPropsPerCell)) throw EncodingError("too many props" + where);
    if (c.content != CellContent::Free && !c.props.empty()) throw EncodingError("props on non-free cell" + where);
    for (const auto& p : c.props) {
      if (!(p.u >= 0.0 && p.u < 1.0 && p.v >= 0.0 && p.v < 1.0)) throw EncodingError("prop position" + where);
    }
  }
  int streets = 0;
  (void)label_components(layout, is_street, &streets);
  if (streets != 1) throw EncodingError("street network has " + std::to_string(streets) + " components");

  for (const auto& s : layout.spawns) {
    if (!layout.walkable(s)) throw EncodingError("spawn on non-walkable cell");
  }
  const auto walk = label_components(layout, [](const Cell& c) { return c.walkable(); });
  if (walk[static_cast<std::size_t>(cell_index(layout.spawns[0]))] !=
      walk[static_cast<std::size_t>(cell_index(layout.spawns[1]))]) {
    throw EncodingError("spawns are not mutually reachable");
  }
}

std::string to_ascii(const MapLayout& layout) {
  std::string out;
  out.reserve(static_cast<std::size_t>(kCellCount + kGridSize));
  for (int r = 0; r < kGridSize; ++r) {
    for (int c = 0; c < kGridSize; ++c) {
      const CellCoord at{r, c};
      char ch = '.';
      const Cell& cell = layout.at(at);
      switch (cell.content) {
        case CellContent::Building: ch = '#'; break;
        case CellContent::Street: ch = '='; break;
        case CellContent::Free: ch = cell.props.empty() ? '.' : '*'; break;
      }
      if (at == layout.spawns[1]) ch = 'B';
      if (at == layout.spawns[0]) ch = 'A';
      out.push_back(ch);
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace ufg
