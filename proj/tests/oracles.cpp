#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "ufg/eval_agents.hpp"

namespace oracle {

using ufg::CellCoord;
using ufg::CellContent;
using ufg::kGridSize;

std::vector<CellContent> reference_contents(const std::vector<double>& genes, double street_below,
                                            double building_below) {
  std::vector<CellContent> out;
  for (std::size_t i = 0; i + 3 < genes.size(); i += 4) {
    const double c = genes[i];
    if (c < street_below) {
      out.push_back(CellContent::Street);
    } else if (c < building_below) {
      out.push_back(CellContent::Building);
    } else {
      out.push_back(CellContent::Free);
    }
  }
  return out;
}

int count_components(const std::vector<std::vector<bool>>& member) {
  const int rows = static_cast<int>(member.size());
  const int cols = rows ? static_cast<int>(member[0].size()) : 0;
  std::vector<std::vector<bool>> seen(rows, std::vector<bool>(cols, false));
  int components = 0;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (!member[r][c] || seen[r][c]) continue;
      ++components;
      std::deque<std::pair<int, int>> q{{r, c}};
      seen[r][c] = true;
      while (!q.empty()) {
        auto [y, x] = q.front();
        q.pop_front();
        const int dy[] = {1, -1, 0, 0};
        const int dx[] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
          const int ny = y + dy[k];
          const int nx = x + dx[k];
          if (ny < 0 || nx < 0 || ny >= rows || nx >= cols) continue;
          if (member[ny][nx] && !seen[ny][nx]) {
            seen[ny][nx] = true;
            q.emplace_back(ny, nx);
          }
        }
      }
    }
  }
  return components;
}

std::vector<std::vector<bool>> street_mask(const ufg::MapLayout& layout) {
  std::vector<std::vector<bool>> m(kGridSize, std::vector<bool>(kGridSize));
  for (int r = 0; r < kGridSize; ++r)
    for (int c = 0; c < kGridSize; ++c) m[r][c] = layout.at({r, c}).content == CellContent::Street;
  return m;
}

std::vector<std::vector<bool>> walk_mask(const ufg::MapLayout& layout) {
  std::vector<std::vector<bool>> m(kGridSize, std::vector<bool>(kGridSize));
  for (int r = 0; r < kGridSize; ++r)
    for (int c = 0; c < kGridSize; ++c) m[r][c] = layout.at({r, c}).content != CellContent::Building;
  return m;
}

bool mask_reachable(const std::vector<std::vector<bool>>& mask, CellCoord a, CellCoord b) {
  if (!mask[a.row][a.col] || !mask[b.row][b.col]) return false;
  std::vector<std::vector<bool>> only(mask.size(), std::vector<bool>(mask[0].size(), false));
  // Restrict to the component of `a` and check b is in it.
  std::deque<CellCoord> q{a};
  only[a.row][a.col] = true;
  while (!q.empty()) {
    auto p = q.front();
    q.pop_front();
    if (p == b) return true;
    for (auto d : ufg::kNeighbours4) {
      CellCoord n{p.row + d.row, p.col + d.col};
      if (!ufg::in_grid(n) || only[n.row][n.col] || !mask[n.row][n.col]) continue;
      only[n.row][n.col] = true;
      q.push_back(n);
    }
  }
  return false;
}

std::optional<CellCoord> ray_march(const ufg::MapLayout& layout, CellCoord origin, double angle, int range_cells) {
  const double x0 = origin.col + 0.5;
  const double y0 = origin.row + 0.5;
  const double dx = std::cos(angle);
  const double dy = std::sin(angle);
  const int steps = range_cells * 100;
  for (int k = 1; k <= steps; ++k) {
    const double t = (k == steps) ? static_cast<double>(range_cells) : k / 100.0;
    const double x = x0 + t * dx;
    const double y = y0 + t * dy;
    const CellCoord cell{static_cast<int>(std::floor(y)), static_cast<int>(std::floor(x))};
    if (!ufg::in_grid(cell)) return std::nullopt;
    if (cell == origin) continue;
    const auto& c = layout.at(cell);
    const bool blocking = c.content == CellContent::Building ||
                          (c.content == CellContent::Free && c.props.size() >= 2);
    if (blocking) return cell;
  }
  return std::nullopt;
}

std::optional<CellCoord> ray_clip(const ufg::MapLayout& layout, CellCoord origin, double angle, int range_cells) {
  const double p[2] = {origin.col + 0.5, origin.row + 0.5};
  const double d[2] = {std::cos(angle), std::sin(angle)};
  std::optional<CellCoord> best;
  double best_entry = 0.0;
  for (int r = 0; r < kGridSize; ++r) {
    for (int c = 0; c < kGridSize; ++c) {
      const CellCoord cell{r, c};
      const auto& content = layout.at(cell);
      const bool blocking = content.content == CellContent::Building ||
                            (content.content == CellContent::Free && content.props.size() >= 2);
      if (cell == origin || !blocking) continue;
      double t0 = 0.0;
      double t1 = range_cells + 1.0;  // the cell may be entered at t <= range and left later
      const double lo[2] = {static_cast<double>(c), static_cast<double>(r)};
      bool miss = false;
      for (int axis = 0; axis < 2; ++axis) {
        if (std::abs(d[axis]) < 1e-15) {
          if (p[axis] < lo[axis] || p[axis] > lo[axis] + 1) miss = true;
          continue;
        }
        double a = (lo[axis] - p[axis]) / d[axis];
        double b = (lo[axis] + 1 - p[axis]) / d[axis];
        if (a > b) std::swap(a, b);
        t0 = std::max(t0, a);
        t1 = std::min(t1, b);
      }
      if (miss || t1 - t0 <= 1e-9 || t0 > range_cells) continue;
      if (!best || t0 < best_entry) {
        best = cell;
        best_entry = t0;
      }
    }
  }
  return best;
}

std::set<CellCoord> choke_points_by_removal(const ufg::MapLayout& layout) {
  auto mask = walk_mask(layout);
  const int base = count_components(mask);
  std::set<CellCoord> out;
  for (int r = 0; r < kGridSize; ++r) {
    for (int c = 0; c < kGridSize; ++c) {
      if (!mask[r][c]) continue;
      mask[r][c] = false;
      if (count_components(mask) > base) out.insert({r, c});
      mask[r][c] = true;
    }
  }
  return out;
}

namespace {

double entropy_of(double pos, double neg) {
  const double n = pos + neg;
  double h = 0.0;
  for (double k : {pos, neg}) {
    if (k > 0) h -= (k / n) * std::log2(k / n);
  }
  return h;
}

}  // namespace

std::optional<BruteSplit> brute_force_split(const std::vector<ufg::TrainingSample>& samples) {
  std::optional<BruteSplit> best;
  double total_pos = 0, total_neg = 0;
  for (const auto& s : samples) (s.label == ufg::Label::Preferred ? total_pos : total_neg) += 1;
  const double parent_h = entropy_of(total_pos, total_neg);
  const double n = static_cast<double>(samples.size());

  for (int f = 0; f < ufg::kFeatureCount; ++f) {
    std::vector<double> values;
    for (const auto& s : samples) values.push_back(s.features.as_array()[f]);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
      const double thr = (values[i] + values[i + 1]) / 2.0;
      double lp = 0, ln = 0, rp = 0, rn = 0;
      for (const auto& s : samples) {
        const bool pos = s.label == ufg::Label::Preferred;
        if (s.features.as_array()[f] <= thr) {
          (pos ? lp : ln) += 1;
        } else {
          (pos ? rp : rn) += 1;
        }
      }
      const double nl = lp + ln;
      const double nr = rp + rn;
      const double gain = parent_h - (nl / n) * entropy_of(lp, ln) - (nr / n) * entropy_of(rp, rn);
      const double split_info = entropy_of(nl, nr);
      const double ratio = split_info > 0 ? gain / split_info : 0.0;
      if (!best || ratio > best->gain_ratio + 1e-12) best = BruteSplit{f, thr, ratio};
    }
  }
  return best;
}

std::vector<ufg::TrainingSample> samples_at_node(const ufg::DecisionTree& tree, int node,
                                                 const std::vector<ufg::TrainingSample>& all) {
  std::vector<ufg::TrainingSample> out;
  for (const auto& s : all) {
    int at = 0;
    while (true) {
      if (at == node) {
        out.push_back(s);
        break;
      }
      const auto& n = tree.nodes[static_cast<std::size_t>(at)];
      if (n.leaf) break;
      at = s.features.as_array()[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
    }
  }
  return out;
}

}  // namespace oracle
