#include "ufg/features.hpp"

#include <cmath>

#include "ufg/errors.hpp"
#include "ufg/eval_agents.hpp"

namespace ufg {

namespace {
constexpr int kCoverSubsample = 4;
}

std::array<double, kFeatureCount> FeatureVector::as_array() const noexcept {
  return {free_ratio, street_ratio, building_ratio, mean_building_height, prop_count_norm, mean_cover};
}

FeatureVector FeatureVector::from_array(const std::array<double, kFeatureCount>& v) noexcept {
  return {v[0], v[1], v[2], v[3], v[4], v[5]};
}

std::array<double, kFeatureCount> FeatureVector::normalized() const noexcept {
  auto v = as_array();
  v[3] /= kMaxStories;
  return v;
}

double feature_distance(const std::array<double, kFeatureCount>& a, const FeatureVector& b) noexcept {
  const auto nb = b.normalized();
  double sum = 0.0;
  for (int i = 0; i < kFeatureCount; ++i) {
    const double d = a[static_cast<std::size_t>(i)] - nb[static_cast<std::size_t>(i)];
    sum += d * d;
  }
  return std::sqrt(sum);
}

double feature_distance(const FeatureVector& a, const FeatureVector& b) noexcept {
  return feature_distance(a.normalized(), b);
}

void validate_features(const FeatureVector& f) {
  for (double v : f.as_array()) {
    if (!std::isfinite(v)) throw EncodingError("non-finite feature");
  }
  if (std::abs(f.free_ratio + f.street_ratio + f.building_ratio - 1.0) > 1e-9) {
    throw EncodingError("feature ratios do not sum to 1");
  }
}

FeatureVector extract_features(const MapLayout& layout) {
  int streets = 0, buildings = 0, frees = 0, props = 0, stories = 0;
  for (const Cell& c : layout.grid) {
    switch (c.content) {
      case CellContent::Street: ++streets; break;
      case CellContent::Building:
        ++buildings;
        stories += c.height_stories;
        break;
      case CellContent::Free: ++frees; break;
    }
    props += static_cast<int>(c.props.size());
  }

  double cover_sum = 0.0;
  int sampled = 0;
  int walkable_seen = 0;
  for (int i = 0; i < kCellCount; ++i) {
    const CellCoord c = cell_at(i);
    if (!layout.walkable(c)) continue;
    if (walkable_seen++ % kCoverSubsample != 0) continue;
    cover_sum += cover_score(layout, c);
    ++sampled;
  }

  FeatureVector f;
  f.street_ratio = static_cast<double>(streets) / kCellCount;
  f.building_ratio = static_cast<double>(buildings) / kCellCount;
  f.free_ratio = static_cast<double>(frees) / kCellCount;
  f.mean_building_height = buildings ? static_cast<double>(stories) / buildings : 0.0;
  f.prop_count_norm = static_cast<double>(props) / kMaxTotalProps;
  f.mean_cover = sampled ? cover_sum / sampled : 0.0;
  return f;
}

}  // namespace ufg
