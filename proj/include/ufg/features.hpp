#pragma once

#include <array>
#include <string_view>

#include "ufg/map_model.hpp"

namespace ufg {

inline constexpr int kFeatureCount = 6;

/// Scalar map descriptors fed to the intent classifier and simulated designers.
struct FeatureVector {
  double free_ratio = 0.0;
  double street_ratio = 0.0;
  double building_ratio = 0.0;
  double mean_building_height = 0.0;  // stories; 0 without buildings
  double prop_count_norm = 0.0;       // total props / kMaxTotalProps
  double mean_cover = 0.0;

  [[nodiscard]] std::array<double, kFeatureCount> as_array() const noexcept;
  [[nodiscard]] static FeatureVector from_array(const std::array<double, kFeatureCount>& values) noexcept;

  /// Every component on a [0,1] scale (height divided by kMaxStories); the
  /// space in which feature distances are measured.
  [[nodiscard]] std::array<double, kFeatureCount> normalized() const noexcept;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames{
    "free_ratio", "street_ratio", "building_ratio", "mean_building_height", "prop_count_norm", "mean_cover"};

/// Euclidean distance between normalized feature vectors.
[[nodiscard]] double feature_distance(const FeatureVector& a, const FeatureVector& b) noexcept;
[[nodiscard]] double feature_distance(const std::array<double, kFeatureCount>& normalized_a,
                                      const FeatureVector& b) noexcept;

/// Throws EncodingError when ratios do not sum to 1 or a field is non-finite.
void validate_features(const FeatureVector& f);

/// mean_cover averages cover_score over every 4th walkable cell in row-major order.
[[nodiscard]] FeatureVector extract_features(const MapLayout& layout);

}  // namespace ufg
