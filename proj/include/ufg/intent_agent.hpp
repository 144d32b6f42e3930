#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "ufg/evo_engine.hpp"
#include "ufg/features.hpp"

namespace ufg {

enum class Label { Rejected, Preferred };

struct TrainingSample {
  FeatureVector features;
  Label label = Label::Rejected;
  int generation = 0;
};

inline constexpr int kMaxTreeDepth = 8;

struct TreeNode {
  bool leaf = true;
  // internal
  int feature = -1;
  double threshold = 0.0;
  double gain_ratio = 0.0;
  int left = -1;   // feature <= threshold
  int right = -1;
  // leaf
  Label label = Label::Rejected;
  double confidence = 0.0;  // fraction of Preferred samples reaching this node
  int sample_count = 0;
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  /// Normalized centroid of the Preferred training samples, used by agent_select.
  std::optional<std::array<double, kFeatureCount>> preferred_centroid;

  [[nodiscard]] int depth() const;
};

struct Classification {
  Label label = Label::Rejected;
  double confidence = 0.0;
};

/// One binary split of a sample set, scored by C4.5 gain ratio.
struct SplitChoice {
  int feature = -1;
  double threshold = 0.0;
  double gain_ratio = 0.0;
};

/// Shannon entropy (bits) of a two-class count.
[[nodiscard]] double binary_entropy(int positives, int total) noexcept;

/// Best split over midpoints of sorted distinct values; ties go to the lowest
/// feature, then the lowest threshold. Empty when no feature has two distinct values.
[[nodiscard]] std::optional<SplitChoice> best_split(std::span<const TrainingSample> samples);

/// Top-down gain-ratio induction without pruning. Throws TrainingError on empty input.
[[nodiscard]] DecisionTree train(std::span<const TrainingSample> samples);

[[nodiscard]] Classification classify(const DecisionTree& tree, const FeatureVector& f);

/// Two candidates with the highest Preferred confidence; ties by distance to
/// the Preferred centroid, then by lower id.
[[nodiscard]] SelectedPair agent_select(const DecisionTree& tree, const Generation& gen);

struct AgentPolicy {
  int warmup_generations = 3;
  double assist_ratio = 0.5;

  void validate() const;

  friend bool operator==(const AgentPolicy&, const AgentPolicy&) = default;
};

/// False during warmup; afterwards fires on the rounds where a ceil-based
/// accumulator of assist_ratio advances (0.5 alternates starting with the agent).
[[nodiscard]] bool should_agent_act(const AgentPolicy& policy, int generation_index, std::size_t sample_count);

}  // namespace ufg
