#include "ufg/intent_agent.hpp"

#include <algorithm>
#include <cmath>

#include "ufg/errors.hpp"

namespace ufg {

namespace {

constexpr double kTieTolerance = 1e-12;

bool is_preferred(const TrainingSample& s) { return s.label == Label::Preferred; }

class TreeBuilder {
 public:
  int build(std::vector<TrainingSample> node_samples, int depth) {
    const int id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();

    const int n = static_cast<int>(node_samples.size());
    const int pos = static_cast<int>(std::count_if(node_samples.begin(), node_samples.end(), is_preferred));
    {
      TreeNode& node = tree.nodes.back();
      node.sample_count = n;
      node.confidence = n ? static_cast<double>(pos) / n : 0.0;
      node.label = node.confidence > 0.5 ? Label::Preferred : Label::Rejected;
    }
    if (pos == 0 || pos == n || n < 2 || depth >= kMaxTreeDepth) return id;

    const auto split = best_split(node_samples);
    if (!split) return id;  // identical feature vectors with mixed labels

    std::vector<TrainingSample> left, right;
    for (auto& s : node_samples) {
      (s.features.as_array()[static_cast<std::size_t>(split->feature)] <= split->threshold ? left : right)
          .push_back(s);
    }
    node_samples.clear();
    const int l = build(std::move(left), depth + 1);
    const int r = build(std::move(right), depth + 1);

    TreeNode& node = tree.nodes[static_cast<std::size_t>(id)];
    node.leaf = false;
    node.feature = split->feature;
    node.threshold = split->threshold;
    node.gain_ratio = split->gain_ratio;
    node.left = l;
    node.right = r;
    return id;
  }

  DecisionTree tree;
};

}  // namespace

int DecisionTree::depth() const {
  if (nodes.empty()) return 0;
  std::vector<std::pair<int, int>> stack{{0, 0}};
  int deepest = 0;
  while (!stack.empty()) {
    auto [at, d] = stack.back();
    stack.pop_back();
    deepest = std::max(deepest, d);
    const auto& node = nodes[static_cast<std::size_t>(at)];
    if (!node.leaf) {
      stack.emplace_back(node.left, d + 1);
      stack.emplace_back(node.right, d + 1);
    }
  }
  return deepest;
}

double binary_entropy(int positives, int total) noexcept {
  if (total <= 0 || positives <= 0 || positives >= total) return 0.0;
  const double p = static_cast<double>(positives) / total;
  const double q = 1.0 - p;
  return -(p * std::log2(p) + q * std::log2(q));
}

std::optional<SplitChoice> best_split(std::span<const TrainingSample> samples) {
  const int n = static_cast<int>(samples.size());
  const int total_pos = static_cast<int>(std::count_if(samples.begin(), samples.end(), is_preferred));
  const double parent = binary_entropy(total_pos, n);

  std::optional<SplitChoice> best;
  std::vector<std::pair<double, bool>> column(samples.size());
  for (int f = 0; f < kFeatureCount; ++f) {
    for (std::size_t i = 0; i < samples.size(); ++i) {
      column[i] = {samples[i].features.as_array()[static_cast<std::size_t>(f)], is_preferred(samples[i])};
    }
    std::sort(column.begin(), column.end());

    int left_n = 0, left_pos = 0;
    for (std::size_t i = 0; i + 1 < column.size(); ++i) {
      ++left_n;
      if (column[i].second) ++left_pos;
      if (column[i].first == column[i + 1].first) continue;

      const int right_n = n - left_n;
      const int right_pos = total_pos - left_pos;
      const double gain = parent - (static_cast<double>(left_n) / n) * binary_entropy(left_pos, left_n) -
                          (static_cast<double>(right_n) / n) * binary_entropy(right_pos, right_n);
      const double split_info = binary_entropy(left_n, n);
      const double ratio = gain / split_info;
      if (!best || ratio > best->gain_ratio + kTieTolerance) {
        best = SplitChoice{f, (column[i].first + column[i + 1].first) / 2.0, ratio};
      }
    }
  }
  return best;
}

DecisionTree train(std::span<const TrainingSample> samples) {
  if (samples.empty()) throw TrainingError("cannot train on an empty sample set");
  TreeBuilder builder;
  builder.build(std::vector<TrainingSample>(samples.begin(), samples.end()), 0);

  // Per-dimension sums over sorted values, so sample order cannot change the rounding.
  std::array<std::vector<double>, kFeatureCount> columns;
  for (const auto& s : samples) {
    if (!is_preferred(s)) continue;
    const auto v = s.features.normalized();
    for (std::size_t i = 0; i < v.size(); ++i) columns[i].push_back(v[i]);
  }
  if (!columns[0].empty()) {
    std::array<double, kFeatureCount> centroid{};
    for (std::size_t i = 0; i < columns.size(); ++i) {
      std::sort(columns[i].begin(), columns[i].end());
      for (double x : columns[i]) centroid[i] += x;
      centroid[i] /= static_cast<double>(columns[i].size());
    }
    builder.tree.preferred_centroid = centroid;
  }
  return std::move(builder.tree);
}

Classification classify(const DecisionTree& tree, const FeatureVector& f) {
  if (tree.nodes.empty()) return {};
  const auto values = f.as_array();
  const TreeNode* node = &tree.nodes.front();
  while (!node->leaf) {
    const int next = values[static_cast<std::size_t>(node->feature)] <= node->threshold ? node->left : node->right;
    node = &tree.nodes[static_cast<std::size_t>(next)];
  }
  return {node->label, node->confidence};
}

SelectedPair agent_select(const DecisionTree& tree, const Generation& gen) {
  struct Ranked {
    double confidence;
    double distance;
    int id;
  };
  std::vector<Ranked> ranked;
  for (const auto& c : gen.candidates) {
    const double dist = tree.preferred_centroid ? feature_distance(*tree.preferred_centroid, c.features) : 0.0;
    ranked.push_back({classify(tree, c.features).confidence, dist, c.id});
  }
  if (ranked.size() < 2) throw SelectionError("generation has fewer than two candidates");
  std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.id < b.id;
  });
  return {ranked[0].id, ranked[1].id};
}

void AgentPolicy::validate() const {
  if (warmup_generations < 1) throw ConfigError("warmup_generations must be >= 1");
  if (!(assist_ratio >= 0.0 && assist_ratio <= 1.0)) throw ConfigError("assist_ratio must lie in [0,1]");
}

bool should_agent_act(const AgentPolicy& policy, int generation_index, std::size_t sample_count) {
  if (generation_index < policy.warmup_generations) return false;
  if (sample_count < static_cast<std::size_t>(kCandidatesPerGeneration) * static_cast<std::size_t>(policy.warmup_generations)) {
    return false;
  }
  const int k = generation_index - policy.warmup_generations;
  return std::ceil((k + 1) * policy.assist_ratio) > std::ceil(k * policy.assist_ratio);
}

}  // namespace ufg
