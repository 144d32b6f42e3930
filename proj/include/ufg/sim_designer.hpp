#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ufg/evo_engine.hpp"
#include "ufg/features.hpp"
#include "ufg/intent_agent.hpp"

namespace ufg {

/// Stand-in for a human designer: prefers maps whose features are close to a target.
struct DesignerProfile {
  FeatureVector target;
  double noise_sigma = 0.0;  // std-dev of the perception noise added to each distance
  std::uint64_t seed = 0;
};

/// Target drawn from a decoded genome whose genes are biased per seed, so
/// every target is reachable by the decoder.
[[nodiscard]] DesignerProfile make_designer(std::uint64_t seed, double noise_sigma);

/// Two candidates with the lowest perceived distance (ties by id). Noise is
/// keyed by (profile seed, generation index, candidate id).
[[nodiscard]] SelectedPair simulated_select(const DesignerProfile& profile, const Generation& gen);

/// Smallest noise-free distance from any current candidate to the target.
[[nodiscard]] double best_distance(const DesignerProfile& profile, const Generation& gen);

struct ExperimentConfig {
  std::vector<std::uint64_t> seeds;
  std::vector<bool> arms{false, true};  // assist off / on
  int max_iterations = 10;
  double noise_sigma = 0.02;
  double epsilon = 0.05;
  AgentPolicy policy;
  GaParams ga;  // seed field is overwritten per run

  void validate() const;
};

struct RunResult {
  std::uint64_t seed = 0;
  bool assist = false;
  int human_rounds = 0;
  int total_generations = 0;
  double final_distance = 0.0;
  bool converged = false;
};

struct ExperimentResult {
  std::vector<RunResult> runs;

  [[nodiscard]] double median_human_rounds(bool assist) const;
  [[nodiscard]] double median_final_distance(bool assist) const;
};

[[nodiscard]] RunResult run_single(const ExperimentConfig& config, std::uint64_t seed, bool assist);

/// Runs every (seed, arm) pair; rows ordered by seed then arm. Runs execute
/// on `threads` workers (0 = hardware concurrency). Throws ConfigError.
[[nodiscard]] ExperimentResult run_experiment(const ExperimentConfig& config, unsigned threads = 0);

/// Header: seed,assist,human_rounds,generations,final_distance
void write_csv(std::ostream& out, const ExperimentResult& result);

[[nodiscard]] double median(std::vector<double> values);

}  // namespace ufg
