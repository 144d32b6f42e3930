#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "ufg/eval_agents.hpp"
#include "ufg/features.hpp"
#include "ufg/map_model.hpp"
#include "ufg/rng.hpp"

namespace ufg {

inline constexpr int kCandidatesPerGeneration = 9;
inline constexpr int kEliteCount = 2;
inline constexpr int kMaxOffspringAttempts = 20;

struct GaParams {
  double blx_alpha = 0.5;
  double mutation_rate = 0.05;  // per gene
  double mutation_sigma = 0.1;
  int max_iterations = 10;
  std::uint64_t seed = 0;

  /// Throws ConfigError.
  void validate() const;

  friend bool operator==(const GaParams&, const GaParams&) = default;
};

using SelectedPair = std::array<int, 2>;

struct Candidate {
  int id = 0;
  MapGenome genome;
  MapLayout layout;
  FeatureVector features;
  PlayabilityReport report;
  bool gate_warning = false;  // offspring accepted after exhausting gate retries
};

struct Generation {
  int index = 0;
  std::vector<Candidate> candidates;
  std::optional<SelectedPair> parent_ids;
};

/// Decodes, featurizes and evaluates a genome.
[[nodiscard]] Candidate make_candidate(int id, MapGenome genome);

/// BLX-alpha: each child gene uniform on [lo - alpha*d, hi + alpha*d], clamped to [0,1].
/// Throws EncodingError on length mismatch.
[[nodiscard]] std::vector<double> blend_crossover(std::span<const double> a, std::span<const double> b,
                                                  double alpha, Rng& rng);
[[nodiscard]] MapGenome blend_crossover(const MapGenome& a, const MapGenome& b, double alpha, Rng& rng);

/// Each gene with probability `rate` gets N(0, sigma^2) added, then clamps.
[[nodiscard]] MapGenome gaussian_mutate(const MapGenome& g, double rate, double sigma, Rng& rng);

/// Streams for offspring breeding, keyed by (generation, candidate, attempt).
using RngFactory = std::function<std::unique_ptr<Rng>(int generation, int candidate, int attempt)>;

/// Default factory: CounterRng keyed by (seed, generation, candidate, attempt).
[[nodiscard]] RngFactory counter_rng_factory(std::uint64_t seed);

/// Generation 0: every gene uniform from a stream keyed by (seed, 0, candidate).
[[nodiscard]] Generation init_population(const GaParams& params);

/// Elites copied to slots 0 and 1, slots 2..8 bred from them. Throws SelectionError.
[[nodiscard]] Generation next_generation(const Generation& gen, SelectedPair selected, const GaParams& params,
                                         const RngFactory& rngs = {});

/// Throws SelectionError unless both ids are distinct and within 0..8.
void validate_selection(SelectedPair selected);

}  // namespace ufg
