#include "ufg/evo_engine.hpp"

#include <algorithm>
#include <cmath>

#include "ufg/errors.hpp"

namespace ufg {

void GaParams::validate() const {
  if (!std::isfinite(blx_alpha) || blx_alpha < 0.0) throw ConfigError("blx_alpha must be finite and >= 0");
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) throw ConfigError("mutation_rate must lie in [0,1]");
  if (!std::isfinite(mutation_sigma) || mutation_sigma <= 0.0) throw ConfigError("mutation_sigma must be > 0");
  if (max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
}

void validate_selection(SelectedPair selected) {
  for (int id : selected) {
    if (id < 0 || id >= kCandidatesPerGeneration) {
      throw SelectionError("candidate id " + std::to_string(id) + " out of range 0..8");
    }
  }
  if (selected[0] == selected[1]) throw SelectionError("selected ids must be distinct");
}

Candidate make_candidate(int id, MapGenome genome) {
  Candidate c{id, std::move(genome), {}, {}, {}, false};
  c.layout = decode(c.genome);
  c.features = extract_features(c.layout);
  c.report = playability(c.layout);
  return c;
}

std::vector<double> blend_crossover(std::span<const double> a, std::span<const double> b, double alpha, Rng& rng) {
  if (a.size() != b.size()) throw EncodingError("crossover parents differ in length");
  std::vector<double> child(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double lo = std::min(a[i], b[i]);
    const double hi = std::max(a[i], b[i]);
    const double spread = alpha * (hi - lo);
    const double u = rng.uniform();
    child[i] = std::clamp((lo - spread) + u * ((hi + spread) - (lo - spread)), 0.0, 1.0);
  }
  return child;
}

MapGenome blend_crossover(const MapGenome& a, const MapGenome& b, double alpha, Rng& rng) {
  return MapGenome(blend_crossover(a.genes(), b.genes(), alpha, rng));
}

MapGenome gaussian_mutate(const MapGenome& g, double rate, double sigma, Rng& rng) {
  std::vector<double> out(g.genes().begin(), g.genes().end());
  for (auto& gene : out) {
    if (rng.uniform() < rate) gene = std::clamp(gene + sigma * rng.normal(), 0.0, 1.0);
  }
  return MapGenome(std::move(out));
}

RngFactory counter_rng_factory(std::uint64_t seed) {
  return [seed](int generation, int candidate, int attempt) -> std::unique_ptr<Rng> {
    return std::make_unique<CounterRng>(std::initializer_list<std::uint64_t>{
        seed, static_cast<std::uint64_t>(generation), static_cast<std::uint64_t>(candidate),
        static_cast<std::uint64_t>(attempt)});
  };
}

Generation init_population(const GaParams& params) {
  params.validate();
  Generation gen;
  gen.index = 0;
  for (int c = 0; c < kCandidatesPerGeneration; ++c) {
    CounterRng rng{params.seed, 0, static_cast<std::uint64_t>(c)};
    std::vector<double> genes(kGenomeLength);
    for (auto& g : genes) g = rng.uniform();
    gen.candidates.push_back(make_candidate(c, MapGenome(std::move(genes))));
  }
  return gen;
}

Generation next_generation(const Generation& gen, SelectedPair selected, const GaParams& params,
                           const RngFactory& rngs) {
  validate_selection(selected);
  params.validate();
  if (gen.candidates.size() != static_cast<std::size_t>(kCandidatesPerGeneration)) {
    throw SelectionError("generation does not hold 9 candidates");
  }
  const RngFactory factory = rngs ? rngs : counter_rng_factory(params.seed);

  Generation next;
  next.index = gen.index + 1;
  next.parent_ids = selected;
  for (int slot = 0; slot < kEliteCount; ++slot) {
    Candidate elite = gen.candidates[static_cast<std::size_t>(selected[static_cast<std::size_t>(slot)])];
    elite.id = slot;
    elite.gate_warning = false;
    next.candidates.push_back(std::move(elite));
  }

  const MapGenome a = next.candidates[0].genome;
  const MapGenome b = next.candidates[1].genome;
  for (int id = kEliteCount; id < kCandidatesPerGeneration; ++id) {
    std::optional<Candidate> child;
    for (int attempt = 0; attempt < kMaxOffspringAttempts; ++attempt) {
      auto rng = factory(next.index, id, attempt);
      MapGenome genome = gaussian_mutate(blend_crossover(a, b, params.blx_alpha, *rng), params.mutation_rate,
                                         params.mutation_sigma, *rng);
      child = make_candidate(id, std::move(genome));
      if (child->report.passed) break;
    }
    child->gate_warning = !child->report.passed;
    next.candidates.push_back(std::move(*child));
  }
  return next;
}

}  // namespace ufg
