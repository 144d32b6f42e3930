#include "ufg/sim_designer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "ufg/errors.hpp"
#include "ufg/rng.hpp"
#include "ufg/session.hpp"

namespace ufg {

namespace {

constexpr std::uint64_t kDesignerTag = 0x64657369676eULL;  // "design"
constexpr std::uint64_t kNoiseTag = 0x6e6f697365ULL;       // "noise"

// Uniform on a window of `width` whose position is drawn once per designer.
struct GeneWindow {
  double lo;
  double width;
  double draw(Rng& rng) const { return std::clamp(lo + width * rng.uniform(), 0.0, 1.0); }
};

}  // namespace

DesignerProfile make_designer(std::uint64_t seed, double noise_sigma) {
  CounterRng style{kDesignerTag, seed};
  // Windows are wide enough that the median initial best distance sits near 1.6x the
  // convergence epsilon: reachable in 10 generations, but rarely during warmup.
  const GeneWindow content{0.1 * style.uniform(), 0.9};
  const GeneWindow height{0.3 * style.uniform(), 0.7};
  const GeneWindow prefab{0.0, 1.0};
  const GeneWindow prop{0.3 * style.uniform(), 0.7};

  CounterRng genes_rng{kDesignerTag, seed, 1};
  std::vector<double> genes(kGenomeLength);
  for (int cell = 0; cell < kCellCount; ++cell) {
    auto base = static_cast<std::size_t>(cell) * kGenesPerCell;
    genes[base + kContentGene] = content.draw(genes_rng);
    genes[base + kHeightGene] = height.draw(genes_rng);
    genes[base + kPrefabGene] = prefab.draw(genes_rng);
    genes[base + kPropGene] = prop.draw(genes_rng);
  }
  return {extract_features(decode(MapGenome(std::move(genes)))), noise_sigma, seed};
}

SelectedPair simulated_select(const DesignerProfile& profile, const Generation& gen) {
  const auto target = profile.target.normalized();
  std::vector<std::pair<double, int>> perceived;
  for (const auto& c : gen.candidates) {
    double d = feature_distance(target, c.features);
    if (profile.noise_sigma > 0.0) {
      CounterRng noise{kNoiseTag, profile.seed, static_cast<std::uint64_t>(gen.index),
                       static_cast<std::uint64_t>(c.id)};
      d += profile.noise_sigma * noise.normal();
    }
    perceived.emplace_back(d, c.id);
  }
  if (perceived.size() < 2) throw SelectionError("generation has fewer than two candidates");
  std::sort(perceived.begin(), perceived.end());
  return {perceived[0].second, perceived[1].second};
}

double best_distance(const DesignerProfile& profile, const Generation& gen) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : gen.candidates) best = std::min(best, feature_distance(profile.target, c.features));
  return best;
}

void ExperimentConfig::validate() const {
  if (seeds.empty()) throw ConfigError("at least one seed is required");
  if (arms.empty()) throw ConfigError("at least one arm is required");
  if (max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) throw ConfigError("noise must be finite and >= 0");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
  policy.validate();
  ga.validate();
}

RunResult run_single(const ExperimentConfig& config, std::uint64_t seed, bool assist) {
  GaParams ga = config.ga;
  ga.seed = seed;
  ga.max_iterations = config.max_iterations;
  AgentPolicy policy = config.policy;
  if (!assist) policy.assist_ratio = 0.0;

  const DesignerProfile designer = make_designer(seed, config.noise_sigma);
  Session session("sim-" + std::to_string(seed) + (assist ? "-on" : "-off"), ga, policy);

  RunResult result{seed, assist, 0, 0, 0.0, false};
  while (true) {
    result.final_distance = best_distance(designer, session.current());
    if (result.final_distance <= config.epsilon) {
      result.converged = true;
      break;
    }
    if (session.status() == SessionStatus::Finished) break;
    if (session.turn() == Selector::Agent) {
      session.run_agent_round();
    } else {
      session.step(simulated_select(designer, session.current()), Selector::Human);
    }
  }
  result.human_rounds = session.human_rounds();
  result.total_generations = static_cast<int>(session.history().size());
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config, unsigned threads) {
  config.validate();
  struct Task {
    std::uint64_t seed;
    bool assist;
  };
  std::vector<Task> tasks;
  for (auto seed : config.seeds) {
    for (bool arm : config.arms) tasks.push_back({seed, arm});
  }

  ExperimentResult out;
  out.runs.resize(tasks.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(tasks.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        out.runs[i] = run_single(config, tasks[i].seed, tasks[i].assist);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) return std::nan("");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

double ExperimentResult::median_human_rounds(bool assist) const {
  std::vector<double> v;
  for (const auto& r : runs) {
    if (r.assist == assist) v.push_back(r.human_rounds);
  }
  return median(std::move(v));
}

double ExperimentResult::median_final_distance(bool assist) const {
  std::vector<double> v;
  for (const auto& r : runs) {
    if (r.assist == assist) v.push_back(r.final_distance);
  }
  return median(std::move(v));
}

void write_csv(std::ostream& out, const ExperimentResult& result) {
  out << "seed,assist,human_rounds,generations,final_distance\n";
  char dist[32];
  for (const auto& r : result.runs) {
    std::snprintf(dist, sizeof dist, "%.6f", r.final_distance);
    out << r.seed << ',' << (r.assist ? "on" : "off") << ',' << r.human_rounds << ',' << r.total_generations << ','
        << dist << '\n';
  }
}

}  // namespace ufg
