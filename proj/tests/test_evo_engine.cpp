#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "ufg/errors.hpp"
#include "ufg/evo_engine.hpp"
#include "ufg/json_io.hpp"

using namespace ufg;

namespace {

/// Always returns the same variate.
class FixedRng final : public Rng {
 public:
  explicit FixedRng(double u) : u_(u) {}
  double uniform() override { return u_; }

 private:
  double u_;
};

std::string genes_dump(const Generation& gen) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& c : gen.candidates) {
    doc.push_back({{"id", c.id}, {"genes", std::vector<double>(c.genome.genes().begin(), c.genome.genes().end())}});
  }
  return doc.dump();
}

}  // namespace

TEST_CASE("params validation") {
  GaParams p;
  CHECK_NOTHROW(p.validate());
  p.mutation_rate = 1.5;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = {};
  p.mutation_sigma = 0.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = {};
  p.blx_alpha = -0.1;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = {};
  p.max_iterations = 0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("initial population is seeded") {
  GaParams p;
  p.seed = 1;
  CHECK(genes_dump(init_population(p)) == genes_dump(init_population(p)));
  GaParams q;
  q.seed = 2;
  CHECK_FALSE(init_population(p).candidates[0].genome == init_population(q).candidates[0].genome);

  GaParams r;
  r.seed = 7;
  const auto gen = init_population(r);
  REQUIRE(gen.candidates.size() == 9u);
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& c : gen.candidates) {
    for (double g : c.genome.genes()) {
      CHECK((g >= 0.0 && g <= 1.0));
      sum += g;
      ++n;
    }
  }
  CHECK(n == 9u * 1600u);
  CHECK(sum / static_cast<double>(n) >= 0.45);
  CHECK(sum / static_cast<double>(n) <= 0.55);
}

TEST_CASE("BLX with identical parents copies them") {
  const auto a = testutil::random_genes(1);
  CounterRng rng{5};
  CHECK(blend_crossover(a, a, 0.5, rng) == a);
}

TEST_CASE("BLX midpoint") {
  const std::vector<double> a{0.2};
  const std::vector<double> b{0.6};
  FixedRng mid(0.5);
  CHECK(blend_crossover(a, b, 0.5, mid)[0] == doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("BLX rejects mismatched parents") {
  const std::vector<double> a{0.2, 0.3};
  const std::vector<double> b{0.6};
  CounterRng rng{1};
  CHECK_THROWS_AS((void)blend_crossover(a, b, 0.5, rng), EncodingError);
}

TEST_CASE("BLX samples are uniform on the widened interval") {
  const std::vector<double> a{0.2};
  const std::vector<double> b{0.6};
  CounterRng rng{0xb1};
  constexpr int kSamples = 10000;
  int bins[8] = {};
  double lo = 1.0;
  double hi = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const double x = blend_crossover(a, b, 0.5, rng)[0];
    lo = std::min(lo, x);
    hi = std::max(hi, x);
    ++bins[std::min(7, static_cast<int>(x / 0.1))];
  }
  CHECK(lo >= 0.0);
  CHECK(hi <= 0.8);
  double chi2 = 0.0;
  for (int c : bins) chi2 += (c - kSamples / 8.0) * (c - kSamples / 8.0) / (kSamples / 8.0);
  CHECK(chi2 < 18.475);  // chi-square, 7 dof, p = 0.01
}

TEST_CASE("mutation limits") {
  const MapGenome g(testutil::random_genes(2));
  CounterRng rng{3};
  CHECK(gaussian_mutate(g, 0.0, 0.1, rng) == g);
  const auto tiny = gaussian_mutate(g, 1.0, 1e-12, rng);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(tiny[i] - g[i]) <= 1e-9);
}

TEST_CASE("mutation count follows the binomial") {
  const MapGenome g(std::vector<double>(kGenomeLength, 0.5));
  constexpr int kTrials = 1000;
  double total = 0.0;
  for (int t = 0; t < kTrials; ++t) {
    CounterRng rng{0x4d, static_cast<std::uint64_t>(t)};
    const auto m = gaussian_mutate(g, 0.05, 0.1, rng);
    for (std::size_t i = 0; i < m.size(); ++i) total += m[i] != g[i];
  }
  const double mean = total / kTrials;
  const double sd_of_mean = std::sqrt(1600 * 0.05 * 0.95 / kTrials);
  CHECK(std::abs(mean - 80.0) <= 3.0 * sd_of_mean);
}

TEST_CASE("elites carry over gene for gene") {
  GaParams p;
  p.seed = 11;
  const auto gen = init_population(p);
  const auto next = next_generation(gen, {3, 7}, p);
  CHECK(next.index == 1);
  REQUIRE(next.candidates.size() == 9u);
  CHECK(next.candidates[0].genome == gen.candidates[3].genome);
  CHECK(next.candidates[1].genome == gen.candidates[7].genome);
  CHECK(next.parent_ids == SelectedPair{3, 7});
  for (int i = 0; i < 9; ++i) CHECK(next.candidates[static_cast<std::size_t>(i)].id == i);
}

TEST_CASE("midpoint offspring without mutation") {
  GaParams p;
  p.seed = 12;
  p.mutation_rate = 0.0;
  const auto gen = init_population(p);
  const RngFactory mid = [](int, int, int) -> std::unique_ptr<Rng> { return std::make_unique<FixedRng>(0.5); };
  const auto next = next_generation(gen, {0, 5}, p, mid);
  const auto& a = gen.candidates[0].genome;
  const auto& b = gen.candidates[5].genome;
  for (int id = 2; id < 9; ++id) {
    const auto& child = next.candidates[static_cast<std::size_t>(id)].genome;
    for (std::size_t i = 0; i < child.size(); ++i) CHECK(child[i] == doctest::Approx((a[i] + b[i]) / 2).epsilon(1e-14));
  }
}

TEST_CASE("bad selections are rejected") {
  GaParams p;
  const auto gen = init_population(p);
  CHECK_THROWS_AS((void)next_generation(gen, {4, 4}, p), SelectionError);
  CHECK_THROWS_AS((void)next_generation(gen, {0, 9}, p), SelectionError);
  CHECK_THROWS_AS((void)next_generation(gen, {-1, 2}, p), SelectionError);
}

TEST_CASE("ten generations keep nine candidates") {
  GaParams p;
  p.seed = 21;
  auto gen = init_population(p);
  for (int g = 0; g < 10; ++g) {
    const int before = gen.index;
    gen = next_generation(gen, {g % 9, (g + 4) % 9}, p);
    CHECK(gen.index == before + 1);
    CHECK(gen.candidates.size() == 9u);
    for (const auto& c : gen.candidates) CHECK((c.report.passed || c.gate_warning));
  }
}

TEST_CASE("breeding is deterministic") {
  GaParams p;
  p.seed = 31;
  const auto gen = init_population(p);
  CHECK(genes_dump(next_generation(gen, {1, 2}, p)) == genes_dump(next_generation(gen, {1, 2}, p)));
}
