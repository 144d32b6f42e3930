#include "ufg/rng.hpp"

#include <cmath>
#include <numbers>

namespace ufg {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_words(std::initializer_list<std::uint64_t> words) noexcept {
  std::uint64_t h = 0x6a09e667f3bcc908ULL ^ words.size();
  for (auto w : words) h = mix64(h ^ mix64(w));
  return h;
}

double Rng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t CounterRng::next_u64() noexcept { return mix64(key_ ^ mix64(counter_++)); }

double CounterRng::uniform() {
  // 53 high bits -> [0,1)
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace ufg
