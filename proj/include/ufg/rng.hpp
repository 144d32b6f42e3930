#pragma once

#include <cstdint>
#include <initializer_list>

namespace ufg {

/// SplitMix64 finalizer.
[[nodiscard]] std::uint64_t mix64(std::uint64_t x) noexcept;

/// Order-sensitive hash of a tuple of words; used to key counter-based streams.
[[nodiscard]] std::uint64_t hash_words(std::initializer_list<std::uint64_t> words) noexcept;

/// Source of uniform variates in [0,1). Operators take this by reference so
/// tests can substitute a scripted source.
class Rng {
 public:
  virtual ~Rng() = default;
  virtual double uniform() = 0;

  /// Standard normal variate via Box-Muller (consumes two uniforms).
  double normal();
};

/// Counter-based generator: draw k of the stream keyed by (w0, w1, ...) is
/// mix(key, k). Streams with distinct keys are independent, and a stream's
/// values never depend on what other streams were consumed.
class CounterRng final : public Rng {
 public:
  explicit CounterRng(std::initializer_list<std::uint64_t> key) noexcept
      : key_(hash_words(key)) {}

  double uniform() override;
  [[nodiscard]] std::uint64_t next_u64() noexcept;
  [[nodiscard]] std::uint64_t draws() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace ufg
