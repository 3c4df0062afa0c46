#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace linkprop {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

}  // namespace detail

/// Seeded random generator used for all randomness in the library.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard, and every distribution here is implemented on top of raw 64-bit
/// draws, so a given seed produces the same stream on every platform.
///
/// Sub-streams come from derive(label[, index]); the child seed depends only
/// on (seed, label, index), never on how many draws the parent has consumed.
/// Pipelines use this to give each stage its own stream: inserting a stage
/// does not perturb the others.
class Rng {
 public:
  explicit Rng(std::uint64_t seed)
      : seed_(seed), engine_(detail::splitmix64(seed)) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53-bit resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [0, bound); bound must be positive. Unbiased via rejection.
  std::uint64_t below(std::uint64_t bound) {
    assert(bound > 0);
    const std::uint64_t cutoff = (0 - bound) % bound;  // 2^64 mod bound
    std::uint64_t draw = next_u64();
    while (draw < cutoff) draw = next_u64();
    return draw % bound;
  }

  bool bernoulli(double probability) { return next_double() < probability; }

  Rng derive(std::string_view label) const {
    return Rng(detail::splitmix64(seed_ ^ detail::fnv1a64(label)));
  }

  Rng derive(std::string_view label, std::uint64_t index) const {
    const std::uint64_t stage = detail::splitmix64(seed_ ^ detail::fnv1a64(label));
    return Rng(detail::splitmix64(stage + 0x9e3779b97f4a7c15ULL * (index + 1)));
  }

  template <class T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i)
      std::swap(items[i - 1], items[below(i)]);
  }

  /// Moves a uniform random sample of `count` items to the front of `items`.
  template <class T>
  void partial_shuffle(std::vector<T>& items, std::size_t count) {
    assert(count <= items.size());
    for (std::size_t i = 0; i < count; ++i)
      std::swap(items[i], items[i + below(items.size() - i)]);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Number of attempts for an event with fractional expected rate: floor(rate)
/// attempts plus one more with probability equal to the fractional part.
inline std::size_t expected_count(Rng& rng, double rate) {
  assert(rate >= 0.0);
  const double whole = std::floor(rate);
  std::size_t count = static_cast<std::size_t>(whole);
  if (rng.bernoulli(rate - whole)) ++count;
  return count;
}

}  // namespace linkprop
