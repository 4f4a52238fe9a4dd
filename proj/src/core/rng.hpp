#pragma once

// Seeded, splittable random streams.
//
// Every stochastic routine takes a 64-bit seed and derives independent
// substreams from (seed, tag...) through a SplitMix64 mixing chain, so
// results never depend on evaluation order or thread schedule. Draws use
// xoshiro256** with hand-written uniform/normal transforms; the
// <random> distributions are implementation-defined and would make
// artifacts differ across standard libraries.

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace lrlogit {

std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// Mixes a seed with a sequence of tags into a new, decorrelated seed.
std::uint64_t derive_seed(std::uint64_t seed,
                          std::initializer_list<std::uint64_t> tags) noexcept;

/// Stable 64-bit tag for a short string label (FNV-1a).
constexpr std::uint64_t tag(const char* label) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char* p = label; *p != '\0'; ++p) {
    h ^= static_cast<unsigned char>(*p);
    h *= 0x100000001b3ULL;
  }
  return h;
}

class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) noexcept;
  Rng(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) noexcept
      : Rng(derive_seed(seed, tags)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Standard normal (Box-Muller; the second variate is cached).
  double normal() noexcept;
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) noexcept;
  bool coin() noexcept { return ((*this)() >> 63) != 0; }

 private:
  std::array<std::uint64_t, 4> s_{};
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace lrlogit
