#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "looplemma/construction.hpp"

namespace looplemma {

  // SplitMix64 finaliser; used to derive an independent stream per sample
  // index so results do not depend on evaluation order.
  constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  inline std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(index)));
  }

  enum class SampleFamily : std::uint8_t { uniform, constant_tail, periodic_window, near_constant };

  std::string_view to_string(SampleFamily f) noexcept;

  struct Sample {
    SampleFamily family;
    Word         word;
  };

  // Sample `index` of the stream for `seed`: uniform with weight 3/6,
  // constant tail, periodic window (period in [1, K]) and near-constant
  // (1 to 3 changed letters) with weight 1/6 each.
  Sample draw_sample(ConstructionParams const& params, std::uint64_t seed, std::uint64_t index);

}  // namespace looplemma
