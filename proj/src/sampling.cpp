#include "looplemma/sampling.hpp"

#include <algorithm>

namespace looplemma {

  std::string_view to_string(SampleFamily f) noexcept {
    switch (f) {
      case SampleFamily::uniform: return "uniform";
      case SampleFamily::constant_tail: return "constant-tail";
      case SampleFamily::periodic_window: return "periodic-window";
      case SampleFamily::near_constant: return "near-constant";
    }
    return "unknown";
  }

  namespace {

    // Uniform integer in [0, bound) without the implementation-defined
    // behaviour of std::uniform_int_distribution, so streams are portable.
    std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) {
      std::uint64_t const limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
      std::uint64_t       r;
      do {
        r = rng();
      } while (r >= limit);
      return r % bound;
    }

  }  // namespace

  Sample draw_sample(ConstructionParams const& params, std::uint64_t seed, std::uint64_t index) {
    std::size_t const   n = params.n;
    std::size_t const   N = params.N;
    auto                rng = sample_stream(seed, index);
    std::vector<Letter> x(N);
    for (auto& c : x) c = static_cast<Letter>(below(rng, n));

    std::uint64_t const roll = below(rng, 6);
    SampleFamily        family = SampleFamily::uniform;
    if (roll == 3) {
      family               = SampleFamily::constant_tail;
      std::size_t const cut = below(rng, N + 1);
      Letter const      c   = static_cast<Letter>(below(rng, n));
      std::fill(x.begin() + static_cast<std::ptrdiff_t>(cut), x.end(), c);
    } else if (roll == 4) {
      family              = SampleFamily::periodic_window;
      std::size_t const k = 1 + below(rng, params.K);
      std::size_t const a = below(rng, N);
      std::size_t const len = std::min(N - a, params.W + below(rng, N - a + 1));
      for (std::size_t i = a + k; i < a + len; ++i) x[i] = x[i - k];
    } else if (roll == 5) {
      family       = SampleFamily::near_constant;
      Letter const c = static_cast<Letter>(below(rng, n));
      std::fill(x.begin(), x.end(), c);
      std::uint64_t const flips = 1 + below(rng, 3);
      for (std::uint64_t f = 0; f < flips; ++f) {
        std::size_t const pos = below(rng, N);
        x[pos]                = static_cast<Letter>(below(rng, n));
      }
    }
    return {family, Word(std::move(x), n)};
  }

}  // namespace looplemma
