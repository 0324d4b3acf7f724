#pragma once

#include <random>

#include "looplemma/construction.hpp"

namespace fixtures {

  using namespace looplemma;

  inline Digraph k3() {
    std::vector<Edge> e{{0, 1}, {1, 2}, {0, 2}};
    return Digraph::undirected(3, e);
  }

  // Directed graph with uniform walk constant 3: a loop at 0, the 2-cycle
  // 0 <-> 1 and the 3-cycle 0 -> 1 -> 2 -> 0.
  inline Digraph walk3() {
    std::vector<Edge> e{{0, 0}, {0, 1}, {1, 0}, {1, 2}, {2, 0}};
    return Digraph(3, e);
  }

  // K3 with min-chain on {0,1,2}: alpha-edge condition holds.
  inline AlphaMatrix k3_alpha() { return AlphaMatrix({{1, 0}, {0, 2}}); }

  // walk3 with min-chain on {0,1,2}: alpha-edge condition holds.
  inline AlphaMatrix walk3_alpha() { return AlphaMatrix({{1, 0}, {2, 0}}); }

  inline Construction k3_context() {
    return Construction(k3(), make_params(2, 2), k3_alpha());
  }

  inline Construction walk3_context() {
    return Construction(walk3(), make_params(2, 3), walk3_alpha());
  }

  // Words that exercise the boundary families as well as uniform noise.
  inline Word sample_word(std::mt19937_64& rng, ConstructionParams const& P, int family) {
    std::uniform_int_distribution<Letter> letter(0, static_cast<Letter>(P.n - 1));
    std::vector<Letter>                   x(P.N);
    for (auto& c : x) c = letter(rng);
    switch (family % 4) {
      case 1: {  // constant tail from a random cut
        std::uniform_int_distribution<std::size_t> cut(0, P.N);
        Letter const                               c = letter(rng);
        for (std::size_t i = cut(rng); i < P.N; ++i) x[i] = c;
        break;
      }
      case 2: {  // periodic stretch with a short period
        std::uniform_int_distribution<std::size_t> per(1, P.K);
        std::uniform_int_distribution<std::size_t> from(0, P.N - 1);
        std::size_t const                          k = per(rng);
        std::size_t const                          a = from(rng);
        for (std::size_t i = a + k; i < P.N; ++i) x[i] = x[i - k];
        break;
      }
      case 3: {  // nearly constant
        Letter const c = letter(rng);
        std::fill(x.begin(), x.end(), c);
        std::uniform_int_distribution<std::size_t> pos(0, P.N - 1);
        for (int f = 0; f < 1 + static_cast<int>(rng() % 3); ++f) x[pos(rng)] = letter(rng);
        break;
      }
      default:
        break;
    }
    return Word(std::move(x), P.n);
  }

}  // namespace fixtures
