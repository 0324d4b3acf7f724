#pragma once

// Deliberately naive reimplementations used to cross-check the library.
// Nothing here calls the library's algorithms; only its value types.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "looplemma/construction.hpp"

namespace oracle {

  using looplemma::Letter;
  using looplemma::Vertex;
  using Letters = std::vector<Letter>;
  using Edges   = std::set<std::pair<Vertex, Vertex>>;

  inline bool periodic(Letters const& x, std::size_t k) {
    for (std::size_t i = 0; i + k < x.size(); ++i) {
      if (x[i] != x[i + k]) return false;
    }
    return true;
  }

  inline std::size_t period(Letters const& x) {
    std::size_t k = 1;
    while (!periodic(x, k)) ++k;
    return k;
  }

  inline bool constant(Letters const& x) {
    return std::all_of(x.begin(), x.end(), [&](Letter c) { return c == x.front(); });
  }

  inline Letters slice(Letters const& x, std::size_t i, std::size_t j) {
    return Letters(x.begin() + i, x.begin() + j);
  }

  // Is there a walk with exactly k edges from u to v? Layer by layer.
  inline bool has_walk(Edges const& e, Vertex u, Vertex v, std::size_t k) {
    std::set<Vertex> layer{u};
    for (std::size_t step = 0; step < k && !layer.empty(); ++step) {
      std::set<Vertex> next;
      for (auto const& [a, b] : e) {
        if (layer.count(a)) next.insert(b);
      }
      layer.swap(next);
    }
    return layer.count(v) > 0;
  }

  // Every length-W word with its item number (1..4) as in the construction.
  inline int item(Letters const& w, std::size_t K) {
    if (constant(w)) return 1;
    std::size_t const k = period(w);
    if (k >= 2 && k < K) return 2;
    if (constant(slice(w, 0, w.size() - 1))) return 3;
    return 4;
  }

  // Literal transcription of the positional functions and f, driven by the
  // library's window table only for the raw pi/nu of a window.
  struct Literal {
    looplemma::Construction const& ctx;

    std::int64_t raw_priority(Letters const& w) const {
      return ctx.table().entry(looplemma::Word(w, ctx.params().n)).priority;
    }
    Vertex raw_value(Letters const& w) const {
      return ctx.table().entry(looplemma::Word(w, ctx.params().n)).value;
    }

    std::int64_t pi(Letters const& x, std::size_t p) const {
      auto const& P = ctx.params();
      if (!constant(slice(x, p, p + P.W))) return raw_priority(slice(x, p, p + P.W));
      std::size_t q = p;
      while (q + P.W < x.size() && x[q + P.W] == x[p]) ++q;
      return static_cast<std::int64_t>(std::min(q - p, P.R - 1));
    }

    std::vector<std::int64_t> pis(Letters const& x) const {
      std::vector<std::int64_t> out;
      for (std::size_t p = 0; p + ctx.params().W <= x.size(); ++p) out.push_back(pi(x, p));
      return out;
    }

    Vertex nu(Letters const& x, std::size_t p) const {
      auto const& P = ctx.params();
      if (p >= 1 && p <= P.L) {
        auto const seg = slice(x, p - 1, p - 1 + P.W + P.R);
        if (constant(seg)) return ctx.alpha()(seg[0], x[p - 1 + P.W + P.R]);
      }
      return raw_value(slice(x, p, p + P.W));
    }

    bool local_max(std::vector<std::int64_t> const& pi_x, std::size_t p) const {
      auto const&       P    = ctx.params();
      std::size_t const last = P.N - P.W;
      if (pi_x[p] == static_cast<std::int64_t>(P.R)) return true;
      if (p + 1 < P.K || p > last - (P.K - 1)) return false;
      for (std::size_t q = 0; q <= last; ++q) {
        std::size_t const d = q > p ? q - p : p - q;
        if (d < P.K && pi_x[q] > pi_x[p]) return false;
      }
      return true;
    }

    // Smallest-successor k-walk, vertex at `index`.
    Vertex walk_at(Vertex u, Vertex v, std::size_t k, std::size_t index,
                   Edges const& e) const {
      Vertex cur = u;
      for (std::size_t step = 0; step < index; ++step) {
        for (Vertex w = 0; w < ctx.graph().vertex_count(); ++w) {
          if (e.count({cur, w}) && has_walk(e, w, v, k - step - 1)) {
            cur = w;
            break;
          }
        }
      }
      return cur;
    }

    std::optional<Vertex> f(Letters const& x) const {
      auto const& P    = ctx.params();
      auto const  pi_x = pis(x);
      if (local_max(pi_x, P.L)) return nu(x, P.L);
      std::optional<std::size_t> p, q;
      for (std::size_t i = 0; i < P.L; ++i) {
        if (local_max(pi_x, i)) p = i;
      }
      for (std::size_t i = P.N - P.W + 1; i-- > P.L + 1;) {
        if (local_max(pi_x, i)) q = i;
      }
      if (!p || !q || *q - *p < P.K) return std::nullopt;
      Edges e;
      for (auto const& [a, b] : ctx.graph().edges()) e.insert({a, b});
      return walk_at(nu(x, *p), nu(x, *q), *q - *p, P.L - *p, e);
    }
  };

  // Every word of the given length over [0,n), lexicographic order.
  inline void for_each_word(std::size_t n, std::size_t len,
                            std::function<void(Letters const&)> const& fn) {
    Letters x(len, 0);
    while (true) {
      fn(x);
      std::size_t i = len;
      while (i > 0 && x[i - 1] + 1 == n) x[--i] = 0;
      if (i == 0) return;
      ++x[i - 1];
    }
  }

}  // namespace oracle
