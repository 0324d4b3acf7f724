#include "looplemma/digraph.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "looplemma/errors.hpp"

namespace looplemma {

  ////////////////////////////////////////////////////////////////////////
  // BoolMatrix
  ////////////////////////////////////////////////////////////////////////

  BoolMatrix::BoolMatrix(std::size_t size)
      : size_(size), words_((size + 63) / 64), bits_(size * words_, 0) {}

  BoolMatrix BoolMatrix::identity(std::size_t size) {
    BoolMatrix m(size);
    for (std::size_t i = 0; i < size; ++i) {
      m.set(i, i);
    }
    return m;
  }

  void BoolMatrix::set(std::size_t row, std::size_t col, bool value) noexcept {
    std::uint64_t& w    = bits_[row * words_ + col / 64];
    std::uint64_t  mask = std::uint64_t{1} << (col % 64);
    w                   = value ? (w | mask) : (w & ~mask);
  }

  void BoolMatrix::or_row(std::size_t row, BoolMatrix const& other, std::size_t other_row) noexcept {
    for (std::size_t w = 0; w < words_; ++w) {
      bits_[row * words_ + w] |= other.bits_[other_row * words_ + w];
    }
  }

  bool BoolMatrix::all_ones() const noexcept {
    for (std::size_t r = 0; r < size_; ++r) {
      for (std::size_t c = 0; c < size_; ++c) {
        if (!get(r, c)) {
          return false;
        }
      }
    }
    return true;
  }

  bool BoolMatrix::diagonal_any() const noexcept {
    for (std::size_t i = 0; i < size_; ++i) {
      if (get(i, i)) {
        return true;
      }
    }
    return false;
  }

  std::size_t BoolMatrix::count() const noexcept {
    std::size_t total = 0;
    for (auto w : bits_) {
      total += static_cast<std::size_t>(std::popcount(w));
    }
    return total;
  }

  BoolMatrix operator*(BoolMatrix const& lhs, BoolMatrix const& rhs) {
    if (lhs.size_ != rhs.size_) {
      throw InvalidArgument("boolean matrix size mismatch");
    }
    BoolMatrix out(lhs.size_);
    for (std::size_t i = 0; i < lhs.size_; ++i) {
      for (std::size_t k = 0; k < lhs.size_; ++k) {
        if (lhs.get(i, k)) {
          out.or_row(i, rhs, k);
        }
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Digraph
  ////////////////////////////////////////////////////////////////////////

  Digraph::Digraph(std::size_t vertex_count) : adj_(vertex_count) {}

  Digraph::Digraph(std::size_t vertex_count, std::span<Edge const> edges) : adj_(vertex_count) {
    for (auto [u, v] : edges) {
      add_edge(u, v);
    }
  }

  Digraph Digraph::undirected(std::size_t vertex_count, std::span<Edge const> edges) {
    Digraph g(vertex_count);
    for (auto [u, v] : edges) {
      g.add_edge(u, v);
      g.add_edge(v, u);
    }
    return g;
  }

  void Digraph::add_edge(Vertex u, Vertex v) {
    if (u >= vertex_count() || v >= vertex_count()) {
      throw InvalidArgument("edge (" + std::to_string(u) + "," + std::to_string(v)
                            + ") has an endpoint outside [0, " + std::to_string(vertex_count())
                            + ")");
    }
    adj_.set(u, v);
  }

  std::vector<Edge> Digraph::edges() const {
    std::vector<Edge> out;
    for (Vertex u = 0; u < vertex_count(); ++u) {
      for (Vertex v = 0; v < vertex_count(); ++v) {
        if (adj_.get(u, v)) {
          out.emplace_back(u, v);
        }
      }
    }
    return out;
  }

  std::vector<Vertex> Digraph::successors(Vertex u) const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < vertex_count(); ++v) {
      if (adj_.get(u, v)) {
        out.push_back(v);
      }
    }
    return out;
  }

  bool Digraph::is_symmetric() const noexcept {
    for (Vertex u = 0; u < vertex_count(); ++u) {
      for (Vertex v = u + 1; v < vertex_count(); ++v) {
        if (adj_.get(u, v) != adj_.get(v, u)) {
          return false;
        }
      }
    }
    return true;
  }

  std::optional<Vertex> Digraph::first_loop() const noexcept {
    for (Vertex v = 0; v < vertex_count(); ++v) {
      if (adj_.get(v, v)) {
        return v;
      }
    }
    return std::nullopt;
  }

  ////////////////////////////////////////////////////////////////////////
  // Structure
  ////////////////////////////////////////////////////////////////////////

  std::vector<std::vector<Vertex>> scc_decompose(Digraph const& g) {
    // Iterative Tarjan; components come out sinks first.
    std::size_t const m = g.vertex_count();
    constexpr auto    unvisited = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t>         index(m, unvisited), low(m, 0);
    std::vector<bool>                on_stack(m, false);
    std::vector<Vertex>              stack;
    std::vector<std::vector<Vertex>> components;
    std::size_t                      counter = 0;

    struct Frame {
      Vertex      v;
      std::size_t next;
    };
    std::vector<Frame> call;

    for (Vertex root = 0; root < m; ++root) {
      if (index[root] != unvisited) {
        continue;
      }
      call.push_back({root, 0});
      index[root] = low[root] = counter++;
      stack.push_back(root);
      on_stack[root] = true;
      while (!call.empty()) {
        Frame& f       = call.back();
        bool   descend = false;
        for (; f.next < m; ++f.next) {
          Vertex w = static_cast<Vertex>(f.next);
          if (!g.has_edge(f.v, w)) {
            continue;
          }
          if (index[w] == unvisited) {
            index[w] = low[w] = counter++;
            stack.push_back(w);
            on_stack[w] = true;
            ++f.next;
            call.push_back({w, 0});
            descend = true;
            break;
          }
          if (on_stack[w]) {
            low[f.v] = std::min(low[f.v], index[w]);
          }
        }
        if (descend) {
          continue;
        }
        Vertex v = f.v;
        if (low[v] == index[v]) {
          std::vector<Vertex> comp;
          Vertex              w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp.push_back(w);
          } while (w != v);
          std::sort(comp.begin(), comp.end());
          components.push_back(std::move(comp));
        }
        call.pop_back();
        if (!call.empty()) {
          Vertex parent = call.back().v;
          low[parent]   = std::min(low[parent], low[v]);
        }
      }
    }
    std::reverse(components.begin(), components.end());
    return components;
  }

  bool is_strongly_connected(Digraph const& g) {
    return g.vertex_count() > 0 && scc_decompose(g).size() == 1;
  }

  bool algebraic_length_one(Digraph const& g) {
    if (g.edge_count() == 0 || !is_strongly_connected(g)) {
      throw PreconditionError(
          "algebraic length is only computed for strongly connected digraphs with an edge");
    }
    std::size_t const   m = g.vertex_count();
    std::vector<long>   level(m, -1);
    std::deque<Vertex>  queue{0};
    level[0] = 0;
    while (!queue.empty()) {
      Vertex u = queue.front();
      queue.pop_front();
      for (Vertex v : g.successors(u)) {
        if (level[v] < 0) {
          level[v] = level[u] + 1;
          queue.push_back(v);
        }
      }
    }
    long d = 0;
    for (auto [u, v] : g.edges()) {
      d = std::gcd(d, std::labs(level[u] + 1 - level[v]));
    }
    return d == 1;
  }

  Digraph relational_power(Digraph const& g, std::size_t k) {
    if (k == 0) {
      throw InvalidArgument("relational power exponent must be positive");
    }
    BoolMatrix result = g.adjacency();
    BoolMatrix base   = g.adjacency();
    std::size_t e     = k - 1;
    // result = A * A^(k-1) by binary exponentiation of the remainder
    while (e > 0) {
      if (e & 1U) {
        result = result * base;
      }
      e >>= 1U;
      if (e > 0) {
        base = base * base;
      }
    }
    return Digraph(std::move(result));
  }

  Digraph transitive_closure(Digraph const& g) {
    BoolMatrix c = g.adjacency();
    for (std::size_t k = 0; k < c.size(); ++k) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c.get(i, k)) {
          c.or_row(i, c, k);
        }
      }
    }
    return Digraph(std::move(c));
  }

  std::size_t wielandt_bound(std::size_t vertex_count) noexcept {
    if (vertex_count == 0) {
      return 1;
    }
    return (vertex_count - 1) * (vertex_count - 1) + 1;
  }

  std::size_t uniform_walk_constant(Digraph const& g) {
    if (g.vertex_count() == 0) {
      throw PreconditionError("uniform walk constant of an empty digraph");
    }
    if (g.edge_count() == 0 || !is_strongly_connected(g)) {
      throw PreconditionError("uniform walk constant requires a strongly connected digraph");
    }
    if (!algebraic_length_one(g)) {
      throw PreconditionError(
          "uniform walk constant requires algebraic length 1 (cycle lengths share a divisor)");
    }
    BoolMatrix  power = g.adjacency();
    std::size_t bound = wielandt_bound(g.vertex_count());
    for (std::size_t k = 1; k <= bound; ++k) {
      if (power.all_ones()) {
        return k;
      }
      power = power * g.adjacency();
    }
    throw PreconditionError("no uniform walk constant up to the Wielandt bound "
                            + std::to_string(bound));
  }

  std::set<std::size_t> cycle_lengths(Digraph const& g, std::size_t max_len) {
    std::set<std::size_t> out;
    if (g.vertex_count() == 0) {
      return out;
    }
    BoolMatrix power = g.adjacency();
    for (std::size_t l = 1; l <= max_len; ++l) {
      if (power.diagonal_any()) {
        out.insert(l);
      }
      if (l < max_len) {
        power = power * g.adjacency();
      }
    }
    return out;
  }

  bool has_all_cycle_lengths_from(Digraph const& g, std::size_t from) {
    if (g.edge_count() == 0 || !is_strongly_connected(g) || !algebraic_length_one(g)) {
      return false;
    }
    // Primitive past the Wielandt bound, so closed walks of every larger
    // length exist.
    std::size_t const bound   = std::max(from, wielandt_bound(g.vertex_count()));
    auto const        lengths = cycle_lengths(g, bound);
    for (std::size_t l = std::max<std::size_t>(from, 1); l <= bound; ++l) {
      if (!lengths.contains(l)) {
        return false;
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Walks
  ////////////////////////////////////////////////////////////////////////

  namespace {
    std::vector<BoolMatrix> reach_powers(Digraph const& g, std::size_t k_max) {
      std::vector<BoolMatrix> reach;
      reach.reserve(k_max + 1);
      reach.push_back(BoolMatrix::identity(g.vertex_count()));
      for (std::size_t j = 1; j <= k_max; ++j) {
        reach.push_back(reach.back() * g.adjacency());
      }
      return reach;
    }

    Vertex next_step(Digraph const& g, std::vector<BoolMatrix> const& reach, Vertex current,
                     Vertex target, std::size_t remaining) {
      for (Vertex w = 0; w < g.vertex_count(); ++w) {
        if (g.has_edge(current, w) && reach[remaining - 1].get(w, target)) {
          return w;
        }
      }
      throw std::logic_error("walk step lost reachability");
    }

    Walk greedy_walk(Digraph const& g, std::vector<BoolMatrix> const& reach, Vertex u, Vertex v,
                     std::size_t k) {
      Walk walk{u};
      walk.reserve(k + 1);
      Vertex current = u;
      for (std::size_t remaining = k; remaining > 0; --remaining) {
        current = next_step(g, reach, current, v, remaining);
        walk.push_back(current);
      }
      return walk;
    }
  }  // namespace

  WalkTable::WalkTable(Digraph const& g, std::size_t k_max)
      : graph_(g), k_(uniform_walk_constant(g)) {
    if (k_ > k_max) {
      throw PreconditionError("walk table needs k_max >= K = " + std::to_string(k_));
    }
    reach_ = reach_powers(g, k_max);
  }

  Walk WalkTable::walk(Vertex u, Vertex v, std::size_t k) const {
    if (k < k_ || k > k_max()) {
      throw InvalidArgument("walk length " + std::to_string(k) + " outside [" + std::to_string(k_)
                            + ", " + std::to_string(k_max()) + "]");
    }
    if (u >= graph_.vertex_count() || v >= graph_.vertex_count()) {
      throw InvalidArgument("walk endpoint out of range");
    }
    return greedy_walk(graph_, reach_, u, v, k);
  }

  Vertex WalkTable::walk_vertex(Vertex u, Vertex v, std::size_t k, std::size_t index) const {
    if (k < k_ || k > k_max() || index > k) {
      throw InvalidArgument("walk query out of range");
    }
    Vertex current = u;
    for (std::size_t step = 0; step < index; ++step) {
      current = next_step(graph_, reach_, current, v, k - step);
    }
    return current;
  }

  std::optional<Walk> smallest_walk(Digraph const& g, Vertex u, Vertex v, std::size_t k) {
    auto reach = reach_powers(g, k);
    if (!reach[k].get(u, v)) {
      return std::nullopt;
    }
    return greedy_walk(g, reach, u, v, k);
  }

  std::optional<Walk> smallest_cycle_walk(Digraph const& g, std::size_t k) {
    if (k == 0) {
      return std::nullopt;
    }
    auto reach = reach_powers(g, k);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      if (reach[k].get(v, v)) {
        return greedy_walk(g, reach, v, v, k);
      }
    }
    return std::nullopt;
  }

  std::optional<Walk> shortest_path(Digraph const& g, Vertex u, Vertex v) {
    std::size_t const   m = g.vertex_count();
    constexpr Vertex    none = std::numeric_limits<Vertex>::max();
    std::vector<Vertex> parent(m, none);
    std::vector<bool>   seen(m, false);
    std::deque<Vertex>  queue{u};
    seen[u] = true;
    while (!queue.empty() && !seen[v]) {
      Vertex a = queue.front();
      queue.pop_front();
      for (Vertex b : g.successors(a)) {
        if (!seen[b]) {
          seen[b]   = true;
          parent[b] = a;
          queue.push_back(b);
        }
      }
    }
    if (!seen[v]) {
      return std::nullopt;
    }
    Walk path{v};
    for (Vertex c = v; c != u; c = parent[c]) {
      path.push_back(parent[c]);
    }
    std::reverse(path.begin(), path.end());
    return path;
  }

  ////////////////////////////////////////////////////////////////////////
  // Reductions
  ////////////////////////////////////////////////////////////////////////

  namespace {
    void add_walk(std::set<Edge>& edges, Walk const& w) {
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        edges.emplace(w[i], w[i + 1]);
      }
    }

    Subdigraph induced_by_edges(std::size_t m, std::set<Edge> const& edges,
                                std::set<Vertex> vertices) {
      for (auto [u, v] : edges) {
        vertices.insert(u);
        vertices.insert(v);
      }
      Subdigraph          core;
      std::vector<Vertex> relabel(m, std::numeric_limits<Vertex>::max());
      for (Vertex v : vertices) {
        relabel[v] = static_cast<Vertex>(core.vertices.size());
        core.vertices.push_back(v);
      }
      core.graph = Digraph(core.vertices.size());
      for (auto [u, v] : edges) {
        core.graph.add_edge(relabel[u], relabel[v]);
      }
      return core;
    }
  }  // namespace

  Subdigraph finite_core(Digraph const& g, std::span<Vertex const> anchors) {
    for (Vertex a : anchors) {
      if (a >= g.vertex_count()) {
        throw InvalidArgument("anchor " + std::to_string(a) + " is not a vertex");
      }
    }
    if (!has_all_cycle_lengths_from(g, 2)) {
      throw PreconditionError(
          "finite core requires a strongly connected digraph with cycle walks of every length >= 2");
    }
    std::size_t const m       = g.vertex_count();
    std::size_t const horizon = wielandt_bound(m) + 1;
    auto const        lengths = cycle_lengths(g, horizon);

    // Shortest coprime pair of cycle-walk lengths.
    std::size_t a = 0, b = 0;
    for (std::size_t hi : lengths) {
      for (std::size_t lo : lengths) {
        if (lo >= hi) {
          break;
        }
        if (std::gcd(lo, hi) == 1) {
          a = lo;
          b = hi;
          break;
        }
      }
      if (a != 0) {
        break;
      }
    }
    if (a == 0) {
      throw PreconditionError("no coprime pair of cycle-walk lengths found");
    }

    std::set<Edge> edges;
    Walk const     first  = *smallest_cycle_walk(g, a);
    Walk const     second = *smallest_cycle_walk(g, b);
    Vertex const   hub    = first[0];
    add_walk(edges, first);
    add_walk(edges, second);

    auto connect = [&](Vertex v) {
      add_walk(edges, *shortest_path(g, hub, v));
      add_walk(edges, *shortest_path(g, v, hub));
    };
    connect(second[0]);

    Subdigraph const base = induced_by_edges(m, edges, {});
    // Smallest C such that the base has closed walks of every length >= C.
    std::size_t const base_bound   = wielandt_bound(base.vertices.size());
    auto const        base_lengths = cycle_lengths(base.graph, base_bound);
    std::size_t       c            = 1;
    for (std::size_t l = 1; l <= base_bound; ++l) {
      if (!base_lengths.contains(l)) {
        c = l + 1;
      }
    }
    for (std::size_t l = 2; l < c; ++l) {
      if (base_lengths.contains(l)) {
        continue;
      }
      Walk const cyc = *smallest_cycle_walk(g, l);
      add_walk(edges, cyc);
      connect(cyc[0]);
    }

    std::set<Vertex> anchor_set(anchors.begin(), anchors.end());
    for (Vertex v : anchor_set) {
      connect(v);
    }

    Subdigraph core = induced_by_edges(m, edges, anchor_set);
    if (!has_all_cycle_lengths_from(core.graph, 2)) {
      throw std::logic_error("finite core lost a required cycle length");
    }
    return core;
  }

  bool is_bipartite(Digraph const& g) {
    std::size_t const m = g.vertex_count();
    std::vector<int>  colour(m, -1);
    for (Vertex s = 0; s < m; ++s) {
      if (colour[s] >= 0) {
        continue;
      }
      colour[s] = 0;
      std::deque<Vertex> queue{s};
      while (!queue.empty()) {
        Vertex u = queue.front();
        queue.pop_front();
        for (Vertex v = 0; v < m; ++v) {
          if (!g.has_edge(u, v) && !g.has_edge(v, u)) {
            continue;
          }
          if (colour[v] < 0) {
            colour[v] = 1 - colour[u];
            queue.push_back(v);
          } else if (colour[v] == colour[u]) {
            return false;
          }
        }
      }
    }
    return true;
  }

  OddGirthReduction odd_girth_reduce(Digraph const& g) {
    if (!g.is_symmetric()) {
      throw PreconditionError("odd-girth reduction requires an undirected graph");
    }
    if (g.has_loop()) {
      throw PreconditionError("odd-girth reduction requires a loop-free graph");
    }
    if (!is_strongly_connected(g)) {
      throw PreconditionError("odd-girth reduction requires a connected graph");
    }
    if (is_bipartite(g)) {
      throw PreconditionError("odd-girth reduction requires a non-bipartite graph");
    }
    // Shortest odd closed walk = BFS on (vertex, parity) from (s,0) to (s,1).
    std::size_t const m     = g.vertex_count();
    std::size_t       girth = std::numeric_limits<std::size_t>::max();
    for (Vertex s = 0; s < m; ++s) {
      std::vector<std::size_t> dist(2 * m, std::numeric_limits<std::size_t>::max());
      std::deque<std::size_t>  queue{2 * s};
      dist[2 * s] = 0;
      while (!queue.empty()) {
        std::size_t state = queue.front();
        queue.pop_front();
        Vertex      u      = static_cast<Vertex>(state / 2);
        std::size_t parity = state % 2;
        for (Vertex v : g.successors(u)) {
          std::size_t next = 2 * v + (1 - parity);
          if (dist[next] == std::numeric_limits<std::size_t>::max()) {
            dist[next] = dist[state] + 1;
            queue.push_back(next);
          }
        }
      }
      girth = std::min(girth, dist[2 * s + 1]);
    }
    Digraph reduced = girth == 3 ? g : relational_power(g, girth - 2);
    for (auto [u, v] : g.edges()) {
      if (!reduced.has_edge(u, v)) {
        throw std::logic_error("odd-power reduction dropped an edge");
      }
    }
    return {girth, std::move(reduced)};
  }

}  // namespace looplemma
