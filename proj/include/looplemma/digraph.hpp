#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

namespace looplemma {

  using Vertex = std::uint32_t;
  using Edge   = std::pair<Vertex, Vertex>;
  using Walk   = std::vector<Vertex>;  // k-walk: k+1 vertices

  // Square boolean matrix with bit-packed rows.
  class BoolMatrix {
   public:
    BoolMatrix() = default;
    explicit BoolMatrix(std::size_t size);

    static BoolMatrix identity(std::size_t size);

    std::size_t size() const noexcept { return size_; }

    bool get(std::size_t row, std::size_t col) const noexcept {
      return (bits_[row * words_ + col / 64] >> (col % 64)) & 1U;
    }
    void set(std::size_t row, std::size_t col, bool value = true) noexcept;

    // row |= other_row
    void or_row(std::size_t row, BoolMatrix const& other, std::size_t other_row) noexcept;

    bool all_ones() const noexcept;
    bool diagonal_any() const noexcept;
    std::size_t count() const noexcept;

    friend BoolMatrix operator*(BoolMatrix const& lhs, BoolMatrix const& rhs);
    friend bool       operator==(BoolMatrix const&, BoolMatrix const&) = default;

   private:
    std::size_t                size_  = 0;
    std::size_t                words_ = 0;
    std::vector<std::uint64_t> bits_;
  };

  class Digraph {
   public:
    Digraph() = default;
    explicit Digraph(std::size_t vertex_count);
    Digraph(std::size_t vertex_count, std::span<Edge const> edges);
    explicit Digraph(BoolMatrix adjacency) : adj_(std::move(adjacency)) {}

    // Adds (u,v) and (v,u) for every listed pair.
    static Digraph undirected(std::size_t vertex_count, std::span<Edge const> edges);

    std::size_t vertex_count() const noexcept { return adj_.size(); }
    std::size_t edge_count() const noexcept { return adj_.count(); }

    void add_edge(Vertex u, Vertex v);
    bool has_edge(Vertex u, Vertex v) const noexcept {
      return u < vertex_count() && v < vertex_count() && adj_.get(u, v);
    }

    // Lexicographically ordered edge list.
    std::vector<Edge>   edges() const;
    std::vector<Vertex> successors(Vertex u) const;

    bool is_symmetric() const noexcept;
    bool has_loop() const noexcept { return adj_.diagonal_any(); }
    std::optional<Vertex> first_loop() const noexcept;

    BoolMatrix const& adjacency() const noexcept { return adj_; }

    friend bool operator==(Digraph const&, Digraph const&) = default;

   private:
    BoolMatrix adj_;
  };

  // Strongly connected components in topological order: every edge between
  // distinct components goes from an earlier component to a later one.
  // Vertices inside a component are sorted.
  std::vector<std::vector<Vertex>> scc_decompose(Digraph const& g);
  bool is_strongly_connected(Digraph const& g);

  // gcd of all directed cycle lengths is 1. Requires g strongly connected
  // with at least one edge (throws PreconditionError otherwise).
  bool algebraic_length_one(Digraph const& g);

  // u -> v iff there is a k-walk from u to v. k >= 1.
  Digraph relational_power(Digraph const& g, std::size_t k);

  Digraph transitive_closure(Digraph const& g);

  // (m-1)^2 + 1, the primitivity exponent bound for an m-vertex digraph.
  std::size_t wielandt_bound(std::size_t vertex_count) noexcept;

  // Minimal K >= 1 with G^(k) complete for every k >= K. Throws
  // PreconditionError if g is not strongly connected with algebraic length 1.
  std::size_t uniform_walk_constant(Digraph const& g);

  // Lengths l in [1, max_len] admitting a closed l-walk.
  std::set<std::size_t> cycle_lengths(Digraph const& g, std::size_t max_len);

  // For a strongly connected g: closed walks exist for every length >= from.
  // Covers both readings of "cycle walks of all lengths" (from = 1 or 2).
  // Returns false for graphs that are not strongly connected.
  bool has_all_cycle_lengths_from(Digraph const& g, std::size_t from);

  // Deterministic k-walks between any two vertices for K <= k <= k_max.
  // Each step takes the smallest successor from which the target is still
  // reachable in exactly the remaining number of steps, so the stored walk
  // is the lexicographically smallest one.
  class WalkTable {
   public:
    WalkTable(Digraph const& g, std::size_t k_max);

    std::size_t K() const noexcept { return k_; }
    std::size_t k_max() const noexcept { return reach_.size() - 1; }

    // The fixed k-walk from u to v; k in [K, k_max].
    Walk walk(Vertex u, Vertex v, std::size_t k) const;

    // Single vertex walk(u,v,k)[index] without building the whole walk.
    Vertex walk_vertex(Vertex u, Vertex v, std::size_t k, std::size_t index) const;

   private:
    Digraph                 graph_;
    std::size_t             k_ = 0;
    std::vector<BoolMatrix> reach_;  // reach_[j] = A^j
  };

  // Lexicographically smallest k-walk from u to v, if any (k >= 0).
  std::optional<Walk> smallest_walk(Digraph const& g, Vertex u, Vertex v, std::size_t k);

  // Lexicographically smallest closed k-walk through the smallest vertex
  // that lies on a closed k-walk.
  std::optional<Walk> smallest_cycle_walk(Digraph const& g, std::size_t k);

  // Shortest path from u to v with smallest-index tie-breaking (BFS).
  std::optional<Walk> shortest_path(Digraph const& g, Vertex u, Vertex v);

  // A subdigraph on the listed original vertices, relabelled in increasing
  // order. `graph` vertex i corresponds to `vertices[i]` of the source.
  struct Subdigraph {
    Digraph             graph;
    std::vector<Vertex> vertices;
  };

  // Builds a finite strongly connected subdigraph containing the anchors
  // and closed walks of every length >= 2: two coprime cycle walks, one
  // cycle walk for each short length, and shortest connecting paths to a
  // fixed hub vertex. Requires g strongly connected with cycle walks of all
  // lengths >= 2.
  Subdigraph finite_core(Digraph const& g, std::span<Vertex const> anchors);

  struct OddGirthReduction {
    std::size_t odd_girth;
    Digraph     reduced;  // G^(l-2)
  };

  // Requires g symmetric, connected, non-bipartite and loop-free.
  OddGirthReduction odd_girth_reduce(Digraph const& g);

  bool is_bipartite(Digraph const& g);

}  // namespace looplemma
