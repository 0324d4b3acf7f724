#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "looplemma/algebra.hpp"
#include "looplemma/closure.hpp"
#include "looplemma/digraph.hpp"
#include "looplemma/loopfinder.hpp"

namespace looplemma {

  // x_i -> t(x_0, ..., x_{n-1}) over all argument tuples.
  struct CoordinateDigraph {
    std::size_t coordinate = 0;
    Digraph     edges;
  };

  CoordinateDigraph coordinate_digraph(OpTable const& t, std::size_t i);

  // Transitive closure of every coordinate digraph, indexed by coordinate.
  std::vector<Digraph> coordinate_closures(OpTable const& t);

  // Lexicographically smallest argument tuple with args[i] == u and
  // t(args) == v, if (u, v) is an edge of P(t, i).
  std::optional<Tuple> coordinate_edge_witness(OpTable const& t, std::size_t i, Vertex u, Vertex v);

  // Per coordinate, the lexicographically first edge of g that is also an
  // edge of the closure of P(t, i). Empty if some coordinate has none.
  std::optional<std::vector<Edge>> strong_witnesses(OpTable const& t, Digraph const& g);

  // Builds b with closure edges x -> b for all x in X by adding X one
  // element at a time: start from X[0] (vertex 0 if X is empty), then
  // replace b by the smallest w with b -> w and x -> w. Empty if some step
  // has no such w.
  std::optional<Vertex> fanin_vertex(OpTable const& t, std::size_t i, std::span<Vertex const> X);
  std::optional<Vertex> fanin_vertex(Digraph const& closure, std::span<Vertex const> X);

  struct FaninFailure {
    std::size_t coordinate;
    Vertex      u, v;
  };

  // First (i, u, v) in lexicographic order, u < v, with no common closure
  // successor.
  std::optional<FaninFailure> check_fanin(OpTable const& t);

  // The common value of both sides of Taylor row i at x := u, y := v.
  // Throws PreconditionError if the sides differ.
  Vertex taylor_corollary_witness(OpTable const& t, TaylorSystem const& system, std::size_t i,
                                  Vertex u, Vertex v);

  // A substitution f of depth `depth` with f([i, ..., i]) == u and
  // t^{*depth}(f) == v, following a shortest P(t, i)-walk from u to v padded
  // at the start with u -> u. t must be idempotent. Empty if there is no
  // such walk of length at most depth; depth 0 is never enough.
  std::optional<StarSubstitution> star_path_substitution(OpTable const& t, std::size_t i, Vertex u,
                                                         Vertex v, std::size_t depth);

  // Length of a shortest P(t, i)-walk from u to v (at least 1).
  std::optional<std::size_t> coordinate_walk_length(OpTable const& t, std::size_t i, Vertex u,
                                                    Vertex v);

  // The smallest letter occurring at least k times in x and its first k
  // positions. Always found when |x| >= (k - 1) n + 1.
  struct PigeonholeChoice {
    std::size_t              letter;
    std::vector<std::size_t> positions;
  };
  std::optional<PigeonholeChoice> pigeonhole_positions(Word const& x, std::size_t k);

  // Largest k with no closed k-walk, searched up to the primitivity bound.
  // Empty if g has a loop. Requires g strongly connected with algebraic
  // length 1.
  std::optional<std::size_t> largest_loopless_length(Digraph const& g);

  struct StrongLoopOptions {
    std::size_t   closure_cap = default_closure_cap;
    std::uint64_t star_budget = default_star_budget;
  };

  struct StrongLoopReport {
    std::vector<Vertex>        b;           // fan-in vertex per coordinate
    std::optional<Vertex>      loop;        // first loop of g
    std::optional<Vertex>      oracle_loop;
    // Set when g has no loop: the largest length without a closed walk,
    // the predecessors a_i of b_i in g^(k), and the star depth and exponent
    // of the reduction to the local loop theorem.
    std::optional<std::size_t> k;
    std::vector<Vertex>        a;
    std::size_t                star_depth    = 0;
    std::uint64_t              star_exponent = 0;
    bool                       star_checked  = false;
    std::string                failure;
    bool ok() const noexcept { return loop.has_value() && oracle_loop.has_value() && failure.empty(); }
  };

  // Hypotheses, in order: idempotency, fan-in, strong connectivity,
  // compatibility, algebraic length 1. Throws HypothesisError on the first
  // failure.
  StrongLoopReport strong_loop_pipeline(OpTable const& t, Digraph const& g,
                                        StrongLoopOptions const& options = {});

}  // namespace looplemma
