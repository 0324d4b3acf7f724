#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "looplemma/algebra.hpp"

namespace looplemma {

  struct TermNode {
    enum class Kind : std::uint8_t { generator, apply };
    Kind                       kind  = Kind::generator;
    std::uint32_t              index = 0;  // generator index, or operation index
    std::vector<std::uint32_t> children;   // apply nodes only, one per argument
  };

  using TermArena = std::vector<TermNode>;

  // A term as a rooted DAG over a shared, immutable node arena. Shared
  // subterms are stored once.
  class TermDag {
   public:
    TermDag(std::shared_ptr<TermArena const> arena, std::uint32_t root);

    std::uint32_t   root() const noexcept { return root_; }
    TermNode const& node(std::uint32_t id) const { return (*arena_)[id]; }

    // Coordinatewise evaluation: generator j evaluates to generators[j].
    Tuple evaluate(std::span<OpTable const> ops, std::span<Tuple const> generators) const;

    // Scalar evaluation: generator j evaluates to variables[j].
    Element evaluate(std::span<OpTable const> ops, std::span<Element const> variables) const;

    std::size_t depth() const;
    std::size_t node_count() const;  // distinct reachable nodes

    // Prefix notation, e.g. "t(v0,t(v1,v2))". Shared subterms are expanded.
    std::string to_prefix(std::function<std::string(std::size_t)> const& op_name,
                          std::function<std::string(std::size_t)> const& var_name) const;

   private:
    std::vector<std::uint32_t> reachable_postorder() const;

    std::shared_ptr<TermArena const> arena_;
    std::uint32_t                    root_;
  };

  inline constexpr std::size_t default_closure_cap = 10'000'000;

  struct ClosureOptions {
    std::size_t max_size = default_closure_cap;
    bool        track    = false;
    // Stops the closure right after an element satisfying this is added.
    std::function<bool(Tuple const&)> stop;
  };

  struct TupleHash {
    std::size_t operator()(Tuple const& t) const noexcept;
  };

  // The least set of tuples containing the generators and closed under the
  // coordinatewise application of every operation.
  class Closure {
   public:
    // Elements in discovery order: generators first (duplicates dropped),
    // then one semi-naive round after another.
    std::vector<Tuple> const& elements() const noexcept { return elements_; }
    std::size_t               size() const noexcept { return elements_.size(); }
    std::optional<std::size_t> find(Tuple const& t) const;
    bool contains(Tuple const& t) const { return find(t).has_value(); }

    bool tracked() const noexcept { return arena_ != nullptr; }
    // First-found derivation of element i from the generators.
    TermDag derivation(std::size_t i) const;
    std::size_t round(std::size_t i) const { return rounds_.at(i); }
    // False when the closure ended early on ClosureOptions::stop.
    bool complete() const noexcept { return complete_; }

   private:
    friend Closure subpower_closure(std::span<OpTable const>, std::span<Tuple const>,
                                    ClosureOptions const&);

    std::vector<Tuple>                                elements_;
    std::vector<std::size_t>                          rounds_;
    std::unordered_map<Tuple, std::size_t, TupleHash> index_;
    std::shared_ptr<TermArena const>                  arena_;
    bool                                              complete_ = true;
  };

  // Semi-naive closure: each round only combines argument tuples that use at
  // least one element of the previous round's frontier. Iteration order is
  // fixed, so the set and its derivations are reproducible.
  Closure subpower_closure(std::span<OpTable const> ops, std::span<Tuple const> generators,
                           ClosureOptions const& options = {});

  struct LoopWitness {
    Vertex  vertex;
    TermDag derivation;  // over the edges of g in lexicographic order
  };

  // Closes the edge set of g under t and returns the first diagonal pair
  // (a, a) discovered, with a derivation from the edges.
  std::optional<LoopWitness> loop_oracle(OpTable const& t, Digraph const& g,
                                         std::size_t max_size = default_closure_cap);

}  // namespace looplemma
