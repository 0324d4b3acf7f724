#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "looplemma/digraph.hpp"
#include "looplemma/errors.hpp"
#include "looplemma/words.hpp"

namespace looplemma {

  using Element = std::uint32_t;
  using Tuple   = std::vector<Element>;

  // A total n-ary operation on [0, m) stored as an explicit value table.
  //
  // Argument tuples are indexed lexicographically with the LEFTMOST argument
  // most significant: index(a_0, ..., a_{n-1}) = sum_j a_j * m^(n-1-j).
  // The same convention is used by the JSON format and by every builtin.
  class OpTable {
   public:
    static constexpr std::size_t max_table_size = std::size_t{1} << 26;

    OpTable() = default;
    OpTable(std::size_t arity, std::size_t domain, std::vector<Element> table);

    static OpTable from_function(std::size_t arity, std::size_t domain,
                                 std::function<Element(std::span<Element const>)> const& fn);

    // i-th of n projections on a domain of the given size.
    static OpTable projection(std::size_t i, std::size_t arity, std::size_t domain = 2);
    // Binary meet on the chain 0 < 1 < ... < m-1.
    static OpTable min_chain(std::size_t domain = 2);
    // t(x,y,z) = y if y == z, otherwise x.
    static OpTable majority3(std::size_t domain = 2);
    // t(x,y,z) = z if x == y, y if x == z, x if y == z, otherwise x.
    // On {0,1} this is x + y + z mod 2.
    static OpTable minority3(std::size_t domain = 2);

    // Named builtins: "projection:i:n[:m]", "min-chain[:m]",
    // "majority3[:m]", "minority3[:m]". Throws InvalidArgument on unknown
    // names.
    static OpTable builtin(std::string_view name);

    std::size_t arity() const noexcept { return arity_; }
    std::size_t domain() const noexcept { return domain_; }
    std::vector<Element> const& table() const noexcept { return table_; }

    std::size_t index_of(std::span<Element const> args) const;
    Element     operator()(std::span<Element const> args) const { return table_[index_of(args)]; }
    Element     operator()(std::initializer_list<Element> args) const {
      return (*this)(std::span<Element const>(args.begin(), args.size()));
    }

    // Coordinatewise application to n tuples of equal length.
    Tuple apply_coordinatewise(std::span<Tuple const* const> args) const;
    void  apply_coordinatewise(std::span<Tuple const* const> args, Tuple& out) const;

    friend bool operator==(OpTable const&, OpTable const&) = default;

   private:
    std::size_t          arity_  = 0;
    std::size_t          domain_ = 0;
    std::vector<Element> table_;
  };

  // A finite relation of fixed arity over [0, m).
  class Relation {
   public:
    Relation(std::size_t arity, std::size_t domain, std::vector<Tuple> tuples);
    static Relation from_digraph(Digraph const& g);
    static Relation full(std::size_t arity, std::size_t domain);

    std::size_t               arity() const noexcept { return arity_; }
    std::size_t               domain() const noexcept { return domain_; }
    std::vector<Tuple> const& tuples() const noexcept { return tuples_; }
    bool                      contains(Tuple const& t) const;

   private:
    std::size_t        arity_;
    std::size_t        domain_;
    std::vector<Tuple> tuples_;  // sorted, unique
  };

  bool is_idempotent(OpTable const& t);

  bool is_compatible(OpTable const& t, Relation const& r);
  bool is_compatible(OpTable const& t, Digraph const& g);

  ////////////////////////////////////////////////////////////////////////
  // Star powers
  ////////////////////////////////////////////////////////////////////////

  inline constexpr std::uint64_t default_star_budget = std::uint64_t{1} << 24;

  // A substitution into t^{*k}: a value for each word of length k over
  // [0, n), stored by word code (leftmost letter most significant, which is
  // also the outermost position in the composition tree).
  class StarSubstitution {
   public:
    StarSubstitution(std::size_t arity, std::size_t depth, std::vector<Element> values);
    static StarSubstitution constant(std::size_t arity, std::size_t depth, Element value);

    std::size_t arity() const noexcept { return arity_; }
    std::size_t depth() const noexcept { return depth_; }
    std::vector<Element> const& values() const noexcept { return values_; }

    Element operator()(Word const& w) const;
    Element at_code(std::uint64_t code) const { return values_.at(code); }

   private:
    std::size_t          arity_;
    std::size_t          depth_;
    std::vector<Element> values_;
  };

  // t^{*k}(f) by the outer decomposition t(t^{*(k-1)}(f_0), ..., t^{*(k-1)}(f_{n-1})),
  // f_i(x) = f([i] + x).
  Element star_power_eval(OpTable const& t, StarSubstitution const& f,
                          std::uint64_t budget = default_star_budget);

  // t^{*k}(f) by the inner decomposition t^{*(k-1)}(f'),
  // f'(x) = t(f(x + [0]), ..., f(x + [n-1])).
  Element star_power_eval_folded(OpTable const& t, StarSubstitution const& f,
                                 std::uint64_t budget = default_star_budget);

  // Depth-first outer decomposition over a leaf callback taking the word
  // code of a length-`depth` word. Nothing of size n^depth is materialised.
  Element star_power_eval(OpTable const& t, std::size_t depth,
                          std::function<Element(std::uint64_t)> const& leaf,
                          std::uint64_t budget = default_star_budget);

  ////////////////////////////////////////////////////////////////////////
  // Taylor systems
  ////////////////////////////////////////////////////////////////////////

  // Variables of a two-variable pattern.
  enum class Var : std::uint8_t { x = 0, y = 1 };

  struct TaylorRow {
    std::vector<Var> left;   // left[i] == Var::x
    std::vector<Var> right;  // right[i] == Var::y
  };

  struct TaylorSystem {
    std::size_t            arity = 0;
    std::vector<TaylorRow> rows;  // row i concerns coordinate i
    bool                   idempotent_required = false;
  };

  // Row i holds for t with x, y ranging over `subset`.
  bool taylor_row_holds(OpTable const& t, TaylorRow const& row, std::span<Element const> subset);

  // Searches each row's 2^(2(n-1)) question-mark assignments in increasing
  // mask order (bit j set = y at the j-th free position, left free positions
  // first). Returns the first system whose every row holds on subset^2, plus
  // idempotency on the subset when required.
  std::optional<TaylorSystem> find_taylor_system(OpTable const& t, std::span<Element const> subset,
                                                 bool require_idempotent);

  std::string to_string(TaylorRow const& row);

}  // namespace looplemma
