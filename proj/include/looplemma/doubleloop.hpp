#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "looplemma/algebra.hpp"
#include "looplemma/closure.hpp"

namespace looplemma {

  ////////////////////////////////////////////////////////////////////////
  // Equations and local satisfaction
  ////////////////////////////////////////////////////////////////////////

  // A term over operation symbols and variables.
  struct Expr {
    static constexpr std::size_t variable = static_cast<std::size_t>(-1);

    std::size_t       symbol = variable;  // index into the symbol assignment
    std::size_t       var    = 0;         // variable index when symbol == variable
    std::vector<Expr> args;

    static Expr v(std::size_t i) { return Expr{variable, i, {}}; }
    static Expr apply(std::size_t sym, std::vector<Expr> a) { return Expr{sym, 0, std::move(a)}; }
    // sym applied to variables only.
    static Expr apply_vars(std::size_t sym, std::span<std::size_t const> vars);

    std::size_t variable_count() const;  // 1 + largest variable index (0 if none)
  };

  struct Equation {
    Expr lhs;
    Expr rhs;
  };

  // A term operation of A assigned to an operation symbol.
  struct SymbolAssignment {
    std::size_t                                        arity = 0;
    std::function<Element(std::span<Element const>)> eval;

    static SymbolAssignment from_table(OpTable const& t);
    static SymbolAssignment from_term(std::vector<OpTable> ops, TermDag term, std::size_t arity);
  };

  Element evaluate(Expr const& e, std::span<SymbolAssignment const> symbols,
                   std::span<Element const> values);

  // Every equation holds for every choice of its variables from X.
  // Throws InvalidArgument on arity mismatches or unknown symbols.
  bool check_local_satisfaction(std::span<SymbolAssignment const> symbols,
                                std::span<Equation const> equations, std::span<Element const> X);

  // t(x,...,x) = x and the rows of a Taylor system, for symbol 0 = t.
  std::vector<Equation> taylor_equations(TaylorSystem const& sys);

  ////////////////////////////////////////////////////////////////////////
  // Local free algebra and the quadruple relation
  ////////////////////////////////////////////////////////////////////////

  struct DoubleLoopOptions {
    std::size_t max_domain  = 4;
    std::size_t max_subset  = 3;
    std::size_t closure_cap = default_closure_cap;
  };

  // Binary term operations X^2 -> A, each stored as its value table over
  // X^2 in lexicographic order of (z0, z1). Element 0 is x (first
  // projection), element 1 is y unless |X| = 1.
  struct FreeAlgebra {
    std::vector<Element> X;
    Closure              closure;

    std::size_t               size() const noexcept { return closure.size(); }
    std::vector<Tuple> const& elements() const noexcept { return closure.elements(); }
    std::size_t               x() const noexcept { return 0; }
    std::size_t               y() const noexcept { return closure.size() > 1 ? 1 : 0; }

    // The operation induced on F by left composition, as a table over
    // element indices. Requires a single base operation.
    OpTable induced(OpTable const& t) const;
  };

  FreeAlgebra local_free_algebra(std::span<OpTable const> ops, std::span<Element const> X,
                                 DoubleLoopOptions const& options = {});

  // Column [a0, a1, b0, b1] of the generator matrix, x < y.
  using Column = std::array<Var, 4>;

  // The 12 columns with a0 != a1 or b0 != b1 in lexicographic order.
  std::array<Column, 12> const& double_loop_columns();

  // Q as a subpower of A^(4|X|^2): coordinate block c holds the value table
  // of the c-th free algebra element.
  struct QuadRelation {
    std::vector<Element> X;
    std::size_t          block = 0;  // |X|^2
    Closure              closure;

    std::size_t size() const noexcept { return closure.size(); }
    // Block c of element i.
    Tuple coordinate(std::size_t i, std::size_t c) const;
  };

  QuadRelation generate_Q(std::span<OpTable const> ops, std::span<Element const> X,
                          DoubleLoopOptions const& options = {});

  // Q closed only until its first double loop appears. Same elements, in the
  // same order, as a prefix of generate_Q.
  QuadRelation generate_Q_until_loop(std::span<OpTable const> ops, std::span<Element const> X,
                                     DoubleLoopOptions const& options = {});

  struct DoubleLoop {
    std::size_t index;  // element of Q
    Tuple       a;      // value table of a over X^2
    Tuple       b;
    TermDag     derivation;
  };

  // First [a, a, b, b] in discovery order.
  std::optional<DoubleLoop> find_double_loop(QuadRelation const& Q);
  std::optional<DoubleLoop> find_double_loop(std::span<OpTable const> ops,
                                             std::span<Element const> X,
                                             DoubleLoopOptions const& options = {});

  struct DoubleLoopTerm {
    TermDag                  d;
    std::string              prefix;       // d in prefix notation, variables v0..v11
    std::array<std::string, 2> equations;  // grouped display of the two equations
    std::size_t              assignments = 0;
    std::vector<std::pair<Element, Element>> failures;  // (z0, z1) where an equation fails
    bool verified() const noexcept { return failures.empty(); }
  };

  // Reads d off the derivation and checks both double loop equations in A
  // for every (z0, z1) in X^2.
  DoubleLoopTerm extract_double_loop_term(std::span<OpTable const> ops, std::span<Element const> X,
                                          DoubleLoop const& loop);

  // The two double loop equations for the 12-ary symbol 0 (variables 0 = x, 1 = y).
  std::vector<Equation> double_loop_equations();

}  // namespace looplemma
