#include "looplemma/doubleloop.hpp"

#include <algorithm>
#include <memory>

namespace looplemma {

  Expr Expr::apply_vars(std::size_t sym, std::span<std::size_t const> vars) {
    std::vector<Expr> a;
    a.reserve(vars.size());
    for (auto i : vars) a.push_back(v(i));
    return apply(sym, std::move(a));
  }

  std::size_t Expr::variable_count() const {
    if (symbol == variable) return var + 1;
    std::size_t m = 0;
    for (auto const& a : args) m = std::max(m, a.variable_count());
    return m;
  }

  SymbolAssignment SymbolAssignment::from_table(OpTable const& t) {
    return {t.arity(), [t](std::span<Element const> args) { return t(args); }};
  }

  SymbolAssignment SymbolAssignment::from_term(std::vector<OpTable> ops, TermDag term,
                                               std::size_t arity) {
    auto shared = std::make_shared<std::vector<OpTable> const>(std::move(ops));
    return {arity, [shared, term](std::span<Element const> args) {
              return term.evaluate(*shared, args);
            }};
  }

  Element evaluate(Expr const& e, std::span<SymbolAssignment const> symbols,
                   std::span<Element const> values) {
    if (e.symbol == Expr::variable) {
      if (e.var >= values.size()) throw InvalidArgument("unbound variable");
      return values[e.var];
    }
    if (e.symbol >= symbols.size()) throw InvalidArgument("unknown operation symbol");
    auto const& s = symbols[e.symbol];
    if (e.args.size() != s.arity) {
      throw InvalidArgument("symbol " + std::to_string(e.symbol) + " has arity "
                            + std::to_string(s.arity) + " but is applied to "
                            + std::to_string(e.args.size()) + " arguments");
    }
    std::vector<Element> args;
    args.reserve(e.args.size());
    for (auto const& a : e.args) args.push_back(evaluate(a, symbols, values));
    return s.eval(args);
  }

  bool check_local_satisfaction(std::span<SymbolAssignment const> symbols,
                                std::span<Equation const> equations, std::span<Element const> X) {
    if (X.empty()) throw InvalidArgument("the subset X must be non-empty");
    for (auto const& eq : equations) {
      std::size_t const       vars = std::max(eq.lhs.variable_count(), eq.rhs.variable_count());
      std::vector<std::size_t> pick(vars, 0);
      std::vector<Element>     values(vars);
      while (true) {
        for (std::size_t i = 0; i < vars; ++i) values[i] = X[pick[i]];
        if (evaluate(eq.lhs, symbols, values) != evaluate(eq.rhs, symbols, values)) return false;
        std::size_t i = vars;
        while (i > 0 && pick[i - 1] + 1 == X.size()) pick[--i] = 0;
        if (i == 0) break;
        ++pick[i - 1];
      }
    }
    return true;
  }

  std::vector<Equation> taylor_equations(TaylorSystem const& sys) {
    std::vector<Equation> out;
    auto pattern = [](std::vector<Var> const& p) {
      std::vector<Expr> a;
      for (Var v : p) a.push_back(Expr::v(v == Var::x ? 0 : 1));
      return Expr::apply(0, std::move(a));
    };
    if (sys.idempotent_required) {
      out.push_back({Expr::apply(0, std::vector<Expr>(sys.arity, Expr::v(0))), Expr::v(0)});
    }
    for (auto const& row : sys.rows) out.push_back({pattern(row.left), pattern(row.right)});
    return out;
  }

  namespace {

    std::vector<Element> validated_subset(std::span<OpTable const> ops, std::span<Element const> X,
                                          DoubleLoopOptions const& options) {
      if (ops.empty()) throw InvalidArgument("at least one operation is required");
      std::size_t const m = ops[0].domain();
      for (auto const& t : ops) {
        if (t.domain() != m) throw InvalidArgument("operations have different domains");
      }
      if (X.empty()) throw InvalidArgument("the subset X must be non-empty");
      if (m > options.max_domain) {
        throw InvalidArgument("domain size " + std::to_string(m) + " exceeds the guard "
                              + std::to_string(options.max_domain));
      }
      if (X.size() > options.max_subset) {
        throw InvalidArgument("subset size " + std::to_string(X.size()) + " exceeds the guard "
                              + std::to_string(options.max_subset));
      }
      std::vector<Element> out(X.begin(), X.end());
      for (auto z : out) {
        if (z >= m) throw InvalidArgument("subset element outside the domain");
      }
      auto sorted = out;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw InvalidArgument("subset elements must be distinct");
      }
      return out;
    }

    Tuple projection_table(std::span<Element const> X, Var which) {
      Tuple out;
      for (Element z0 : X) {
        for (Element z1 : X) out.push_back(which == Var::x ? z0 : z1);
      }
      return out;
    }

    char letter(Var v) { return v == Var::x ? 'x' : 'y'; }

  }  // namespace

  FreeAlgebra local_free_algebra(std::span<OpTable const> ops, std::span<Element const> X,
                                 DoubleLoopOptions const& options) {
    auto               subset = validated_subset(ops, X, options);
    std::vector<Tuple> gens{projection_table(subset, Var::x), projection_table(subset, Var::y)};
    auto closure = subpower_closure(ops, gens, {.max_size = options.closure_cap, .track = true, .stop = {}});
    return FreeAlgebra{std::move(subset), std::move(closure)};
  }

  OpTable FreeAlgebra::induced(OpTable const& t) const {
    std::size_t const n = t.arity();
    std::size_t const f = size();
    std::uint64_t const entries = checked_pow(f, n, OpTable::max_table_size);
    std::vector<Element>      table(entries);
    std::vector<std::size_t>  pick(n, 0);
    std::vector<Tuple const*> args(n);
    for (std::uint64_t idx = 0; idx < entries; ++idx) {
      for (std::size_t j = 0; j < n; ++j) args[j] = &elements()[pick[j]];
      auto const hit = closure.find(t.apply_coordinatewise(args));
      if (!hit) throw PreconditionError("free algebra is not closed under the operation");
      table[idx] = static_cast<Element>(*hit);
      std::size_t i = n;
      while (i > 0 && pick[i - 1] + 1 == f) pick[--i] = 0;
      if (i > 0) ++pick[i - 1];
    }
    return OpTable(n, f, std::move(table));
  }

  std::array<Column, 12> const& double_loop_columns() {
    static std::array<Column, 12> const columns = [] {
      std::array<Column, 12> out{};
      std::size_t            k = 0;
      for (unsigned bits = 0; bits < 16; ++bits) {
        Column c{};
        for (int i = 0; i < 4; ++i) c[i] = ((bits >> (3 - i)) & 1U) ? Var::y : Var::x;
        if (c[0] == c[1] && c[2] == c[3]) continue;
        out[k++] = c;
      }
      return out;
    }();
    return columns;
  }

  Tuple QuadRelation::coordinate(std::size_t i, std::size_t c) const {
    auto const& e = closure.elements().at(i);
    return Tuple(e.begin() + static_cast<std::ptrdiff_t>(c * block),
                 e.begin() + static_cast<std::ptrdiff_t>((c + 1) * block));
  }

  namespace {

    bool is_double_loop(Tuple const& e, std::size_t B) {
      return std::equal(e.begin(), e.begin() + B, e.begin() + B)
             && std::equal(e.begin() + 2 * B, e.begin() + 3 * B, e.begin() + 3 * B);
    }

    QuadRelation close_Q(std::span<OpTable const> ops, std::span<Element const> X,
                         DoubleLoopOptions const& options, bool until_loop) {
      auto        subset = validated_subset(ops, X, options);
      Tuple const tx     = projection_table(subset, Var::x);
      Tuple const ty     = projection_table(subset, Var::y);
      std::vector<Tuple> gens;
      for (auto const& col : double_loop_columns()) {
        Tuple g;
        for (Var v : col) {
          Tuple const& part = v == Var::x ? tx : ty;
          g.insert(g.end(), part.begin(), part.end());
        }
        gens.push_back(std::move(g));
      }
      std::size_t const B = tx.size();
      ClosureOptions    co{.max_size = options.closure_cap, .track = true, .stop = {}};
      if (until_loop) {
        co.stop = [B](Tuple const& e) { return is_double_loop(e, B); };
      }
      return QuadRelation{std::move(subset), B, subpower_closure(ops, gens, co)};
    }

  }  // namespace

  QuadRelation generate_Q(std::span<OpTable const> ops, std::span<Element const> X,
                          DoubleLoopOptions const& options) {
    return close_Q(ops, X, options, false);
  }

  QuadRelation generate_Q_until_loop(std::span<OpTable const> ops, std::span<Element const> X,
                                     DoubleLoopOptions const& options) {
    return close_Q(ops, X, options, true);
  }

  std::optional<DoubleLoop> find_double_loop(std::span<OpTable const> ops,
                                             std::span<Element const> X,
                                             DoubleLoopOptions const& options) {
    return find_double_loop(generate_Q_until_loop(ops, X, options));
  }

  std::optional<DoubleLoop> find_double_loop(QuadRelation const& Q) {
    std::size_t const B = Q.block;
    for (std::size_t i = 0; i < Q.size(); ++i) {
      auto const& e = Q.closure.elements()[i];
      if (is_double_loop(e, B)) {
        return DoubleLoop{i, Q.coordinate(i, 0), Q.coordinate(i, 2), Q.closure.derivation(i)};
      }
    }
    return std::nullopt;
  }

  std::vector<Equation> double_loop_equations() {
    auto row = [](std::size_t r) {
      std::vector<Expr> a;
      for (auto const& col : double_loop_columns()) a.push_back(Expr::v(col[r] == Var::x ? 0 : 1));
      return Expr::apply(0, std::move(a));
    };
    return {{row(0), row(1)}, {row(2), row(3)}};
  }

  DoubleLoopTerm extract_double_loop_term(std::span<OpTable const> ops, std::span<Element const> X,
                                          DoubleLoop const& loop) {
    DoubleLoopTerm out{loop.derivation, {}, {}, 0, {}};
    out.prefix = loop.derivation.to_prefix(
        [&](std::size_t i) { return ops.size() == 1 ? std::string("t") : "t" + std::to_string(i); },
        [](std::size_t j) { return "v" + std::to_string(j); });

    auto const& cols = double_loop_columns();
    auto        grouped = [&](std::size_t r) {
      std::string s = "d(";
      for (std::size_t c = 0; c < cols.size(); ++c) {
        if (c == 2 || c == 6 || c == 10) s += ',';
        s += letter(cols[c][r]);
      }
      return s + ")";
    };
    out.equations = {grouped(0) + " = " + grouped(1), grouped(2) + " = " + grouped(3)};

    std::vector<OpTable> const owned(ops.begin(), ops.end());
    std::array<Element, 12>    vars{};
    auto                       value = [&](std::size_t r, Element z0, Element z1) {
      for (std::size_t c = 0; c < cols.size(); ++c) vars[c] = cols[c][r] == Var::x ? z0 : z1;
      return loop.derivation.evaluate(owned, std::span<Element const>(vars));
    };
    for (Element z0 : X) {
      for (Element z1 : X) {
        ++out.assignments;
        if (value(0, z0, z1) != value(1, z0, z1) || value(2, z0, z1) != value(3, z0, z1)) {
          out.failures.emplace_back(z0, z1);
        }
      }
    }
    return out;
  }

}  // namespace looplemma
