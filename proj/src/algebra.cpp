#include "looplemma/algebra.hpp"

#include <algorithm>
#include <charconv>

namespace looplemma {

  namespace {
    std::size_t table_size(std::size_t arity, std::size_t domain) {
      return static_cast<std::size_t>(checked_pow(domain, arity, OpTable::max_table_size));
    }

    // Odometer over [0, m)^n in lexicographic order; returns false when done.
    bool advance(std::vector<Element>& digits, std::size_t m) {
      for (std::size_t j = digits.size(); j-- > 0;) {
        if (++digits[j] < m) {
          return true;
        }
        digits[j] = 0;
      }
      return false;
    }

    std::size_t parse_size(std::string_view s, std::string_view name) {
      std::size_t value = 0;
      auto [ptr, ec]    = std::from_chars(s.data(), s.data() + s.size(), value);
      if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw InvalidArgument("malformed number '" + std::string(s) + "' in builtin '"
                              + std::string(name) + "'");
      }
      return value;
    }

    std::vector<std::string_view> split(std::string_view s, char sep) {
      std::vector<std::string_view> parts;
      std::size_t                   start = 0;
      while (true) {
        auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) {
          return parts;
        }
        start = pos + 1;
      }
    }
  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // OpTable
  ////////////////////////////////////////////////////////////////////////

  OpTable::OpTable(std::size_t arity, std::size_t domain, std::vector<Element> table)
      : arity_(arity), domain_(domain), table_(std::move(table)) {
    if (arity_ == 0) {
      throw InvalidArgument("operation arity must be at least 1");
    }
    if (domain_ == 0) {
      throw InvalidArgument("operation domain must be non-empty");
    }
    if (domain_ > 256) {
      throw InvalidArgument("operation domains larger than 256 are not supported");
    }
    std::size_t const expected = table_size(arity_, domain_);
    if (table_.size() != expected) {
      throw InvalidArgument("operation table has " + std::to_string(table_.size())
                            + " entries, expected " + std::to_string(expected));
    }
    for (std::size_t i = 0; i < table_.size(); ++i) {
      if (table_[i] >= domain_) {
        throw InvalidArgument("operation table entry " + std::to_string(i) + " = "
                              + std::to_string(table_[i]) + " is outside the domain");
      }
    }
  }

  OpTable OpTable::from_function(std::size_t arity, std::size_t domain,
                                 std::function<Element(std::span<Element const>)> const& fn) {
    std::vector<Element> table;
    table.reserve(table_size(arity, domain));
    std::vector<Element> args(arity, 0);
    do {
      table.push_back(fn(args));
    } while (advance(args, domain));
    return OpTable(arity, domain, std::move(table));
  }

  OpTable OpTable::projection(std::size_t i, std::size_t arity, std::size_t domain) {
    if (i >= arity) {
      throw InvalidArgument("projection coordinate out of range");
    }
    return from_function(arity, domain, [i](auto a) { return a[i]; });
  }

  OpTable OpTable::min_chain(std::size_t domain) {
    return from_function(2, domain, [](auto a) { return std::min(a[0], a[1]); });
  }

  OpTable OpTable::majority3(std::size_t domain) {
    return from_function(3, domain, [](auto a) { return a[1] == a[2] ? a[1] : a[0]; });
  }

  OpTable OpTable::minority3(std::size_t domain) {
    return from_function(3, domain, [](auto a) {
      if (a[0] == a[1]) {
        return a[2];
      }
      if (a[0] == a[2]) {
        return a[1];
      }
      return a[0];
    });
  }

  OpTable OpTable::builtin(std::string_view name) {
    auto parts = split(name, ':');
    auto head  = parts[0];
    if (head == "projection") {
      if (parts.size() != 3 && parts.size() != 4) {
        throw InvalidArgument("builtin projection takes the form projection:i:n[:m]");
      }
      return projection(parse_size(parts[1], name), parse_size(parts[2], name),
                        parts.size() == 4 ? parse_size(parts[3], name) : 2);
    }
    if (parts.size() > 2) {
      throw InvalidArgument("too many parameters in builtin '" + std::string(name) + "'");
    }
    std::size_t const m = parts.size() == 2 ? parse_size(parts[1], name) : 2;
    if (head == "min-chain") {
      return min_chain(m);
    }
    if (head == "majority3") {
      return majority3(m);
    }
    if (head == "minority3") {
      return minority3(m);
    }
    throw InvalidArgument("unknown builtin operation '" + std::string(name) + "'");
  }

  std::size_t OpTable::index_of(std::span<Element const> args) const {
    if (args.size() != arity_) {
      throw InvalidArgument("operation applied to " + std::to_string(args.size())
                            + " arguments, arity is " + std::to_string(arity_));
    }
    std::size_t idx = 0;
    for (Element a : args) {
      if (a >= domain_) {
        throw InvalidArgument("operation argument outside the domain");
      }
      idx = idx * domain_ + a;
    }
    return idx;
  }

  Tuple OpTable::apply_coordinatewise(std::span<Tuple const* const> args) const {
    Tuple out;
    apply_coordinatewise(args, out);
    return out;
  }

  void OpTable::apply_coordinatewise(std::span<Tuple const* const> args, Tuple& out) const {
    if (args.size() != arity_) {
      throw InvalidArgument("coordinatewise application with wrong number of tuples");
    }
    std::size_t const len = args[0]->size();
    out.resize(len);
    for (std::size_t c = 0; c < len; ++c) {
      std::size_t idx = 0;
      for (auto const* tuple : args) {
        idx = idx * domain_ + (*tuple)[c];
      }
      out[c] = table_[idx];
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Relations and compatibility
  ////////////////////////////////////////////////////////////////////////

  Relation::Relation(std::size_t arity, std::size_t domain, std::vector<Tuple> tuples)
      : arity_(arity), domain_(domain), tuples_(std::move(tuples)) {
    if (arity_ == 0) {
      throw InvalidArgument("relation arity must be at least 1");
    }
    for (auto const& t : tuples_) {
      if (t.size() != arity_) {
        throw InvalidArgument("relation tuple of the wrong arity");
      }
      for (Element e : t) {
        if (e >= domain_) {
          throw InvalidArgument("relation tuple entry outside the domain");
        }
      }
    }
    std::sort(tuples_.begin(), tuples_.end());
    tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
  }

  Relation Relation::from_digraph(Digraph const& g) {
    std::vector<Tuple> tuples;
    for (auto [u, v] : g.edges()) {
      tuples.push_back({u, v});
    }
    return Relation(2, g.vertex_count(), std::move(tuples));
  }

  Relation Relation::full(std::size_t arity, std::size_t domain) {
    std::vector<Tuple> tuples;
    Tuple              t(arity, 0);
    do {
      tuples.push_back(t);
    } while (advance(t, domain));
    return Relation(arity, domain, std::move(tuples));
  }

  bool Relation::contains(Tuple const& t) const {
    return std::binary_search(tuples_.begin(), tuples_.end(), t);
  }

  bool is_idempotent(OpTable const& t) {
    std::vector<Element> diag(t.arity());
    for (Element x = 0; x < t.domain(); ++x) {
      std::fill(diag.begin(), diag.end(), x);
      if (t(diag) != x) {
        return false;
      }
    }
    return true;
  }

  bool is_compatible(OpTable const& t, Relation const& r) {
    if (r.domain() != t.domain()) {
      throw InvalidArgument("relation domain " + std::to_string(r.domain())
                            + " does not match operation domain " + std::to_string(t.domain()));
    }
    auto const& tuples = r.tuples();
    if (tuples.empty()) {
      return true;
    }
    std::vector<Element>      pick(t.arity(), 0);
    std::vector<Tuple const*> args(t.arity());
    do {
      for (std::size_t j = 0; j < pick.size(); ++j) {
        args[j] = &tuples[pick[j]];
      }
      if (!r.contains(t.apply_coordinatewise(args))) {
        return false;
      }
    } while (advance(pick, tuples.size()));
    return true;
  }

  bool is_compatible(OpTable const& t, Digraph const& g) {
    return is_compatible(t, Relation::from_digraph(g));
  }

  ////////////////////////////////////////////////////////////////////////
  // Star powers
  ////////////////////////////////////////////////////////////////////////

  StarSubstitution::StarSubstitution(std::size_t arity, std::size_t depth,
                                     std::vector<Element> values)
      : arity_(arity), depth_(depth), values_(std::move(values)) {
    if (arity_ == 0) {
      throw InvalidArgument("star substitution arity must be positive");
    }
    auto const expected = checked_pow(arity_, depth_, std::uint64_t{1} << 40);
    if (values_.size() != expected) {
      throw InvalidArgument("star substitution of depth " + std::to_string(depth_) + " needs "
                            + std::to_string(expected) + " values");
    }
  }

  StarSubstitution StarSubstitution::constant(std::size_t arity, std::size_t depth,
                                              Element value) {
    auto const size = checked_pow(arity, depth, std::uint64_t{1} << 40);
    return StarSubstitution(arity, depth, std::vector<Element>(size, value));
  }

  Element StarSubstitution::operator()(Word const& w) const {
    if (w.size() != depth_ || w.alphabet() != arity_) {
      throw InvalidArgument("word does not index this substitution");
    }
    return values_[w.code()];
  }

  namespace {
    void check_star(OpTable const& t, std::size_t arity, std::size_t depth,
                    std::uint64_t budget) {
      if (arity != t.arity()) {
        throw InvalidArgument("substitution arity does not match the operation");
      }
      std::uint64_t leaves = 1;
      for (std::size_t i = 0; i < depth; ++i) {
        if (leaves > budget / arity) {
          throw BudgetExceeded("star power t^{*" + std::to_string(depth)
                                   + "} exceeds the leaf budget",
                               static_cast<std::size_t>(-1), budget);
        }
        leaves *= arity;
      }
      if (leaves > budget) {
        throw BudgetExceeded("star power exceeds the leaf budget", leaves, budget);
      }
    }

    Element outer_eval(OpTable const& t, std::size_t remaining, std::uint64_t prefix,
                       std::function<Element(std::uint64_t)> const& leaf) {
      if (remaining == 0) {
        return leaf(prefix);
      }
      std::size_t const    n = t.arity();
      std::vector<Element> args(n);
      for (std::size_t i = 0; i < n; ++i) {
        args[i] = outer_eval(t, remaining - 1, prefix * n + i, leaf);
      }
      return t(args);
    }
  }  // namespace

  Element star_power_eval(OpTable const& t, std::size_t depth,
                          std::function<Element(std::uint64_t)> const& leaf,
                          std::uint64_t budget) {
    check_star(t, t.arity(), depth, budget);
    return outer_eval(t, depth, 0, leaf);
  }

  Element star_power_eval(OpTable const& t, StarSubstitution const& f, std::uint64_t budget) {
    check_star(t, f.arity(), f.depth(), budget);
    auto const& values = f.values();
    return outer_eval(t, f.depth(), 0, [&values](std::uint64_t code) { return values[code]; });
  }

  Element star_power_eval_folded(OpTable const& t, StarSubstitution const& f,
                                 std::uint64_t budget) {
    check_star(t, f.arity(), f.depth(), budget);
    std::size_t const    n = t.arity();
    std::vector<Element> current = f.values();
    std::vector<Element> args(n);
    for (std::size_t level = f.depth(); level > 0; --level) {
      std::vector<Element> folded(current.size() / n);
      for (std::size_t code = 0; code < folded.size(); ++code) {
        for (std::size_t i = 0; i < n; ++i) {
          args[i] = current[code * n + i];
        }
        folded[code] = t(args);
      }
      current = std::move(folded);
    }
    return current[0];
  }

  ////////////////////////////////////////////////////////////////////////
  // Taylor systems
  ////////////////////////////////////////////////////////////////////////

  bool taylor_row_holds(OpTable const& t, TaylorRow const& row, std::span<Element const> subset) {
    std::size_t const    n = t.arity();
    std::vector<Element> lhs(n), rhs(n);
    for (Element x : subset) {
      for (Element y : subset) {
        for (std::size_t j = 0; j < n; ++j) {
          lhs[j] = row.left[j] == Var::x ? x : y;
          rhs[j] = row.right[j] == Var::x ? x : y;
        }
        if (t(lhs) != t(rhs)) {
          return false;
        }
      }
    }
    return true;
  }

  std::optional<TaylorSystem> find_taylor_system(OpTable const& t, std::span<Element const> subset,
                                                 bool require_idempotent) {
    if (subset.empty()) {
      throw InvalidArgument("Taylor search needs a non-empty subset");
    }
    for (Element e : subset) {
      if (e >= t.domain()) {
        throw InvalidArgument("subset element outside the domain");
      }
    }
    std::size_t const n = t.arity();
    if (require_idempotent) {
      std::vector<Element> diag(n);
      for (Element x : subset) {
        std::fill(diag.begin(), diag.end(), x);
        if (t(diag) != x) {
          return std::nullopt;
        }
      }
    }
    TaylorSystem system{n, {}, require_idempotent};
    std::size_t const  free_bits = 2 * (n - 1);
    std::uint64_t const masks    = std::uint64_t{1} << free_bits;
    for (std::size_t i = 0; i < n; ++i) {
      bool found = false;
      for (std::uint64_t mask = 0; mask < masks && !found; ++mask) {
        TaylorRow   row{std::vector<Var>(n), std::vector<Var>(n)};
        std::size_t bit = 0;
        for (auto* side : {&row.left, &row.right}) {
          for (std::size_t j = 0; j < n; ++j) {
            if (j == i) {
              continue;
            }
            (*side)[j] = ((mask >> bit) & 1U) ? Var::y : Var::x;
            ++bit;
          }
        }
        row.left[i]  = Var::x;
        row.right[i] = Var::y;
        if (taylor_row_holds(t, row, subset)) {
          system.rows.push_back(std::move(row));
          found = true;
        }
      }
      if (!found) {
        return std::nullopt;
      }
    }
    return system;
  }

  std::string to_string(TaylorRow const& row) {
    auto side = [](std::vector<Var> const& vars) {
      std::string s = "t(";
      for (std::size_t j = 0; j < vars.size(); ++j) {
        s += (j ? "," : "");
        s += vars[j] == Var::x ? 'x' : 'y';
      }
      return s + ")";
    };
    return side(row.left) + " = " + side(row.right);
  }

}  // namespace looplemma
