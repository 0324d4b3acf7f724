#include <doctest.h>

#include <set>

#include "looplemma/doubleloop.hpp"

using namespace looplemma;

namespace {

  std::vector<Element> const bin{0, 1};

  // Binary term operations on X by naive fixpoint iteration over tables.
  std::set<Tuple> oracle_free(OpTable const& t, std::vector<Element> const& X) {
    std::set<Tuple> F;
    Tuple           x, y;
    for (Element a : X) {
      for (Element b : X) {
        x.push_back(a);
        y.push_back(b);
      }
    }
    F.insert(x);
    F.insert(y);
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<Tuple> cur(F.begin(), F.end());
      std::vector<std::size_t> pick(t.arity(), 0);
      while (true) {
        Tuple out(x.size());
        for (std::size_t k = 0; k < x.size(); ++k) {
          Tuple args;
          for (auto p : pick) args.push_back(cur[p][k]);
          out[k] = t(args);
        }
        grew |= F.insert(out).second;
        std::size_t i = pick.size();
        while (i > 0 && pick[i - 1] + 1 == cur.size()) pick[--i] = 0;
        if (i == 0) break;
        ++pick[i - 1];
      }
    }
    return F;
  }

  std::vector<OpTable> all_idempotent_binary_ternary() {
    std::vector<OpTable> out;
    for (unsigned bits = 0; bits < 4; ++bits) {
      out.emplace_back(2, 2, std::vector<Element>{0, bits & 1U, (bits >> 1) & 1U, 1});
    }
    for (unsigned bits = 0; bits < 64; ++bits) {
      std::vector<Element> table(8);
      table[0] = 0;
      table[7] = 1;
      for (int k = 1; k < 7; ++k) table[k] = (bits >> (k - 1)) & 1U;
      out.emplace_back(3, 2, table);
    }
    return out;
  }

}  // namespace

TEST_CASE("double loop columns are ordered lexicographically") {
  auto const& cols = double_loop_columns();
  std::string rows[4];
  for (auto const& c : cols) {
    for (int r = 0; r < 4; ++r) rows[r] += c[r] == Var::x ? 'x' : 'y';
  }
  CHECK(rows[0] == "xxxxxxyyyyyy");
  CHECK(rows[1] == "xxyyyyxxxxyy");
  CHECK(rows[2] == "xyxxyyxxyyxy");
  CHECK(rows[3] == "yxxyxyxyxyyx");
}

TEST_CASE("local free algebras") {
  std::vector<OpTable> maj{OpTable::majority3()};
  auto const           F = local_free_algebra(maj, bin);
  CHECK(F.size() == 2);
  CHECK(F.elements()[F.x()] == Tuple{0, 0, 1, 1});
  CHECK(F.elements()[F.y()] == Tuple{0, 1, 0, 1});

  std::vector<OpTable> mn{OpTable::min_chain()};
  auto const           G = local_free_algebra(mn, bin);
  CHECK(G.size() == 3);
  CHECK(G.closure.contains(Tuple{0, 0, 0, 1}));

  std::vector<Element> one{1};
  CHECK(local_free_algebra(maj, one).size() == 1);
  CHECK_THROWS_AS(local_free_algebra(maj, std::vector<Element>{}), InvalidArgument);
  CHECK_THROWS_AS(local_free_algebra(maj, std::vector<Element>{0, 0}), InvalidArgument);
  std::vector<OpTable> big{OpTable::min_chain(5)};
  CHECK_THROWS_AS(local_free_algebra(big, bin), InvalidArgument);
}

TEST_CASE("free algebra agrees with naive fixpoint iteration") {
  for (auto const& t : all_idempotent_binary_ternary()) {
    std::vector<OpTable> ops{t};
    auto const           F = local_free_algebra(ops, bin);
    std::set<Tuple> const got(F.elements().begin(), F.elements().end());
    CHECK(got == oracle_free(t, bin));
    for (std::size_t i = 0; i < F.size(); ++i) {
      std::vector<Tuple> gens{F.elements()[0], F.elements()[1]};
      CHECK(F.closure.derivation(i).evaluate(ops, gens) == F.elements()[i]);
    }
  }
  std::vector<OpTable> maj3{OpTable::majority3(3)};
  std::vector<Element> X3{0, 1, 2};
  auto const           F3 = local_free_algebra(maj3, X3);
  std::set<Tuple> const got(F3.elements().begin(), F3.elements().end());
  CHECK(got == oracle_free(OpTable::majority3(3), X3));
}

TEST_CASE("quadruple relation and double loops") {
  std::vector<OpTable> maj{OpTable::majority3()};
  auto const           Q = generate_Q(maj, bin);
  auto const           loop = find_double_loop(Q);
  REQUIRE(loop);
  auto const term = extract_double_loop_term(maj, bin, *loop);
  CHECK(term.verified());
  CHECK(term.assignments == 4);
  CHECK(term.equations[0] == "d(xx,xxxx,yyyy,yy) = d(xx,yyyy,xxxx,yy)");
  CHECK(term.equations[1] == "d(xy,xxyy,xxyy,xy) = d(yx,xyxy,xyxy,yx)");
  CHECK(term.prefix.rfind("t(", 0) == 0);

  std::vector<OpTable> mn{OpTable::min_chain()};
  auto const           mloop = find_double_loop(generate_Q(mn, bin));
  REQUIRE(mloop);
  CHECK(extract_double_loop_term(mn, bin, *mloop).verified());

  std::vector<OpTable> proj{OpTable::projection(0, 2)};
  auto const           P = generate_Q(proj, bin);
  CHECK(P.size() == 12);
  CHECK_FALSE(find_double_loop(P));

  // x = y: all generators coincide and already form a double loop.
  std::vector<Element> one{0};
  auto const           trivial = find_double_loop(generate_Q(proj, one));
  REQUIRE(trivial);
  CHECK(trivial->index == 0);
  CHECK(extract_double_loop_term(proj, one, *trivial).verified());
}

TEST_CASE("early-stopped Q is a prefix of the full closure") {
  for (auto const& t : {OpTable::majority3(), OpTable::min_chain(), OpTable::minority3()}) {
    std::vector<OpTable> ops{t};
    auto const           full  = generate_Q(ops, bin);
    auto const           early = generate_Q_until_loop(ops, bin);
    CHECK(full.closure.complete());
    CHECK_FALSE(early.closure.complete());
    REQUIRE(early.size() <= full.size());
    for (std::size_t i = 0; i < early.size(); ++i) {
      CHECK(early.closure.elements()[i] == full.closure.elements()[i]);
    }
    CHECK(find_double_loop(early)->index == find_double_loop(full)->index);
    CHECK(early.size() == find_double_loop(full)->index + 1);
  }
  std::vector<OpTable> proj{OpTable::projection(1, 2)};
  CHECK(generate_Q_until_loop(proj, bin).closure.complete());
  CHECK_FALSE(find_double_loop(proj, bin));
}

TEST_CASE("every derivation in Q reproduces its quadruple") {
  std::vector<OpTable> mn{OpTable::min_chain()};
  auto const           Q = generate_Q(mn, bin);
  std::vector<Tuple>   gens(Q.closure.elements().begin(), Q.closure.elements().begin() + 12);
  for (std::size_t i = 0; i < Q.size(); ++i) {
    CHECK(Q.closure.derivation(i).evaluate(mn, gens) == Q.closure.elements()[i]);
  }
}

TEST_CASE("Taylor locally implies double loop locally, all small idempotent operations") {
  int taylor = 0, non_taylor = 0;
  for (auto const& t : all_idempotent_binary_ternary()) {
    std::vector<OpTable> ops{t};
    auto const           sys  = find_taylor_system(t, bin, true);
    auto const           loop = find_double_loop(ops, bin);
    if (sys) {
      ++taylor;
      REQUIRE(loop);
      auto const term = extract_double_loop_term(ops, bin, *loop);
      CHECK(term.verified());
      std::vector<SymbolAssignment> d{SymbolAssignment::from_term(ops, term.d, 12)};
      auto const                    eqs = double_loop_equations();
      CHECK(check_local_satisfaction(d, eqs, bin));
    } else {
      ++non_taylor;
    }
  }
  CHECK(taylor > 0);
  CHECK(non_taylor > 0);
}

TEST_CASE("Taylor equations transfer to the free algebra") {
  for (auto const& t : all_idempotent_binary_ternary()) {
    auto const sys = find_taylor_system(t, bin, true);
    if (!sys) continue;
    std::vector<OpTable> ops{t};
    auto const           F  = local_free_algebra(ops, bin);
    OpTable const        Ft = F.induced(t);
    std::vector<Element> xy{static_cast<Element>(F.x()), static_cast<Element>(F.y())};
    for (auto const& row : sys->rows) CHECK(taylor_row_holds(Ft, row, xy));
    std::vector<SymbolAssignment> sym{SymbolAssignment::from_table(Ft)};
    CHECK(check_local_satisfaction(sym, taylor_equations(*sys), xy));
  }
}

TEST_CASE("absorption claim: one agreeing coordinate gives a quadruple in Q") {
  for (auto const& t : {OpTable::majority3(), OpTable::minority3()}) {
    std::vector<OpTable> ops{t};
    auto const           sys = find_taylor_system(t, bin, true);
    REQUIRE(sys);
    auto const   Q  = generate_Q(ops, bin);
    Tuple const  tx{0, 0, 1, 1}, ty{0, 1, 0, 1};
    auto const   tab = [&](Var v) -> Tuple const& { return v == Var::x ? tx : ty; };
    std::size_t const n = t.arity();
    std::size_t       checked = 0;
    for (unsigned am = 0; am < (1U << n); ++am) {
      for (unsigned bm = 0; bm < (1U << n); ++bm) {
        unsigned const agree = ~(am ^ bm) & ((1U << n) - 1);
        if (__builtin_popcount(agree) != 1) continue;
        std::size_t const i = static_cast<std::size_t>(__builtin_ctz(agree));
        std::vector<Tuple const*> a, a2, b, b2;
        for (std::size_t j = 0; j < n; ++j) {
          a.push_back(&tab((am >> j) & 1U ? Var::y : Var::x));
          a2.push_back(&tab((bm >> j) & 1U ? Var::y : Var::x));
          b.push_back(&tab(sys->rows[i].left[j]));
          b2.push_back(&tab(sys->rows[i].right[j]));
        }
        Tuple quad;
        for (auto const& part : {t.apply_coordinatewise(a), t.apply_coordinatewise(a2),
                                 t.apply_coordinatewise(b), t.apply_coordinatewise(b2)}) {
          quad.insert(quad.end(), part.begin(), part.end());
        }
        CHECK(Q.closure.contains(quad));
        ++checked;
      }
    }
    CHECK(checked == n * (1U << n));
  }
}

TEST_CASE("local satisfaction") {
  std::vector<SymbolAssignment> maj{SymbolAssignment::from_table(OpTable::majority3(3))};
  std::vector<Element>          all{0, 1, 2};
  std::vector<Equation>         idem{{Expr::apply(0, {Expr::v(0), Expr::v(0), Expr::v(0)}), Expr::v(0)}};
  CHECK(check_local_satisfaction(maj, idem, all));

  std::vector<SymbolAssignment> proj{SymbolAssignment::from_table(OpTable::projection(0, 3))};
  std::vector<Equation> row0{{Expr::apply(0, {Expr::v(0), Expr::v(1), Expr::v(1)}),
                              Expr::apply(0, {Expr::v(1), Expr::v(1), Expr::v(1)})}};
  CHECK_FALSE(check_local_satisfaction(proj, row0, bin));

  std::vector<Equation> wrong{{Expr::apply(0, {Expr::v(0)}), Expr::v(0)}};
  CHECK_THROWS_AS(check_local_satisfaction(proj, wrong, bin), InvalidArgument);
  std::vector<Equation> unknown{{Expr::apply(3, {Expr::v(0)}), Expr::v(0)}};
  CHECK_THROWS_AS(check_local_satisfaction(proj, unknown, bin), InvalidArgument);
}
