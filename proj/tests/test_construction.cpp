#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "oracle.hpp"

using namespace looplemma;
using fixtures::k3;
using fixtures::k3_alpha;
using fixtures::walk3;
using fixtures::walk3_alpha;

TEST_CASE("parameters") {
  auto const a = make_params(2, 2);
  CHECK(a.W == 3);
  CHECK(a.M == 17);
  CHECK(a.R == 18);
  CHECK(a.L == 18);
  CHECK(a.N == 39);
  auto const b = make_params(2, 3);
  CHECK(b.W == 6);
  CHECK(b.M == 258);
  CHECK(b.R == 260);
  CHECK(b.L == 261);
  CHECK(b.N == 527);
  auto const c = make_params(1, 2);
  CHECK(c.W == 3);
  CHECK(c.M == 3);
  CHECK(c.R == 4);
  CHECK(c.L == 4);
  CHECK(c.N == 11);
  CHECK_THROWS_AS(make_params(2, 1), InvalidArgument);
  CHECK_THROWS_AS(make_params(0, 2), InvalidArgument);
  CHECK_THROWS_AS(make_params(64, 40), BudgetExceeded);
}

TEST_CASE("parameter identities hold across a grid") {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t K = 2; K <= 4; ++K) {
      auto const P = make_params(n, K);
      std::uint64_t nw = 1;
      for (std::size_t i = 0; i < P.W; ++i) nw *= n;
      CHECK(P.W == 3 * K - 3);
      CHECK(static_cast<std::uint64_t>(P.M) == 2 * (K - 1) * nw + (K - 1));
      CHECK(P.R == static_cast<std::size_t>(P.M) + K - 1);
      CHECK(P.L == P.R + K - 2);
      CHECK(P.N == P.L + P.W + P.R);
      CHECK(P.N - P.W >= P.R);
    }
  }
}

TEST_CASE("reduced parameters") {
  auto const P = make_reduced_params(2, 2, {.W = 3, .R = 3, .L = 2});
  CHECK(P.N == 8);
  CHECK(P.M == 2);
  CHECK(P.reduced);
  CHECK_THROWS_AS(make_reduced_params(2, 3, {.W = 3, .R = 3, .L = 1}), InvalidArgument);
  CHECK_THROWS_AS(make_reduced_params(2, 2, {.W = 0, .R = 3, .L = 2}), InvalidArgument);
  CHECK_THROWS_AS(make_reduced_params(2, 2, {.W = 2, .R = 0, .L = 2}), InvalidArgument);
}

TEST_CASE("alpha matrix and its edge condition") {
  CHECK_THROWS_AS(AlphaMatrix({{0, 1}, {0}}), InvalidArgument);
  CHECK(failing_alpha_rows(k3(), OpTable::min_chain(3), k3_alpha()).empty());
  CHECK(failing_alpha_rows(walk3(), OpTable::min_chain(3), walk3_alpha()).empty());
  auto const bad = failing_alpha_rows(k3(), OpTable::min_chain(3), AlphaMatrix({{0, 1}, {1, 1}}));
  CHECK(bad == std::vector<std::size_t>{0, 1});
  CHECK_THROWS_AS(failing_alpha_rows(k3(), OpTable::majority3(3), k3_alpha()), InvalidArgument);
}

TEST_CASE("window table for n=2, K=2") {
  auto const P = make_params(2, 2);
  auto const T = build_priority_value(k3(), P, k3_alpha());
  REQUIRE(T.size() == 8);
  auto const e = [&](std::vector<Letter> w) { return T.entry(Word(std::move(w), 2)); };
  CHECK(e({0, 0, 0}).priority == 0);
  CHECK(e({1, 1, 1}).priority == 0);
  CHECK(e({0, 0, 0}).value == 1);
  CHECK(e({1, 1, 1}).value == 2);
  CHECK(e({0, 0, 1}).priority == 18);
  CHECK(e({1, 1, 0}).priority == 18);
  std::vector<std::int64_t> negatives{e({0, 1, 0}).priority, e({0, 1, 1}).priority,
                                      e({1, 0, 0}).priority, e({1, 0, 1}).priority};
  CHECK(negatives == std::vector<std::int64_t>{-1, -2, -3, -4});
  CHECK(T.cycles().empty());
}

TEST_CASE("window table for n=2, K=3") {
  auto const P = make_params(2, 3);
  auto const T = build_priority_value(walk3(), P, walk3_alpha());
  REQUIRE(T.size() == 64);
  Word const alt({0, 1, 0, 1, 0, 1}, 2);
  Word const rot({1, 0, 1, 0, 1, 0}, 2);
  CHECK(T.entry(alt).priority == 260);
  CHECK(T.entry(alt).kind == WindowClass::periodic);
  REQUIRE(T.cycles().count(2) == 1);
  Walk const c2 = T.cycles().at(2);
  CHECK(c2 == smallest_cycle_walk(walk3(), 2));
  CHECK(T.entry(alt).value == c2[0]);
  CHECK(T.entry(rot).value == c2[1]);
  CHECK(walk3().has_edge(T.entry(alt).value, T.entry(rot).value));
  CHECK(walk3().has_edge(T.entry(rot).value, T.entry(alt).value));
}

TEST_CASE("window table items hold for every window") {
  struct Case {
    Digraph     g;
    std::size_t K;
    AlphaMatrix alpha;
  };
  // A digraph with every cycle length from 2 and walk constant 4.
  std::vector<Edge> e4{{0, 1}, {1, 0}, {1, 2}, {2, 0}, {0, 3}, {3, 0}};
  Digraph const     g4(4, e4);
  REQUIRE(uniform_walk_constant(g4) == 5);
  std::vector<Case> cases{{k3(), 2, k3_alpha()},
                          {walk3(), 3, walk3_alpha()},
                          {g4, 5, AlphaMatrix({{1, 0}, {2, 3}})}};
  for (auto const& c : cases) {
    auto const P = make_params(2, c.K);
    auto const T = build_priority_value(c.g, P, c.alpha);
    std::set<std::int64_t> negatives;
    std::size_t            negative_count = 0;
    std::int64_t           last_negative  = 0;
    oracle::for_each_word(2, P.W, [&](oracle::Letters const& v) {
      Word const         w(v, 2);
      WindowEntry const& e    = T.entry(w);
      int const          item = oracle::item(v, c.K);
      switch (item) {
        case 1:
          CHECK(e.priority == 0);
          CHECK(e.value == c.alpha(v[0], v[0]));
          break;
        case 2: {
          CHECK(e.priority == static_cast<std::int64_t>(P.R));
          // The successor in the shift class must carry a G-successor value,
          // and k shifts return to the same word.
          std::size_t const k = oracle::period(v);
          oracle::Letters   next(v.size());
          for (std::size_t j = 0; j < v.size(); ++j) next[j] = v[(j + 1) % k];
          CHECK(c.g.has_edge(e.value, T.entry(Word(next, 2)).value));
          CHECK(oracle::period(next) == k);
          break;
        }
        case 3:
          CHECK(e.priority == static_cast<std::int64_t>(P.R));
          break;
        default:
          CHECK(e.priority < 0);
          CHECK(e.priority < last_negative);
          last_negative = e.priority;
          negatives.insert(e.priority);
          ++negative_count;
          break;
      }
    });
    CHECK(negatives.size() == negative_count);
  }
}

TEST_CASE("missing cycle lengths are named") {
  using Rows = std::vector<std::vector<Vertex>>;
  // Walk constant 6: closed walks of lengths 2..5 are all needed and present.
  std::vector<Edge> e{{0, 1}, {1, 0}, {0, 2}, {2, 3}, {3, 0}};
  Digraph const     g(4, e);
  auto const        T = build_priority_value(g, make_params(1, 6), AlphaMatrix(Rows{{0}}));
  CHECK(T.cycles().size() == 4);
  std::vector<Edge> tri{{0, 1}, {1, 2}, {2, 0}};
  try {
    build_priority_value(Digraph(3, tri), make_params(1, 3), AlphaMatrix(Rows{{0}}));
    FAIL("expected a missing cycle");
  } catch (PreconditionError const& err) {
    CHECK(std::string(err.what()).find("length 2") != std::string::npos);
  }
}

TEST_CASE("positional priority") {
  auto const  ctx = fixtures::k3_context();
  auto const& P   = ctx.params();
  Word const  zero = Word::constant(0, P.N, 2);
  CHECK(ctx.position_priority(zero, 0) == static_cast<std::int64_t>(P.R - 1));

  std::vector<Letter> v(P.N, 1);
  for (std::size_t i = 0; i < 10; ++i) v[i] = 0;
  v[10] = 1;
  Word const x(v, 2);
  // x[7:10] constant and x[10] differs.
  CHECK(ctx.position_priority(x, 7) == 0);
  CHECK(ctx.position_priority(x, 5) == 2);
  // x[8:11] = [0,0,1] is item 3, x[9:12] = [0,1,1] item 4.
  CHECK(ctx.position_priority(x, 8) == static_cast<std::int64_t>(P.R));
  CHECK(ctx.position_priority(x, 9) == ctx.table().entry(x.slice(9, 12)).priority);
  CHECK(ctx.position_priority(x, 9) < 0);
  CHECK_THROWS_AS(ctx.position_priority(x, P.N - P.W + 1), InvalidArgument);
}

TEST_CASE("positional value exception") {
  auto const  ctx = fixtures::k3_context();
  auto const& P   = ctx.params();
  // x[p-1 : p-1+W+R] all 0, then j = 1.
  std::size_t const   p = 3;
  std::vector<Letter> v(P.N, 0);
  for (std::size_t i = 0; i + 1 < p; ++i) v[i] = 1;
  v[p - 1 + P.W + P.R] = 1;
  CHECK(ctx.position_value(Word(v, 2), p) == k3_alpha()(0, 1));
  v[p - 1 + P.W + P.R] = 0;
  CHECK(ctx.position_value(Word(v, 2), p) == k3_alpha()(0, 0));

  Word const zero = Word::constant(0, P.N, 2);
  std::vector<Letter> w(P.N, 0);
  w[P.W + P.R] = 1;
  CHECK(ctx.position_value(Word(w, 2), 0) == k3_alpha()(0, 0));
  CHECK(ctx.position_value(Word(w, 2), 1) == k3_alpha()(0, 1));
  CHECK(ctx.position_value(zero, P.L) == k3_alpha()(0, 0));
}

TEST_CASE("local maxima") {
  auto const  ctx  = fixtures::k3_context();
  auto const& P    = ctx.params();
  Word const  zero = Word::constant(0, P.N, 2);
  CHECK(ctx.is_local_max(zero, P.K - 1));
  // Priorities fall off only within R of the right end.
  CHECK_FALSE(ctx.is_local_max(zero, P.N - P.W - P.K + 1));
  CHECK_FALSE(ctx.is_local_max(zero, P.N - P.W));

  std::vector<Letter> v(P.N, 1);
  v[0] = 0;
  v[1] = 0;
  Word const x(v, 2);  // x[0:3] = [0,0,1] has priority R
  CHECK(ctx.is_local_max(x, 0));

  Word const one = Word::constant(1, P.N, 2);
  for (std::size_t p = 0; p + 1 < P.K; ++p) CHECK_FALSE(ctx.is_local_max(one, p));
}

TEST_CASE("f on constant words and constant tails") {
  for (auto const& ctx : {fixtures::k3_context(), fixtures::walk3_context()}) {
    auto const& P = ctx.params();
    for (Letter i = 0; i < 2; ++i) {
      CHECK(ctx.eval_f(Word::constant(i, P.N, 2)) == ctx.alpha()(i, i));
    }
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
      Word x = fixtures::sample_word(rng, P, 0);
      std::vector<Letter> v(x.letters().begin(), x.letters().end());
      Letter const        i = trial % 2;
      for (std::size_t k = P.L; k < P.N; ++k) v[k] = i;
      Word const tail(v, 2);
      CHECK(ctx.eval_f(tail) == ctx.alpha()(i, i));
      for (Letter j = 0; j < 2; ++j) CHECK(ctx.eval_f(tail.shifted(j)) == ctx.alpha()(i, j));
      auto const rep = ctx.check_dichotomy(tail);
      CHECK(rep.outcome == DichotomyCase::constant_tail);
      CHECK(rep.letter == i);
    }
  }
}

TEST_CASE("profile agrees with the literal definitions") {
  std::mt19937_64 rng(43);
  auto const      ctx = fixtures::k3_context();
  oracle::Literal lit{ctx};
  for (int trial = 0; trial < 200; ++trial) {
    Word const           x = fixtures::sample_word(rng, ctx.params(), trial);
    oracle::Letters const v(x.letters().begin(), x.letters().end());
    auto const            prof = ctx.profile(x);
    auto const            pis  = lit.pis(v);
    for (std::size_t p = 0; p < prof.priority.size(); ++p) {
      REQUIRE(prof.priority[p] == pis[p]);
      REQUIRE(prof.value[p] == lit.nu(v, p));
      REQUIRE(prof.local_max[p] == lit.local_max(pis, p));
    }
    CHECK(ctx.evaluate(x).vertex == lit.f(v));
  }
}

TEST_CASE("profile agrees with the literal definitions at K=3") {
  std::mt19937_64 rng(47);
  auto const      ctx = fixtures::walk3_context();
  oracle::Literal lit{ctx};
  for (int trial = 0; trial < 24; ++trial) {
    Word const            x = fixtures::sample_word(rng, ctx.params(), trial);
    oracle::Letters const v(x.letters().begin(), x.letters().end());
    auto const            prof = ctx.profile(x);
    auto const            pis  = lit.pis(v);
    for (std::size_t p = 0; p < prof.priority.size(); ++p) {
      REQUIRE(prof.priority[p] == pis[p]);
      REQUIRE(prof.value[p] == lit.nu(v, p));
      REQUIRE(prof.local_max[p] == lit.local_max(pis, p));
    }
    CHECK(ctx.evaluate(x).vertex == lit.f(v));
  }
}

TEST_CASE("dichotomy and lemmas hold on sampled words at full parameters") {
  std::mt19937_64 rng(53);
  for (auto const& ctx : {fixtures::k3_context(), fixtures::walk3_context()}) {
    std::map<DichotomyCase, int> seen;
    int const                    samples = ctx.params().K == 2 ? 1500 : 300;
    for (int trial = 0; trial < samples; ++trial) {
      Word const x   = fixtures::sample_word(rng, ctx.params(), trial);
      auto const rep = ctx.check_dichotomy(x);
      REQUIRE_MESSAGE(rep.ok(), rep.diagnostic);
      ++seen[rep.outcome];
      for (Letter i = 0; i < 2; ++i) {
        auto const s = ctx.check_shift_lemmas(x, i);
        REQUIRE_MESSAGE(s.ok(), s.violations.front().lemma, " at ", s.violations.front().position);
      }
      auto const lm = ctx.check_local_max_lemmas(x);
      REQUIRE_MESSAGE(lm.ok(), lm.violations.front().lemma);
    }
    CHECK(seen[DichotomyCase::constant_tail] > 0);
    CHECK(seen[DichotomyCase::edges] > 0);
  }
}

TEST_CASE("shift lemmas on constant words exercise the exceptional branches") {
  auto const  ctx  = fixtures::k3_context();
  auto const& P    = ctx.params();
  Word const  zero = Word::constant(0, P.N, 2);
  auto const  rep  = ctx.check_shift_lemmas(zero, 0);
  CHECK(rep.ok());
  CHECK(rep.checks == (P.N - P.W - 1) + (P.N - P.W) + (P.N - P.W - P.K + 1));
  CHECK(ctx.check_shift_lemmas(zero, 1).ok());
  // The priority really does rise by one to the right of L+1.
  Word const y = zero.shifted(0);
  CHECK(ctx.position_priority(y, P.N - P.W - 1) == ctx.position_priority(zero, P.N - P.W) + 1);
}

TEST_CASE("tampered tables are caught") {
  auto const P     = make_params(2, 2);
  auto       table = build_priority_value(k3(), P, k3_alpha());
  // Give [0,0,0] a value with no edge into alpha(0,1).
  auto entry  = table.entry(Word({0, 0, 0}, 2));
  entry.value = 0;
  table.set_entry(0, entry);
  Construction const bad(k3(), P, k3_alpha(), table);

  std::mt19937_64 rng0(61);
  int             caught = 0;
  for (int trial = 0; trial < 400; ++trial) {
    Word const x   = fixtures::sample_word(rng0, P, trial);
    auto const rep = bad.check_dichotomy(x);
    if (!rep.ok()) {
      ++caught;
      CHECK((rep.letter.has_value() || !rep.diagnostic.empty()));
    }
  }
  CHECK(caught > 0);

  auto pri_table = build_priority_value(k3(), P, k3_alpha());
  auto e2        = pri_table.entry(Word({0, 1, 0}, 2));
  e2.priority    = 50;
  pri_table.set_entry(Word({0, 1, 0}, 2).code(), e2);
  Construction const bad_pri(k3(), P, k3_alpha(), pri_table);

  std::mt19937_64 rng(59);
  bool            localized = false;
  for (int trial = 0; trial < 200 && !localized; ++trial) {
    Word const w   = fixtures::sample_word(rng, P, 0);
    auto const lem = bad_pri.check_local_max_lemmas(w);
    auto const sh  = bad_pri.check_shift_lemmas(w, 0);
    auto const dc  = bad_pri.check_dichotomy(w);
    localized      = !lem.ok() || !sh.ok() || !dc.ok();
  }
  CHECK(localized);
}

TEST_CASE("reduced parameters make the corollaries falsifiable") {
  auto const         P = make_reduced_params(2, 2, {.W = 3, .R = 2, .L = 1});
  Construction const ctx(k3(), P, k3_alpha());
  oracle::Literal    lit{ctx};
  int                violations = 0;
  oracle::for_each_word(2, P.N, [&](oracle::Letters const& v) {
    Word const x(v, 2);
    auto const r = ctx.evaluate(x);
    CHECK(r.vertex == lit.f(v));
    if (!r.ok()) {
      ++violations;
      CHECK((r.violation == "local-max-around-L" || r.violation == "walk-long-enough"));
      CHECK_THROWS_AS(ctx.eval_f(x), CorollaryViolation);
    }
  });
  CHECK(violations > 0);
}

TEST_CASE("word length is enforced") {
  auto const ctx = fixtures::k3_context();
  CHECK_THROWS_AS(ctx.eval_f(Word::constant(0, 10, 2)), InvalidArgument);
  CHECK_THROWS_AS(ctx.check_dichotomy(Word::constant(0, 40, 2)), InvalidArgument);
  CHECK_THROWS_AS(ctx.profile(Word::constant(0, ctx.params().N, 3)), InvalidArgument);
}
