#include <doctest.h>

#include <numeric>
#include <random>

#include "looplemma/digraph.hpp"
#include "looplemma/errors.hpp"
#include "oracle.hpp"

using namespace looplemma;

namespace {

  Digraph two_and_three_cycle() {
    std::vector<Edge> e{{0, 1}, {1, 0}, {0, 2}, {2, 3}, {3, 0}};
    return Digraph(4, e);
  }

  Digraph complete_loopless(std::size_t m) {
    Digraph g(m);
    for (Vertex u = 0; u < m; ++u) {
      for (Vertex v = 0; v < m; ++v) {
        if (u != v) g.add_edge(u, v);
      }
    }
    return g;
  }

  Digraph cycle(std::size_t m, bool undirected = false) {
    std::vector<Edge> e;
    for (Vertex i = 0; i < m; ++i) e.emplace_back(i, static_cast<Vertex>((i + 1) % m));
    return undirected ? Digraph::undirected(m, e) : Digraph(m, e);
  }

  oracle::Edges edge_set(Digraph const& g) {
    oracle::Edges e;
    for (auto const& p : g.edges()) e.insert(p);
    return e;
  }

  Digraph random_digraph(std::mt19937_64& rng, std::size_t m, double p) {
    std::bernoulli_distribution coin(p);
    Digraph                     g(m);
    for (Vertex u = 0; u < m; ++u) {
      for (Vertex v = 0; v < m; ++v) {
        if (coin(rng)) g.add_edge(u, v);
      }
    }
    return g;
  }

  // First k at which every pair has a k-walk, from the naive walk search.
  std::size_t oracle_K(Digraph const& g) {
    auto const  e = edge_set(g);
    std::size_t m = g.vertex_count();
    for (std::size_t k = 1;; ++k) {
      bool all = true;
      for (Vertex u = 0; u < m && all; ++u) {
        for (Vertex v = 0; v < m && all; ++v) all = oracle::has_walk(e, u, v, k);
      }
      if (all) return k;
    }
  }

}  // namespace

TEST_CASE("edges are range checked and listed lexicographically") {
  Digraph g(3);
  CHECK_THROWS_AS(g.add_edge(0, 3), InvalidArgument);
  g.add_edge(2, 0);
  g.add_edge(0, 1);
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {2, 0}});
  CHECK(g.successors(0) == std::vector<Vertex>{1});
  CHECK_FALSE(g.has_edge(5, 0));
  CHECK_FALSE(g.is_symmetric());
  CHECK(cycle(4, true).is_symmetric());
}

TEST_CASE("strongly connected components") {
  std::vector<Edge> two{{0, 1}, {1, 0}};
  CHECK(scc_decompose(Digraph(2, two)).size() == 1);
  std::vector<Edge> path{{0, 1}};
  auto const        comps = scc_decompose(Digraph(2, path));
  REQUIRE(comps.size() == 2);
  CHECK(comps[0] == std::vector<Vertex>{0});
  CHECK(comps[1] == std::vector<Vertex>{1});
  CHECK(scc_decompose(Digraph(3)).size() == 3);
  CHECK(is_strongly_connected(two_and_three_cycle()));
}

TEST_CASE("scc partition matches mutual reachability on random graphs") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    Digraph const g     = random_digraph(rng, 2 + trial % 6, 0.25);
    auto const    comps = scc_decompose(g);
    auto const    reach = transitive_closure(g);
    std::vector<std::size_t> comp_of(g.vertex_count());
    for (std::size_t c = 0; c < comps.size(); ++c) {
      for (Vertex v : comps[c]) comp_of[v] = c;
    }
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
      for (Vertex v = 0; v < g.vertex_count(); ++v) {
        bool const mutual = u == v || (reach.has_edge(u, v) && reach.has_edge(v, u));
        CHECK((comp_of[u] == comp_of[v]) == mutual);
        if (g.has_edge(u, v)) CHECK(comp_of[u] <= comp_of[v]);
      }
    }
  }
}

TEST_CASE("algebraic length") {
  CHECK_FALSE(algebraic_length_one(cycle(3)));
  CHECK(algebraic_length_one(two_and_three_cycle()));
  std::vector<Edge> loop{{0, 0}};
  CHECK(algebraic_length_one(Digraph(1, loop)));
  std::vector<Edge> path{{0, 1}};
  CHECK_THROWS_AS(algebraic_length_one(Digraph(2, path)), PreconditionError);
}

TEST_CASE("algebraic length agrees with coprime cycle lengths") {
  std::mt19937_64 rng(11);
  int             checked = 0;
  for (int trial = 0; trial < 600; ++trial) {
    Digraph const g = random_digraph(rng, 2 + trial % 5, 0.3);
    if (!is_strongly_connected(g) || g.edge_count() == 0) continue;
    ++checked;
    std::size_t const m       = g.vertex_count();
    auto const        lengths = cycle_lengths(g, 2 * m * m);
    std::size_t       gcd     = 0;
    for (auto l : lengths) gcd = std::gcd(gcd, l);
    CHECK(algebraic_length_one(g) == (gcd == 1));
  }
  CHECK(checked > 20);
}

TEST_CASE("relational powers") {
  Digraph const g = two_and_three_cycle();
  CHECK(relational_power(g, 1) == g);
  std::vector<Edge> two{{0, 1}, {1, 0}};
  std::vector<Edge> loops{{0, 0}, {1, 1}};
  CHECK(relational_power(Digraph(2, two), 2) == Digraph(2, loops));
  std::vector<Edge> path{{0, 1}, {1, 2}};
  std::vector<Edge> hop{{0, 2}};
  CHECK(relational_power(Digraph(3, path), 2) == Digraph(3, hop));
  CHECK_THROWS_AS(relational_power(g, 0), InvalidArgument);
}

TEST_CASE("relational powers are multiplicative and match walk enumeration") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    Digraph const g = random_digraph(rng, 1 + trial % 5, 0.35);
    auto const    e = edge_set(g);
    for (std::size_t a = 1; a <= 3; ++a) {
      for (std::size_t b = 1; b <= 3; ++b) {
        Digraph const lhs = relational_power(g, a + b);
        BoolMatrix const prod =
            relational_power(g, a).adjacency() * relational_power(g, b).adjacency();
        CHECK(lhs.adjacency() == prod);
      }
      Digraph const pa = relational_power(g, a);
      for (Vertex u = 0; u < g.vertex_count(); ++u) {
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
          CHECK(pa.has_edge(u, v) == oracle::has_walk(e, u, v, a));
        }
      }
    }
  }
}

TEST_CASE("uniform walk constant") {
  std::vector<Edge> loop{{0, 0}};
  CHECK(uniform_walk_constant(Digraph(1, loop)) == 1);
  CHECK(uniform_walk_constant(complete_loopless(3)) == 2);
  CHECK(uniform_walk_constant(two_and_three_cycle()) == oracle_K(two_and_three_cycle()));
  CHECK(uniform_walk_constant(two_and_three_cycle()) == 6);
  CHECK_THROWS_AS(uniform_walk_constant(cycle(3)), PreconditionError);
  CHECK(wielandt_bound(4) == 10);
}

TEST_CASE("uniform walk constant matches the naive search on random primitive graphs") {
  std::mt19937_64 rng(5);
  int             checked = 0;
  for (int trial = 0; trial < 2000 && checked < 40; ++trial) {
    Digraph const g = random_digraph(rng, 2 + trial % 4, 0.3);
    if (!is_strongly_connected(g) || g.edge_count() == 0 || !algebraic_length_one(g)) continue;
    ++checked;
    CHECK(uniform_walk_constant(g) == oracle_K(g));
  }
  CHECK(checked >= 20);
}

TEST_CASE("walk table picks the smallest successor") {
  std::vector<Edge> loop{{0, 0}};
  CHECK(WalkTable(Digraph(1, loop), 3).walk(0, 0, 1) == Walk{0, 0});
  WalkTable const k3(complete_loopless(3), 6);
  CHECK(k3.K() == 2);
  CHECK(k3.walk(0, 0, 2) == Walk{0, 1, 0});
  CHECK(k3.walk(0, 1, 2) == Walk{0, 2, 1});
  CHECK_THROWS_AS(k3.walk(0, 1, 1), InvalidArgument);
  CHECK_THROWS_AS(k3.walk(0, 1, 7), InvalidArgument);
  CHECK_THROWS_AS(WalkTable(two_and_three_cycle(), 4), PreconditionError);
}

TEST_CASE("every stored walk is valid, deterministic and lexicographically least") {
  Digraph const   g = two_and_three_cycle();
  WalkTable const a(g, 12);
  WalkTable const b(g, 12);
  auto const      e = edge_set(g);
  for (Vertex u = 0; u < 4; ++u) {
    for (Vertex v = 0; v < 4; ++v) {
      for (std::size_t k = a.K(); k <= 12; ++k) {
        Walk const w = a.walk(u, v, k);
        REQUIRE(w.size() == k + 1);
        CHECK(w.front() == u);
        CHECK(w.back() == v);
        for (std::size_t i = 0; i < k; ++i) CHECK(g.has_edge(w[i], w[i + 1]));
        CHECK(w == b.walk(u, v, k));
        CHECK(w == smallest_walk(g, u, v, k));
        for (std::size_t i = 0; i <= k; ++i) CHECK(a.walk_vertex(u, v, k, i) == w[i]);
        // Greedy choice: no smaller vertex could have continued the walk.
        for (std::size_t i = 1; i < k; ++i) {
          for (Vertex s = 0; s < w[i]; ++s) {
            CHECK_FALSE((e.count({w[i - 1], s}) && oracle::has_walk(e, s, v, k - i)));
          }
        }
      }
    }
  }
}

TEST_CASE("cycle lengths") {
  std::vector<Edge> two{{0, 1}, {1, 0}};
  CHECK(cycle_lengths(Digraph(2, two), 8) == std::set<std::size_t>{2, 4, 6, 8});
  auto const mixed = cycle_lengths(two_and_three_cycle(), 12);
  for (std::size_t l = 2; l <= 12; ++l) CHECK(mixed.count(l) == 1);
  CHECK(mixed.count(1) == 0);
  CHECK(cycle_lengths(Digraph(3), 10).empty());
  CHECK(has_all_cycle_lengths_from(two_and_three_cycle(), 2));
  CHECK_FALSE(has_all_cycle_lengths_from(two_and_three_cycle(), 1));
  CHECK_FALSE(has_all_cycle_lengths_from(cycle(3), 2));
}

TEST_CASE("finite core") {
  Digraph const     g = two_and_three_cycle();
  std::vector<Vertex> all{0, 1, 2, 3};
  auto const        same = finite_core(g, all);
  CHECK(same.graph == g);
  CHECK(same.vertices == all);

  Digraph const       k4 = complete_loopless(4);
  std::vector<Vertex> anchor{0};
  auto const          core = finite_core(k4, anchor);
  CHECK(is_strongly_connected(core.graph));
  CHECK(has_all_cycle_lengths_from(core.graph, 2));
  CHECK(std::find(core.vertices.begin(), core.vertices.end(), 0) != core.vertices.end());
  for (auto const& [u, v] : core.graph.edges()) CHECK(k4.has_edge(core.vertices[u], core.vertices[v]));

  auto const empty = finite_core(k4, {});
  CHECK(is_strongly_connected(empty.graph));
  CHECK(has_all_cycle_lengths_from(empty.graph, 2));

  CHECK_THROWS_AS(finite_core(cycle(3), {}), PreconditionError);
}

TEST_CASE("finite core on larger graphs keeps every cycle length") {
  // Two long cycles sharing vertex 0, lengths 5 and 7, plus a chord.
  Digraph g(11);
  for (Vertex i = 0; i < 4; ++i) g.add_edge(i, i + 1);
  g.add_edge(4, 0);
  g.add_edge(0, 5);
  for (Vertex i = 5; i < 10; ++i) g.add_edge(i, i + 1);
  g.add_edge(10, 0);
  g.add_edge(1, 0);
  g.add_edge(2, 0);
  REQUIRE(has_all_cycle_lengths_from(g, 2));
  std::vector<Vertex> anchors{7};
  auto const          core = finite_core(g, anchors);
  CHECK(has_all_cycle_lengths_from(core.graph, 2));
  CHECK(std::find(core.vertices.begin(), core.vertices.end(), 7) != core.vertices.end());
}

TEST_CASE("odd girth reduction") {
  auto const tri = odd_girth_reduce(cycle(3, true));
  CHECK(tri.odd_girth == 3);
  CHECK(tri.reduced == cycle(3, true));

  Digraph const c5      = cycle(5, true);
  auto const    pent    = odd_girth_reduce(c5);
  CHECK(pent.odd_girth == 5);
  CHECK(pent.reduced == relational_power(c5, 3));
  for (auto const& [u, v] : c5.edges()) CHECK(pent.reduced.has_edge(u, v));

  CHECK_THROWS_AS(odd_girth_reduce(cycle(4, true)), PreconditionError);
  std::vector<Edge> loopy{{0, 0}, {0, 1}, {1, 2}, {2, 0}};
  CHECK_THROWS_AS(odd_girth_reduce(Digraph::undirected(3, loopy)), PreconditionError);
  CHECK_THROWS_AS(odd_girth_reduce(cycle(3)), PreconditionError);
  CHECK(is_bipartite(cycle(6, true)));
  CHECK_FALSE(is_bipartite(cycle(7, true)));
}
