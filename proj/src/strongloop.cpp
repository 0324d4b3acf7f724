#include "looplemma/strongloop.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace looplemma {

  namespace {

    bool advance(std::vector<Element>& args, std::size_t m) {
      std::size_t j = args.size();
      while (j > 0) {
        if (++args[j - 1] < m) return true;
        args[--j] = 0;
      }
      return false;
    }

    void check_coordinate(OpTable const& t, std::size_t i) {
      if (i >= t.arity()) {
        throw InvalidArgument("coordinate " + std::to_string(i) + " out of range for arity "
                              + std::to_string(t.arity()));
      }
    }

    std::vector<Vertex> all_vertices(std::size_t m) {
      std::vector<Vertex> v(m);
      std::iota(v.begin(), v.end(), Vertex{0});
      return v;
    }

    // BFS distances to v in g, walking edges backwards.
    std::vector<std::size_t> distances_to(Digraph const& g, Vertex v) {
      std::size_t const        m    = g.vertex_count();
      std::size_t const        none = static_cast<std::size_t>(-1);
      std::vector<std::size_t> dist(m, none);
      std::deque<Vertex>       queue{v};
      dist[v] = 0;
      while (!queue.empty()) {
        Vertex const w = queue.front();
        queue.pop_front();
        for (Vertex u = 0; u < m; ++u) {
          if (dist[u] == none && g.has_edge(u, w)) {
            dist[u] = dist[w] + 1;
            queue.push_back(u);
          }
        }
      }
      return dist;
    }

    // Shortest walk of length >= 1 from u to v, smallest successor first.
    std::optional<Walk> shortest_positive_walk(Digraph const& g, Vertex u, Vertex v) {
      auto const        dist = distances_to(g, v);
      std::size_t const none = static_cast<std::size_t>(-1);
      std::optional<Vertex> first;
      for (Vertex s : g.successors(u)) {
        if (dist[s] != none && (!first || dist[s] < dist[*first])) first = s;
      }
      if (!first) return std::nullopt;
      Walk walk{u, *first};
      while (walk.back() != v) {
        for (Vertex s : g.successors(walk.back())) {
          if (dist[s] + 1 == dist[walk.back()]) {
            walk.push_back(s);
            break;
          }
        }
      }
      return walk;
    }

  }  // namespace

  CoordinateDigraph coordinate_digraph(OpTable const& t, std::size_t i) {
    check_coordinate(t, i);
    std::size_t const    m = t.domain();
    Digraph              g(m);
    std::vector<Element> args(t.arity(), 0);
    do {
      g.add_edge(args[i], t(args));
    } while (advance(args, m));
    return {i, std::move(g)};
  }

  std::vector<Digraph> coordinate_closures(OpTable const& t) {
    std::vector<Digraph> out;
    for (std::size_t i = 0; i < t.arity(); ++i) {
      out.push_back(transitive_closure(coordinate_digraph(t, i).edges));
    }
    return out;
  }

  std::optional<Tuple> coordinate_edge_witness(OpTable const& t, std::size_t i, Vertex u,
                                               Vertex v) {
    check_coordinate(t, i);
    std::size_t const m = t.domain();
    if (u >= m || v >= m) return std::nullopt;
    Tuple args(t.arity(), 0);
    do {
      if (args[i] == u && t(args) == v) return args;
    } while (advance(args, m));
    return std::nullopt;
  }

  std::optional<std::vector<Edge>> strong_witnesses(OpTable const& t, Digraph const& g) {
    if (t.domain() != g.vertex_count()) {
      throw InvalidArgument("operation domain does not match the digraph's vertex count");
    }
    auto const        closures = coordinate_closures(t);
    auto const        edges    = g.edges();
    std::vector<Edge> out;
    for (auto const& closure : closures) {
      auto it = std::find_if(edges.begin(), edges.end(),
                             [&](Edge e) { return closure.has_edge(e.first, e.second); });
      if (it == edges.end()) return std::nullopt;
      out.push_back(*it);
    }
    return out;
  }

  std::optional<Vertex> fanin_vertex(Digraph const& closure, std::span<Vertex const> X) {
    std::size_t const m = closure.vertex_count();
    if (m == 0) return std::nullopt;
    Vertex b = 0;
    for (std::size_t j = 0; j < X.size(); ++j) {
      Vertex const x = X[j];
      if (x >= m) throw InvalidArgument("vertex outside the domain");
      if (j == 0 && closure.has_edge(x, x)) {
        b = x;
        continue;
      }
      std::optional<Vertex> w;
      for (Vertex c = 0; c < m && !w; ++c) {
        if (closure.has_edge(x, c) && (j == 0 || closure.has_edge(b, c))) w = c;
      }
      if (!w) return std::nullopt;
      b = *w;
    }
    return b;
  }

  std::optional<Vertex> fanin_vertex(OpTable const& t, std::size_t i, std::span<Vertex const> X) {
    check_coordinate(t, i);
    return fanin_vertex(transitive_closure(coordinate_digraph(t, i).edges), X);
  }

  std::optional<FaninFailure> check_fanin(OpTable const& t) {
    auto const        closures = coordinate_closures(t);
    std::size_t const m        = t.domain();
    for (std::size_t i = 0; i < closures.size(); ++i) {
      for (Vertex u = 0; u < m; ++u) {
        for (Vertex v = u + 1; v < m; ++v) {
          bool common = false;
          for (Vertex w = 0; w < m && !common; ++w) {
            common = closures[i].has_edge(u, w) && closures[i].has_edge(v, w);
          }
          if (!common) return FaninFailure{i, u, v};
        }
      }
    }
    return std::nullopt;
  }

  Vertex taylor_corollary_witness(OpTable const& t, TaylorSystem const& system, std::size_t i,
                                  Vertex u, Vertex v) {
    check_coordinate(t, i);
    if (system.arity != t.arity() || i >= system.rows.size()) {
      throw InvalidArgument("Taylor system does not match the operation");
    }
    if (u >= t.domain() || v >= t.domain()) throw InvalidArgument("vertex outside the domain");
    auto const& row = system.rows[i];
    Tuple       lhs, rhs;
    for (Var a : row.left) lhs.push_back(a == Var::x ? u : v);
    for (Var a : row.right) rhs.push_back(a == Var::x ? u : v);
    Element const w = t(lhs);
    if (t(rhs) != w) {
      throw PreconditionError("Taylor row " + to_string(row) + " fails at x=" + std::to_string(u)
                              + ", y=" + std::to_string(v));
    }
    return w;
  }

  std::optional<std::size_t> coordinate_walk_length(OpTable const& t, std::size_t i, Vertex u,
                                                    Vertex v) {
    check_coordinate(t, i);
    if (u >= t.domain() || v >= t.domain()) throw InvalidArgument("vertex outside the domain");
    auto const walk = shortest_positive_walk(coordinate_digraph(t, i).edges, u, v);
    if (!walk) return std::nullopt;
    return walk->size() - 1;
  }

  std::optional<StarSubstitution> star_path_substitution(OpTable const& t, std::size_t i, Vertex u,
                                                         Vertex v, std::size_t depth) {
    check_coordinate(t, i);
    if (!is_idempotent(t)) throw PreconditionError("star path substitution needs an idempotent t");
    if (u >= t.domain() || v >= t.domain()) throw InvalidArgument("vertex outside the domain");
    if (depth == 0) return std::nullopt;
    auto const walk = shortest_positive_walk(coordinate_digraph(t, i).edges, u, v);
    if (!walk || walk->size() - 1 > depth) return std::nullopt;

    std::size_t const n = t.arity();
    std::uint64_t     total = 1;
    for (std::size_t d = 0; d < depth; ++d) {
      if (total > OpTable::max_table_size / n) {
        throw BudgetExceeded("star path substitution too large", static_cast<std::size_t>(-1),
                             OpTable::max_table_size);
      }
      total *= n;
    }

    Walk padded(depth + 1 - walk->size(), u);
    padded.insert(padded.end(), walk->begin(), walk->end());
    // witness[d] realises the edge padded[d-1] -> padded[d].
    std::vector<Tuple> witness(depth + 1);
    for (std::size_t d = 1; d <= depth; ++d) {
      witness[d] = *coordinate_edge_witness(t, i, padded[d - 1], padded[d]);
    }

    // Reading x left to right, the first letter other than i at position p
    // leaves a constant branch of depth - p - 1 under the edge of level
    // depth - p; all-i words reach the start of the walk.
    std::vector<Element> values(total);
    for (std::uint64_t code = 0; code < total; ++code) {
      Word const  x = Word::from_code(code, depth, n);
      std::size_t p = 0;
      while (p < depth && x[p] == i) ++p;
      values[code] = p == depth ? padded[0] : witness[depth - p][x[p]];
    }
    return StarSubstitution(n, depth, std::move(values));
  }

  std::optional<PigeonholeChoice> pigeonhole_positions(Word const& x, std::size_t k) {
    for (std::size_t letter = 0; letter < x.alphabet(); ++letter) {
      std::vector<std::size_t> positions;
      for (std::size_t p = 0; p < x.size() && positions.size() < k; ++p) {
        if (x[p] == letter) positions.push_back(p);
      }
      if (positions.size() == k) return PigeonholeChoice{letter, std::move(positions)};
    }
    return std::nullopt;
  }

  std::optional<std::size_t> largest_loopless_length(Digraph const& g) {
    if (!algebraic_length_one(g)) {
      throw PreconditionError("digraph does not have algebraic length 1");
    }
    if (g.has_loop()) return std::nullopt;
    std::size_t const bound   = wielandt_bound(g.vertex_count());
    auto const        lengths = cycle_lengths(g, bound);
    for (std::size_t k = bound; k >= 1; --k) {
      if (!lengths.contains(k)) return k;
    }
    return std::nullopt;
  }

  StrongLoopReport strong_loop_pipeline(OpTable const& t, Digraph const& g,
                                        StrongLoopOptions const& options) {
    if (t.domain() != g.vertex_count()) {
      throw InvalidArgument("operation domain does not match the digraph's vertex count");
    }
    if (!is_idempotent(t)) {
      throw HypothesisError(Hypothesis::idempotency, "t(x,...,x) != x for some x");
    }
    if (auto f = check_fanin(t)) {
      throw HypothesisError(Hypothesis::fan_in,
                            "coordinate " + std::to_string(f->coordinate) + ": " + std::to_string(f->u)
                                + " and " + std::to_string(f->v) + " have no common successor");
    }
    if (!is_strongly_connected(g)) {
      throw HypothesisError(Hypothesis::strong_connectivity, "the digraph is not strongly connected");
    }
    if (!is_compatible(t, g)) {
      throw HypothesisError(Hypothesis::compatibility, "t does not preserve the edge relation");
    }
    if (g.edge_count() == 0 || !algebraic_length_one(g)) {
      throw HypothesisError(Hypothesis::algebraic_length, "cycle lengths have a common divisor > 1");
    }

    StrongLoopReport  report;
    auto const        closures = coordinate_closures(t);
    auto const        vertices = all_vertices(g.vertex_count());
    for (auto const& c : closures) report.b.push_back(*fanin_vertex(c, vertices));

    report.loop = g.first_loop();
    if (auto w = loop_oracle(t, g, options.closure_cap)) report.oracle_loop = w->vertex;
    if (report.loop) {
      if (!report.oracle_loop) report.failure = "loop oracle found no loop although g has one";
      return report;
    }

    // Unreachable for valid inputs; the reduction is still assembled so
    // the report shows where it breaks.
    report.k            = largest_loopless_length(g);
    Digraph const power = relational_power(g, *report.k);
    std::size_t   depth = 1;
    for (std::size_t i = 0; i < closures.size(); ++i) {
      Vertex const b = report.b[i];
      Vertex       a = 0;
      while (a < power.vertex_count() && !power.has_edge(a, b)) ++a;
      report.a.push_back(a);
      if (a == power.vertex_count()) {
        report.failure = "b_" + std::to_string(i) + " has no predecessor in the relational power";
        return report;
      }
      depth = std::max(depth, *coordinate_walk_length(t, i, a, b));
    }
    report.star_depth    = depth;
    report.star_exponent = (depth - 1) * t.arity() + 1;
    try {
      report.star_checked = true;
      for (std::size_t i = 0; i < closures.size(); ++i) {
        auto const f = star_path_substitution(t, i, report.a[i], report.b[i], depth);
        report.star_checked = report.star_checked && f
                              && star_power_eval(t, *f, options.star_budget) == report.b[i];
      }
    } catch (BudgetExceeded const&) {
      report.star_checked = false;
    }
    report.failure = "no loop although every hypothesis holds";
    return report;
  }

}  // namespace looplemma
