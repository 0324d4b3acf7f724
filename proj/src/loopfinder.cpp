#include "looplemma/loopfinder.hpp"

#include <algorithm>
#include <limits>

namespace looplemma {

  std::string_view to_string(Hypothesis h) noexcept {
    switch (h) {
      case Hypothesis::idempotency: return "idempotency";
      case Hypothesis::compatibility: return "compatibility";
      case Hypothesis::strong_connectivity: return "strong_connectivity";
      case Hypothesis::cycle_lengths: return "cycle_lengths";
      case Hypothesis::alpha_edges: return "alpha_edges";
      case Hypothesis::algebraic_length: return "algebraic_length";
      case Hypothesis::fan_in: return "fan_in";
    }
    return "unknown";
  }

  namespace {

    std::string join(std::vector<std::size_t> const& v) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(v[i]);
      }
      return s;
    }

    void record(DichotomyStats& stats, WordViolation v) {
      ++stats.violation_count;
      if (stats.violations.size() < max_reported_violations) stats.violations.push_back(std::move(v));
    }

    void tally(DichotomyStats& stats, DichotomyReport const& rep, std::uint64_t index,
               Word const& word) {
      ++stats.words;
      switch (rep.outcome) {
        case DichotomyCase::constant_tail: ++stats.case_one; break;
        case DichotomyCase::edges: ++stats.case_two; break;
        case DichotomyCase::violation: record(stats, {index, word, "dichotomy", rep.diagnostic}); break;
      }
    }

  }  // namespace

  Instance prepare_instance(Digraph const& g, OpTable const& t, AlphaMatrix const& alpha,
                            std::optional<ReducedOverrides> reduced, std::uint64_t table_budget) {
    if (t.domain() != g.vertex_count()) {
      throw InvalidArgument("operation domain " + std::to_string(t.domain())
                            + " differs from the vertex count " + std::to_string(g.vertex_count()));
    }
    if (alpha.size() != t.arity()) {
      throw InvalidArgument("alpha matrix must be " + std::to_string(t.arity()) + "x"
                            + std::to_string(t.arity()));
    }
    if (!is_idempotent(t)) throw HypothesisError(Hypothesis::idempotency, "t(x,...,x) != x for some x");
    if (!is_compatible(t, g)) {
      throw HypothesisError(Hypothesis::compatibility, "t does not preserve the edge relation");
    }
    if (!is_strongly_connected(g)) {
      throw HypothesisError(Hypothesis::strong_connectivity, "the digraph is not strongly connected");
    }
    if (!has_all_cycle_lengths_from(g, 2)) {
      auto const  lengths = cycle_lengths(g, wielandt_bound(g.vertex_count()) + 1);
      std::size_t missing = 2;
      while (lengths.count(missing)) ++missing;
      throw HypothesisError(Hypothesis::cycle_lengths,
                            "no closed walk of length " + std::to_string(missing));
    }
    auto const failing = failing_alpha_rows(g, t, alpha);
    if (!failing.empty()) {
      throw HypothesisError(Hypothesis::alpha_edges,
                            "alpha(i,i) -> t(alpha(i,0..n-1)) is not an edge for i = " + join(failing));
    }

    std::size_t const        graph_K = uniform_walk_constant(g);
    std::size_t const        K       = std::max<std::size_t>(graph_K, 2);
    ConstructionParams const params  = reduced ? make_reduced_params(t.arity(), K, *reduced)
                                               : make_params(t.arity(), K);
    auto table = build_priority_value(g, params, alpha, table_budget);
    return Instance{t, Construction(g, params, alpha, std::move(table)), graph_K};
  }

  FTable tabulate_f(Construction const& ctx, std::uint64_t budget) {
    auto const&         P     = ctx.params();
    std::uint64_t const count = checked_pow(P.n, P.N, budget);
    FTable              out{P.n, P.N, {}};
    out.values.reserve(count);
    for (std::uint64_t c = 0; c < count; ++c) {
      out.values.push_back(ctx.evaluate(Word::from_code(c, P.N, P.n)));
    }
    return out;
  }

  DichotomyStats verify_dichotomy_exhaustive(Construction const& ctx, FTable const& f) {
    auto const& P = ctx.params();
    if (f.alphabet != P.n || f.length != P.N) throw InvalidArgument("f table does not match the context");
    std::uint64_t const count = f.values.size();
    std::uint64_t const tail  = count / P.n;  // n^(N-1)
    DichotomyStats      stats;
    for (std::uint64_t c = 0; c < count; ++c) {
      std::uint64_t const base = (c % tail) * P.n;
      auto const rep = ctx.check_dichotomy(
          f.values[c], std::span<FEvaluation const>(f.values.data() + base, P.n));
      if (rep.outcome == DichotomyCase::violation) {
        tally(stats, rep, c, Word::from_code(c, P.N, P.n));
      } else {
        tally(stats, rep, c, Word());
      }
    }
    return stats;
  }

  DichotomyStats sample_dichotomy(Construction const& ctx, std::uint64_t samples,
                                  std::uint64_t seed, bool check_lemmas) {
    DichotomyStats stats;
    for (std::uint64_t i = 0; i < samples; ++i) {
      Sample const s = draw_sample(ctx.params(), seed, i);
      ++stats.family_counts[static_cast<std::size_t>(s.family)];
      tally(stats, ctx.check_dichotomy(s.word), i, s.word);
      if (!check_lemmas) continue;
      for (Letter j = 0; j < ctx.params().n; ++j) {
        auto const rep = ctx.check_shift_lemmas(s.word, j);
        stats.lemma_checks += rep.checks;
        for (auto const& v : rep.violations) {
          record(stats, {i, s.word, v.lemma,
                         "successor " + std::to_string(j) + ", position "
                             + std::to_string(v.position) + ": " + v.detail});
        }
      }
      auto const rep = ctx.check_local_max_lemmas(s.word);
      stats.lemma_checks += rep.checks;
      for (auto const& v : rep.violations) {
        record(stats, {i, s.word, v.lemma, "position " + std::to_string(v.position) + ": " + v.detail});
      }
    }
    return stats;
  }

  StarTrace star_pair(OpTable const& t, std::size_t alphabet, std::size_t length,
                      std::span<Vertex const> f, std::uint64_t budget) {
    if (t.arity() != alphabet) throw InvalidArgument("operation arity differs from the alphabet");
    std::uint64_t const words = checked_pow(alphabet, length, std::numeric_limits<std::uint64_t>::max());
    if (f.size() != words) throw InvalidArgument("f table has the wrong size");
    StarTrace tr;
    tr.leaves = checked_pow(alphabet, length + 1, budget);
    tr.a = star_power_eval(t, length + 1, [&](std::uint64_t c) { return f[c / alphabet]; }, budget);
    tr.b = star_power_eval(t, length + 1, [&](std::uint64_t c) { return f[c % words]; }, budget);
    return tr;
  }

  ExtractedLoop extract_loop(Instance const& instance, FTable const& f, std::uint64_t star_budget) {
    auto const&         ctx = instance.context;
    std::vector<Vertex> values;
    values.reserve(f.values.size());
    for (std::size_t c = 0; c < f.values.size(); ++c) {
      if (!f.values[c].ok()) {
        throw ExtractionError("f is undefined on word code " + std::to_string(c) + " ("
                              + f.values[c].violation + ")");
      }
      values.push_back(*f.values[c].vertex);
    }
    auto const stats = verify_dichotomy_exhaustive(ctx, f);
    if (!stats.ok()) {
      throw ExtractionError("dichotomy fails on " + std::to_string(stats.violation_count) + " words");
    }
    StarTrace const tr = star_pair(instance.op, f.alphabet, f.length, values, star_budget);
    if (tr.a != tr.b) {
      throw ExtractionError("star powers differ: " + std::to_string(tr.a) + " vs " + std::to_string(tr.b));
    }
    if (!ctx.graph().has_edge(tr.a, tr.b)) {
      throw ExtractionError("no edge " + std::to_string(tr.a) + " -> " + std::to_string(tr.b));
    }
    auto const oracle = loop_oracle(instance.op, ctx.graph());
    if (!oracle) throw ExtractionError("loop oracle finds no loop");
    return {tr.a, tr, oracle->vertex};
  }

  LoopReport main_theorem_pipeline(Digraph const& g, OpTable const& t, AlphaMatrix const& alpha,
                                   PipelineOptions const& options) {
    LoopReport report;
    report.seed = options.seed;

    if (t.domain() != g.vertex_count()) {
      throw InvalidArgument("operation domain " + std::to_string(t.domain())
                            + " differs from the vertex count " + std::to_string(g.vertex_count()));
    }
    if (!is_idempotent(t)) throw HypothesisError(Hypothesis::idempotency, "t(x,...,x) != x for some x");
    if (!is_compatible(t, g)) {
      throw HypothesisError(Hypothesis::compatibility, "t does not preserve the edge relation");
    }

    Digraph working = g;
    if (!has_all_cycle_lengths_from(g, 2) && g.is_symmetric() && !g.has_loop()) {
      try {
        auto red         = odd_girth_reduce(g);
        report.odd_girth = red.odd_girth;
        working          = std::move(red.reduced);
      } catch (PreconditionError const& e) {
        throw HypothesisError(Hypothesis::cycle_lengths, e.what());
      }
    }

    Instance const inst = prepare_instance(working, t, alpha, options.reduced);
    auto const&    ctx  = inst.context;
    report.params       = ctx.params();
    report.graph_K      = inst.graph_K;
    std::string const prefix = options.reduced ? "reduced-" : "full-";

    if (options.exhaustive) {
      report.mode    = prefix + "exhaustive";
      auto const f   = tabulate_f(ctx, options.word_budget);
      report.dichotomy = verify_dichotomy_exhaustive(ctx, f);
      if (report.dichotomy.ok()) {
        try {
          report.loop = extract_loop(inst, f, options.star_budget);
        } catch (ExtractionError const& e) {
          report.failure = e.what();
        } catch (BudgetExceeded const& e) {
          report.failure = std::string("loop extraction skipped: ") + e.what();
        }
      }
    } else {
      report.mode      = prefix + "sampled";
      report.dichotomy = sample_dichotomy(ctx, options.samples, options.seed);
    }

    auto const oracle = loop_oracle(t, g, options.closure_cap);
    if (oracle) report.oracle_loop = oracle->vertex;
    if (!oracle && report.failure.empty()) {
      report.failure = "loop oracle finds no loop although every hypothesis holds";
    }
    return report;
  }

}  // namespace looplemma
