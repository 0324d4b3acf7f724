// Command-line front end. Reports go to stdout (JSON by default), errors to
// stderr. Exit status: 0 consistent, 2 a property violation was found,
// 1 usage, parse or hypothesis error.

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "looplemma/io.hpp"

using namespace looplemma;
using io::Json;

namespace {

  constexpr int exit_ok        = 0;
  constexpr int exit_error     = 1;
  constexpr int exit_violation = 2;

  class UsageError : public Error {
   public:
    using Error::Error;
  };

  struct RunConfig {
    std::string                graph_path;
    std::string                op_path;
    std::string                op_builtin;
    std::string                alpha_path;
    std::uint64_t              seed    = 0;
    std::uint64_t              samples = 1000;
    std::string                reduced;
    std::size_t                budget_closure = default_closure_cap;
    std::uint64_t              budget_star    = default_star_budget;
    std::string                format         = "json";
    std::string                subset;
  };

  std::vector<std::size_t> parse_list(std::string const& text, std::string const& flag) {
    std::vector<std::size_t> out;
    std::stringstream        in(text);
    std::string              item;
    while (std::getline(in, item, ',')) {
      if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos
          || item.size() > 9) {
        throw UsageError(flag + ": expected comma-separated non-negative integers, got '" + text
                         + "'");
      }
      out.push_back(std::stoul(item));
    }
    return out;
  }

  std::optional<ReducedOverrides> reduced_of(RunConfig const& c) {
    if (c.reduced.empty()) return std::nullopt;
    auto const v = parse_list(c.reduced, "--reduced");
    if (v.size() != 3) throw UsageError("--reduced expects W,R,L");
    return ReducedOverrides{v[0], v[1], v[2]};
  }

  io::GraphFile need_graph(RunConfig const& c) {
    if (c.graph_path.empty()) throw UsageError("--graph is required");
    return io::load_graph(c.graph_path);
  }

  // Builtin names without a domain take the graph's vertex count.
  OpTable need_op(RunConfig const& c, std::optional<std::size_t> domain = std::nullopt) {
    if (!c.op_path.empty() && !c.op_builtin.empty()) {
      throw UsageError("--op and --op-builtin are mutually exclusive");
    }
    if (!c.op_path.empty()) return io::load_op(c.op_path);
    if (c.op_builtin.empty()) throw UsageError("--op or --op-builtin is required");
    std::string  name   = c.op_builtin;
    auto const   colons = static_cast<std::size_t>(std::count(name.begin(), name.end(), ':'));
    bool const   proj   = name.rfind("projection", 0) == 0;
    if (domain && colons == (proj ? 2U : 0U)) name += ":" + std::to_string(*domain);
    return OpTable::builtin(name);
  }

  AlphaMatrix need_alpha(RunConfig const& c) {
    if (c.alpha_path.empty()) throw UsageError("--alpha is required");
    return io::load_alpha(c.alpha_path);
  }

  std::vector<Element> subset_of(RunConfig const& c, std::size_t domain, bool required) {
    if (c.subset.empty()) {
      if (required) throw UsageError("--subset is required");
      std::vector<Element> all(domain);
      for (std::size_t k = 0; k < domain; ++k) all[k] = static_cast<Element>(k);
      return all;
    }
    std::vector<Element> out;
    for (auto v : parse_list(c.subset, "--subset")) out.push_back(static_cast<Element>(v));
    return out;
  }

  void emit(RunConfig const& c, Json const& j) {
    if (c.format == "text") {
      std::cout << io::to_text(j);
    } else {
      std::cout << j.dump(2) << "\n";
    }
  }

  Json nullable(auto const& opt) { return opt ? Json(*opt) : Json(); }

  ////////////////////////////////////////////////////////////////////////
  // Subcommands
  ////////////////////////////////////////////////////////////////////////

  int run_analyze(RunConfig const& c) {
    auto const [g, undirected] = need_graph(c);
    std::size_t const m       = g.vertex_count();
    bool const        sc      = is_strongly_connected(g);
    Json              j{{"vertices", m}, {"edges", g.edge_count()}, {"undirected", undirected}};
    j["symmetric"]          = g.is_symmetric();
    j["first_loop"]         = nullable(g.first_loop());
    j["scc"]                = scc_decompose(g);
    j["strongly_connected"] = sc;
    bool const primitive    = sc && g.edge_count() > 0 && algebraic_length_one(g);
    j["algebraic_length_one"] = sc && g.edge_count() > 0 ? Json(primitive) : Json();
    j["K"]                    = primitive ? Json(uniform_walk_constant(g)) : Json();
    std::size_t const bound   = std::max<std::size_t>(wielandt_bound(m), 2);
    j["cycle_lengths_up_to"]  = bound;
    j["cycle_lengths"]        = cycle_lengths(g, bound);
    j["all_cycle_lengths_from_2"] = sc && has_all_cycle_lengths_from(g, 2);
    if (g.is_symmetric()) j["bipartite"] = is_bipartite(g);
    emit(c, j);
    return exit_ok;
  }

  int run_compat(RunConfig const& c) {
    auto const g = need_graph(c).graph;
    auto const t = need_op(c, g.vertex_count());
    if (t.domain() != g.vertex_count()) {
      throw UsageError("operation domain does not match the digraph's vertex count");
    }
    emit(c, {{"idempotent", is_idempotent(t)}, {"compatible", is_compatible(t, g)}});
    return exit_ok;
  }

  int run_oracle_loop(RunConfig const& c) {
    auto const g = need_graph(c).graph;
    auto const t = need_op(c, g.vertex_count());
    auto const w = loop_oracle(t, g, c.budget_closure);
    Json       j{{"loop", w ? Json(w->vertex) : Json()}};
    if (w) {
      auto const edges = g.edges();
      j["derivation"]  = w->derivation.to_prefix(
          [](std::size_t) { return std::string("t"); },
          [&](std::size_t k) {
            return "(" + std::to_string(edges[k].first) + "," + std::to_string(edges[k].second) + ")";
          });
    }
    emit(c, j);
    return exit_ok;
  }

  int run_taylor(RunConfig const& c) {
    std::optional<std::size_t> domain;
    if (!c.graph_path.empty()) domain = need_graph(c).graph.vertex_count();
    auto const t   = need_op(c, domain);
    auto const X   = subset_of(c, t.domain(), false);
    auto const sys = find_taylor_system(t, X, true);
    Json       j{{"subset", X}};
    j["system"] = sys ? io::to_json(*sys) : Json("none");
    if (sys) {
      std::vector<SymbolAssignment> symbols{SymbolAssignment::from_table(t)};
      j["verified"] = check_local_satisfaction(symbols, taylor_equations(*sys), X);
    }
    emit(c, j);
    return sys && !j["verified"].get<bool>() ? exit_violation : exit_ok;
  }

  int run_construct(RunConfig const& c) {
    auto const g       = need_graph(c).graph;
    auto const alpha   = need_alpha(c);
    auto const reduced = reduced_of(c);
    std::size_t const K  = std::max<std::size_t>(uniform_walk_constant(g), 2);
    std::size_t const n  = alpha.size();
    auto const params    = reduced ? make_reduced_params(n, K, *reduced) : make_params(n, K);
    auto const table     = build_priority_value(g, params, alpha);
    Json       cycles    = Json::object();
    for (auto const& [k, walk] : table.cycles()) cycles[std::to_string(k)] = walk;
    Json j{{"params", io::to_json(params)}, {"graph_K", uniform_walk_constant(g)}};
    j["cycles"] = std::move(cycles);
    j["table"]  = io::to_json(table);
    if (!c.op_path.empty() || !c.op_builtin.empty()) {
      j["failing_alpha_rows"] = failing_alpha_rows(g, need_op(c, g.vertex_count()), alpha);
    }
    emit(c, j);
    return exit_ok;
  }

  PipelineOptions pipeline_options(RunConfig const& c, bool exhaustive) {
    PipelineOptions o;
    o.samples     = c.samples;
    o.seed        = c.seed;
    o.reduced     = reduced_of(c);
    o.exhaustive  = exhaustive;
    o.star_budget = c.budget_star;
    o.closure_cap = c.budget_closure;
    return o;
  }

  int run_sample(RunConfig const& c) {
    auto const g      = need_graph(c).graph;
    auto const t      = need_op(c, g.vertex_count());
    auto const report = main_theorem_pipeline(g, t, need_alpha(c), pipeline_options(c, false));
    Json       summary = io::to_json(report);
    if (c.format == "text") {
      std::cout << io::to_text(summary);
    } else {
      // One line per reported violation, then the summary.
      for (auto const& v : report.dichotomy.violations) {
        Json line{{"seed", c.seed}, {"index", v.index}, {"word", io::to_json(v.word)},
                  {"check", v.check}, {"detail", v.detail}};
        std::cout << line.dump() << "\n";
      }
      summary["dichotomy"].erase("violations");
      std::cout << summary.dump() << "\n";
    }
    return report.ok() ? exit_ok : exit_violation;
  }

  int run_extract_loop(RunConfig const& c) {
    auto const g = need_graph(c).graph;
    auto const t = need_op(c, g.vertex_count());
    if (c.reduced.empty()) {
      throw UsageError("extract-loop tabulates f on all n^N words and needs --reduced W,R,L");
    }
    auto const report = main_theorem_pipeline(g, t, need_alpha(c), pipeline_options(c, true));
    emit(c, io::to_json(report));
    return report.ok() && report.loop ? exit_ok : exit_violation;
  }

  int run_double_loop(RunConfig const& c) {
    auto const           t = need_op(c);
    auto const           X = subset_of(c, t.domain(), true);
    std::vector<OpTable> ops{t};
    DoubleLoopOptions    options;
    options.closure_cap = c.budget_closure;
    auto const loop     = find_double_loop(ops, X, options);
    Json       j{{"subset", X}};
    if (!loop) {
      j["double_loop"] = "none";
      emit(c, j);
      return exit_ok;
    }
    auto const term = extract_double_loop_term(ops, X, *loop);
    j["double_loop"] = {{"a", loop->a}, {"b", loop->b}};
    j["report"]      = io::to_json(term);
    emit(c, j);
    return term.verified() ? exit_ok : exit_violation;
  }

  int run_strong_loop(RunConfig const& c) {
    auto const g = need_graph(c).graph;
    auto const t = need_op(c, g.vertex_count());
    StrongLoopOptions options;
    options.closure_cap = c.budget_closure;
    options.star_budget = c.budget_star;
    auto const report   = strong_loop_pipeline(t, g, options);
    Json       j        = io::to_json(report);
    Json       witnesses = Json();
    if (auto w = strong_witnesses(t, g)) {
      witnesses = Json::array();
      for (auto [u, v] : *w) witnesses.push_back({u, v});
    }
    j["witnesses"] = std::move(witnesses);
    emit(c, j);
    return report.ok() ? exit_ok : exit_violation;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Loop lemma toolkit: digraphs, star powers, loop and double loop terms"};
  app.require_subcommand(1);
  RunConfig c;

  struct Sub {
    char const* name;
    char const* help;
    int (*run)(RunConfig const&);
  };
  Sub const subs[] = {
      {"analyze", "strong components, algebraic length, K and cycle lengths", run_analyze},
      {"compat", "idempotency and compatibility of an operation with a digraph", run_compat},
      {"oracle-loop", "closure-based loop search with a derivation", run_oracle_loop},
      {"taylor", "search a Taylor system on a subset", run_taylor},
      {"construct", "construction parameters and the priority/value table", run_construct},
      {"sample", "seeded dichotomy and lemma sampling (JSON lines)", run_sample},
      {"extract-loop", "exhaustive reduced run with loop extraction", run_extract_loop},
      {"double-loop", "double loop term on a subset", run_double_loop},
      {"strong-loop", "fan-in hypothesis and strong loop pipeline", run_strong_loop},
  };
  std::vector<std::pair<CLI::App*, Sub const*>> registered;
  for (auto const& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--graph", c.graph_path, "digraph file (JSON or text)");
    auto* op = sub->add_option("--op", c.op_path, "operation table file (JSON)");
    sub->add_option("--op-builtin", c.op_builtin,
                    "projection:i:n[:m], min-chain[:m], majority3[:m], minority3[:m]")
        ->excludes(op);
    sub->add_option("--alpha", c.alpha_path, "alpha matrix file (JSON n x n)");
    sub->add_option("--seed", c.seed, "sampling seed")->capture_default_str();
    sub->add_option("--samples", c.samples, "number of sampled words")->capture_default_str();
    sub->add_option("--reduced", c.reduced, "reduced parameters W,R,L");
    sub->add_option("--budget-closure", c.budget_closure, "closure size cap")->capture_default_str();
    sub->add_option("--budget-star", c.budget_star, "star-power leaf budget")->capture_default_str();
    sub->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    sub->add_option("--subset", c.subset, "comma-separated subset X of the domain");
    registered.emplace_back(sub, &s);
  }

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return exit_error;
  }

  try {
    for (auto const& [sub, s] : registered) {
      if (sub->parsed()) {
        if (!c.reduced.empty() && std::string_view(s->name) != "construct"
            && std::string_view(s->name) != "sample" && std::string_view(s->name) != "extract-loop") {
          throw UsageError("--reduced only applies to construct, sample and extract-loop");
        }
        return s->run(c);
      }
    }
  } catch (HypothesisError const& e) {
    std::cerr << "hypothesis failed: " << e.what() << "\n";
  } catch (ParseError const& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (Error const& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return exit_error;
}
