#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "looplemma/algebra.hpp"
#include "looplemma/closure.hpp"
#include "looplemma/construction.hpp"
#include "looplemma/sampling.hpp"

namespace looplemma {

  enum class Hypothesis : std::uint8_t {
    idempotency,
    compatibility,
    strong_connectivity,
    cycle_lengths,
    alpha_edges,
    algebraic_length,
    fan_in,
  };

  std::string_view to_string(Hypothesis h) noexcept;

  // One hypothesis of the loop theorem does not hold for the input.
  class HypothesisError : public PreconditionError {
   public:
    HypothesisError(Hypothesis h, std::string const& detail)
        : PreconditionError(std::string(to_string(h)) + ": " + detail), hypothesis_(h) {}
    Hypothesis hypothesis() const noexcept { return hypothesis_; }

   private:
    Hypothesis hypothesis_;
  };

  // A verified instance: t, and the construction built on top of g.
  struct Instance {
    OpTable      op;
    Construction context;
    std::size_t  graph_K;  // uniform walk constant of g (may be 1)
  };

  // Checks, in order: t idempotent, t compatible with g, g strongly
  // connected, closed walks of every length >= 2, and the alpha-edge
  // condition. Builds full parameters with K = max(K_g, 2), or the reduced
  // ones when overrides are given.
  Instance prepare_instance(Digraph const& g, OpTable const& t, AlphaMatrix const& alpha,
                            std::optional<ReducedOverrides> reduced = std::nullopt,
                            std::uint64_t table_budget = default_table_budget);

  struct WordViolation {
    std::uint64_t index = 0;  // sample index, or word code in exhaustive runs
    Word          word;
    std::string   check;      // "dichotomy" or a lemma name
    std::string   detail;
  };

  struct DichotomyStats {
    std::uint64_t words        = 0;
    std::uint64_t case_one     = 0;
    std::uint64_t case_two     = 0;
    std::uint64_t lemma_checks = 0;
    std::uint64_t violation_count = 0;
    std::vector<WordViolation> violations;  // the first `max_reported`
    std::vector<std::uint64_t> family_counts = std::vector<std::uint64_t>(4, 0);
    bool ok() const noexcept { return violation_count == 0; }
  };

  inline constexpr std::size_t max_reported_violations = 64;
  inline constexpr std::uint64_t default_exhaustive_budget = std::uint64_t{1} << 22;

  // f on every word of length N, indexed by word code.
  struct FTable {
    std::size_t              alphabet = 0;
    std::size_t              length   = 0;
    std::vector<FEvaluation> values;
  };

  FTable tabulate_f(Construction const& ctx, std::uint64_t budget = default_exhaustive_budget);

  // Dichotomy on all n^N words.
  DichotomyStats verify_dichotomy_exhaustive(Construction const& ctx, FTable const& f);

  // Dichotomy, shift lemmas and local-maximum lemmas on `samples` seeded
  // words. Deterministic in (context, samples, seed).
  DichotomyStats sample_dichotomy(Construction const& ctx, std::uint64_t samples,
                                  std::uint64_t seed, bool check_lemmas = true);

  struct StarTrace {
    Element       a = 0;  // t^{*(N+1)}(f_0)
    Element       b = 0;  // t^{*(N+1)}(f_1)
    std::uint64_t leaves = 0;
  };

  // a = t^{*(N+1)}(f_0), b = t^{*(N+1)}(f_1) with f_0(x) = f(x[:N]) and
  // f_1(x) = f(x[1:]), from a table of f over length-N words.
  StarTrace star_pair(OpTable const& t, std::size_t alphabet, std::size_t length,
                      std::span<Vertex const> f, std::uint64_t budget = default_star_budget);

  class ExtractionError : public Error {
   public:
    using Error::Error;
  };

  // Requires every f value defined and a passing exhaustive dichotomy.
  // Throws ExtractionError when a != b, (a, b) is not an edge, or the loop
  // oracle finds no loop.
  struct ExtractedLoop {
    Vertex    vertex;
    StarTrace trace;
    Vertex    oracle_vertex;
  };

  ExtractedLoop extract_loop(Instance const& instance, FTable const& f,
                             std::uint64_t star_budget = default_star_budget);

  struct PipelineOptions {
    std::uint64_t                   samples = 1000;
    std::uint64_t                   seed    = 0;
    std::optional<ReducedOverrides> reduced;
    bool                            exhaustive    = false;  // reduced runs: all n^N words
    std::uint64_t                   word_budget   = default_exhaustive_budget;
    std::uint64_t                   star_budget   = default_star_budget;
    std::size_t                     closure_cap   = default_closure_cap;
  };

  struct LoopReport {
    std::string                  mode;  // full-sampled, full-exhaustive, reduced-sampled, reduced-exhaustive
    ConstructionParams           params;
    std::size_t                  graph_K = 0;
    std::optional<std::size_t>   odd_girth;  // set when the undirected branch reduced g
    std::uint64_t                seed    = 0;
    DichotomyStats               dichotomy;
    std::optional<ExtractedLoop> loop;
    std::optional<Vertex>        oracle_loop;
    std::string                  failure;  // extraction or oracle disagreement
    bool ok() const noexcept { return dichotomy.ok() && failure.empty(); }
  };

  // The whole theorem pipeline: hypothesis checks (with the odd-girth
  // reduction for undirected inputs without short cycle walks), dichotomy
  // sampling or exhaustive verification, loop extraction when exhaustive
  // verification passed, and the loop oracle cross-check on g.
  LoopReport main_theorem_pipeline(Digraph const& g, OpTable const& t, AlphaMatrix const& alpha,
                                   PipelineOptions const& options = {});

}  // namespace looplemma
