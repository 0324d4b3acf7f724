#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "looplemma/algebra.hpp"
#include "looplemma/digraph.hpp"
#include "looplemma/words.hpp"

namespace looplemma {

  // Lengths of the three zones of a word x of length N = L + W + R: the
  // left part, the window x[L:L+W] that primarily decides f(x), and the
  // right part.
  struct ConstructionParams {
    std::size_t  n = 0;  // alphabet size (arity of t)
    std::size_t  K = 0;  // uniform walk constant, K >= 2
    std::size_t  W = 0;
    std::int64_t M = 0;
    std::size_t  R = 0;
    std::size_t  L = 0;
    std::size_t  N = 0;
    bool         reduced = false;

    std::size_t positions() const noexcept { return N - W + 1; }
  };

  // W = 3K-3, M = 2(K-1)n^W + (K-1), R = M+K-1, L = R+K-2, N = L+W+R.
  // Throws InvalidArgument for n = 0 or K < 2, BudgetExceeded on overflow.
  ConstructionParams make_params(std::size_t n, std::size_t K);

  struct ReducedOverrides {
    std::size_t W = 0;
    std::size_t R = 0;
    std::size_t L = 0;
  };

  // Parameters below the formulas, for exhaustive experiments. Only
  // N = L+W+R, W >= 1, R >= 1 and L >= K-1 are enforced; M is set to R-K+1.
  ConstructionParams make_reduced_params(std::size_t n, std::size_t K, ReducedOverrides o);

  // alpha(i, j) for i, j in [0, n).
  class AlphaMatrix {
   public:
    AlphaMatrix() = default;
    explicit AlphaMatrix(std::vector<std::vector<Vertex>> rows);

    std::size_t size() const noexcept { return n_; }
    Vertex operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
    std::vector<std::vector<Vertex>> rows() const;

   private:
    std::size_t         n_ = 0;
    std::vector<Vertex> entries_;
  };

  // Indices i for which alpha(i,i) -> t(alpha(i,0), ..., alpha(i,n-1)) is
  // NOT an edge of g. Empty means the alpha matrix is verified.
  std::vector<std::size_t> failing_alpha_rows(Digraph const& g, OpTable const& t,
                                              AlphaMatrix const& alpha);

  enum class WindowClass : std::uint8_t {
    constant,         // [i, ..., i]
    periodic,         // shortest period k in [2, K)
    almost_constant,  // w[:W-1] constant, w not
    other             // negative, injective priority
  };

  struct WindowEntry {
    std::int64_t priority = 0;
    Vertex       value    = 0;
    WindowClass  kind     = WindowClass::other;
    std::size_t  period   = 0;  // shortest period
  };

  // Priority and value of every length-W window, indexed by word code.
  class PriorityValueTable {
   public:
    PriorityValueTable(std::size_t alphabet, std::size_t window, std::vector<WindowEntry> entries,
                       std::map<std::size_t, Walk> cycles);

    std::size_t alphabet() const noexcept { return n_; }
    std::size_t window() const noexcept { return w_; }
    std::size_t size() const noexcept { return entries_.size(); }

    WindowEntry const& entry(std::uint64_t code) const { return entries_.at(code); }
    WindowEntry const& entry(Word const& w) const;

    // Cycle walk [v_0, ..., v_k] used for each period k in [2, K).
    std::map<std::size_t, Walk> const& cycles() const noexcept { return cycles_; }

    // Overwrites one entry. Only meant for negative controls.
    void set_entry(std::uint64_t code, WindowEntry entry) { entries_.at(code) = entry; }

   private:
    std::size_t                 n_;
    std::size_t                 w_;
    std::vector<WindowEntry>    entries_;
    std::map<std::size_t, Walk> cycles_;
  };

  inline constexpr std::uint64_t default_table_budget = std::uint64_t{1} << 22;

  // Builds priorities/values for all n^W windows:
  //  * constant [i..i]: priority 0, value alpha(i,i);
  //  * shortest period k in [2,K): priority R; the k words of a shift class
  //    w_s[j] = u[(s+j) mod k] (u the lexicographically least rotation of
  //    the period) take the values v_s of one closed k-walk;
  //  * w[:W-1] constant but w not: priority R;
  //  * everything else: -1, -2, ... in lexicographic order.
  // Words without a prescribed value get alpha(w[0], w[0]).
  PriorityValueTable build_priority_value(Digraph const& g, ConstructionParams const& params,
                                          AlphaMatrix const& alpha,
                                          std::uint64_t budget = default_table_budget);

  // Per-position priorities, values and local maxima of one word.
  struct PositionProfile {
    std::vector<std::int64_t> priority;
    std::vector<Vertex>       value;
    std::vector<bool>         local_max;
  };

  struct FEvaluation {
    std::optional<Vertex> vertex;
    std::string           violation;  // "local-max-around-L" or "walk-long-enough"
    std::size_t           left  = 0;  // local maxima used, when the walk case applies
    std::size_t           right = 0;
    bool ok() const noexcept { return vertex.has_value(); }
  };

  // A corollary the construction relies on failed for a word. Only
  // possible with reduced parameters.
  class CorollaryViolation : public Error {
   public:
    CorollaryViolation(std::string corollary, Word word)
        : Error("violated " + corollary + " for a word of length "
                + std::to_string(word.size())),
          corollary_(std::move(corollary)),
          word_(std::move(word)) {}

    std::string const& corollary() const noexcept { return corollary_; }
    Word const&        word() const noexcept { return word_; }

   private:
    std::string corollary_;
    Word        word_;
  };

  enum class DichotomyCase : std::uint8_t { constant_tail, edges, violation };

  struct DichotomyReport {
    DichotomyCase outcome = DichotomyCase::violation;
    // constant_tail: the letter i with f(x) = alpha(i,i).
    // violation: the first successor letter whose edge is missing.
    std::optional<Letter>              letter;
    std::string                        diagnostic;
    std::optional<Vertex>              value;       // f(x)
    std::vector<std::optional<Vertex>> successors;  // f(x[1:] + [j])
    bool ok() const noexcept { return outcome != DichotomyCase::violation; }
  };

  struct LemmaViolation {
    std::string lemma;
    std::size_t position = 0;
    std::string detail;
  };

  struct LemmaReport {
    std::size_t                 checks = 0;
    std::vector<LemmaViolation> violations;
    bool ok() const noexcept { return violations.empty(); }
  };

  // Everything f depends on: the digraph, parameters, alpha, walk table and
  // priority/value table. Immutable after construction; all queries are
  // const and safe to call concurrently.
  class Construction {
   public:
    // Requires g strongly connected with algebraic length 1, closed walks of
    // each length in [2, K), params.K >= the graph's uniform walk constant
    // and alpha of size params.n.
    Construction(Digraph g, ConstructionParams params, AlphaMatrix alpha);
    Construction(Digraph g, ConstructionParams params, AlphaMatrix alpha,
                 PriorityValueTable table);

    Digraph const&            graph() const noexcept { return graph_; }
    ConstructionParams const& params() const noexcept { return params_; }
    AlphaMatrix const&        alpha() const noexcept { return alpha_; }
    PriorityValueTable const& table() const noexcept { return table_; }
    WalkTable const&          walks() const noexcept { return walks_; }

    PositionProfile profile(Word const& x) const;

    std::int64_t position_priority(Word const& x, std::size_t p) const;
    Vertex       position_value(Word const& x, std::size_t p) const;
    bool         is_local_max(Word const& x, std::size_t p) const;

    FEvaluation evaluate(Word const& x) const;
    FEvaluation evaluate(Word const& x, PositionProfile const& prof) const;
    // Throws CorollaryViolation where evaluate() reports a violation.
    Vertex eval_f(Word const& x) const;

    // Either case 1 (some i with f(x) = alpha(i,i) and f(x[1:]+[j]) =
    // alpha(i,j) for all j) or case 2 (f(x) -> f(x[1:]+[j]) for all j).
    DichotomyReport check_dichotomy(Word const& x) const;
    // Same decision from precomputed f(x) and f(x[1:]+[j]), j = 0..n-1.
    DichotomyReport check_dichotomy(FEvaluation const&              fx,
                                    std::span<FEvaluation const> successors) const;

    // Value-shift, priority-shift and local-max-shift for y = x[1:] + [i].
    LemmaReport check_shift_lemmas(Word const& x, Letter i) const;

    // Close local maxima (priority reading), existence of a local maximum in
    // every interval [p, p+R-1] for p in [K-1, L+1], and local maxima on both
    // sides of L when L is not one.
    LemmaReport check_local_max_lemmas(Word const& x) const;

   private:
    void require_word(Word const& x) const;

    Digraph            graph_;
    ConstructionParams params_;
    AlphaMatrix        alpha_;
    WalkTable          walks_;
    PriorityValueTable table_;
  };

}  // namespace looplemma
