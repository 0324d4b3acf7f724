#include "looplemma/construction.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace looplemma {

  namespace {

    constexpr std::uint64_t param_cap = std::uint64_t{1} << 62;

    std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
      if (a != 0 && b > param_cap / a) {
        throw BudgetExceeded("construction parameter overflow", param_cap, param_cap);
      }
      return a * b;
    }

    std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
      if (a > param_cap - b) {
        throw BudgetExceeded("construction parameter overflow", param_cap, param_cap);
      }
      return a + b;
    }

    // run_end[i] = largest j with x[i..j] constant.
    std::vector<std::size_t> run_ends(Word const& x) {
      std::vector<std::size_t> out(x.size());
      for (std::size_t i = x.size(); i-- > 0;) {
        out[i] = (i + 1 < x.size() && x[i] == x[i + 1]) ? out[i + 1] : i;
      }
      return out;
    }

    std::size_t least_rotation(std::span<Letter const> u) {
      std::size_t const k    = u.size();
      std::size_t       best = 0;
      for (std::size_t s = 1; s < k; ++s) {
        for (std::size_t j = 0; j < k; ++j) {
          Letter const a = u[(s + j) % k];
          Letter const b = u[(best + j) % k];
          if (a != b) {
            if (a < b) best = s;
            break;
          }
        }
      }
      return best;
    }

    std::string word_text(Word const& x) {
      std::string s;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(x[i]);
      }
      return s;
    }

  }  // namespace

  ConstructionParams make_params(std::size_t n, std::size_t K) {
    if (n == 0) throw InvalidArgument("alphabet size must be at least 1");
    if (K < 2) throw InvalidArgument("walk constant K must be at least 2, got " + std::to_string(K));
    ConstructionParams p;
    p.n = n;
    p.K = K;
    p.W = checked_mul(3, K) - 3;
    std::uint64_t const nw = checked_pow(n, p.W, param_cap);
    std::uint64_t const m  = checked_add(checked_mul(checked_mul(2, K - 1), nw), K - 1);
    p.M                    = static_cast<std::int64_t>(m);
    p.R                    = checked_add(m, K - 1);
    p.L                    = checked_add(p.R, K - 2);
    p.N                    = checked_add(checked_add(p.L, p.W), p.R);
    return p;
  }

  ConstructionParams make_reduced_params(std::size_t n, std::size_t K, ReducedOverrides o) {
    if (n == 0) throw InvalidArgument("alphabet size must be at least 1");
    if (K < 2) throw InvalidArgument("walk constant K must be at least 2, got " + std::to_string(K));
    if (o.W < 1 || o.R < 1) throw InvalidArgument("reduced parameters need W >= 1 and R >= 1");
    if (o.L + 1 < K) throw InvalidArgument("reduced parameters need L >= K-1");
    ConstructionParams p;
    p.n       = n;
    p.K       = K;
    p.W       = o.W;
    p.R       = o.R;
    p.L       = o.L;
    p.M       = static_cast<std::int64_t>(o.R) - static_cast<std::int64_t>(K) + 1;
    p.N       = checked_add(checked_add(o.L, o.W), o.R);
    p.reduced = true;
    return p;
  }

  AlphaMatrix::AlphaMatrix(std::vector<std::vector<Vertex>> rows) : n_(rows.size()) {
    if (n_ == 0) throw InvalidArgument("alpha matrix must be non-empty");
    entries_.reserve(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i) {
      if (rows[i].size() != n_) {
        throw InvalidArgument("alpha matrix row " + std::to_string(i) + " has "
                              + std::to_string(rows[i].size()) + " entries, expected "
                              + std::to_string(n_));
      }
      entries_.insert(entries_.end(), rows[i].begin(), rows[i].end());
    }
  }

  std::vector<std::vector<Vertex>> AlphaMatrix::rows() const {
    std::vector<std::vector<Vertex>> out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      out[i].assign(entries_.begin() + i * n_, entries_.begin() + (i + 1) * n_);
    }
    return out;
  }

  std::vector<std::size_t> failing_alpha_rows(Digraph const& g, OpTable const& t,
                                              AlphaMatrix const& alpha) {
    std::size_t const n = alpha.size();
    if (t.arity() != n) {
      throw InvalidArgument("alpha matrix is " + std::to_string(n) + "x" + std::to_string(n)
                            + " but the operation has arity " + std::to_string(t.arity()));
    }
    if (t.domain() != g.vertex_count()) {
      throw InvalidArgument("operation domain does not match the digraph size");
    }
    std::vector<std::size_t> failing;
    Tuple                    args(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (alpha(i, j) >= g.vertex_count()) {
          throw InvalidArgument("alpha entry (" + std::to_string(i) + "," + std::to_string(j)
                                + ") is not a vertex");
        }
        args[j] = alpha(i, j);
      }
      if (!g.has_edge(alpha(i, i), t(args))) failing.push_back(i);
    }
    return failing;
  }

  PriorityValueTable::PriorityValueTable(std::size_t alphabet, std::size_t window,
                                         std::vector<WindowEntry> entries,
                                         std::map<std::size_t, Walk> cycles)
      : n_(alphabet), w_(window), entries_(std::move(entries)), cycles_(std::move(cycles)) {
    if (entries_.size() != checked_pow(n_, w_, std::numeric_limits<std::uint64_t>::max())) {
      throw InvalidArgument("priority/value table has the wrong number of entries");
    }
  }

  WindowEntry const& PriorityValueTable::entry(Word const& w) const {
    if (w.size() != w_ || w.alphabet() != n_) {
      throw InvalidArgument("window word does not match the table");
    }
    return entries_[w.code()];
  }

  PriorityValueTable build_priority_value(Digraph const& g, ConstructionParams const& params,
                                          AlphaMatrix const& alpha, std::uint64_t budget) {
    std::size_t const n = params.n;
    std::size_t const W = params.W;
    std::size_t const K = params.K;
    if (alpha.size() != n) throw InvalidArgument("alpha matrix size differs from the alphabet");
    std::uint64_t const count = checked_pow(n, W, budget);

    std::map<std::size_t, Walk> cycles;
    for (std::size_t k = 2; k < K; ++k) {
      auto c = smallest_cycle_walk(g, k);
      if (!c) {
        throw PreconditionError("digraph has no closed walk of length " + std::to_string(k));
      }
      cycles.emplace(k, std::move(*c));
    }

    auto const R = static_cast<std::int64_t>(params.R);
    std::vector<WindowEntry> entries(count);
    std::int64_t             next_negative = -1;
    for (std::uint64_t code = 0; code < count; ++code) {
      Word const   w = Word::from_code(code, W, n);
      WindowEntry& e = entries[code];
      e.period       = shortest_period(w);
      if (w.is_constant()) {
        e = {0, alpha(w[0], w[0]), WindowClass::constant, 1};
      } else if (e.period >= 2 && e.period < K) {
        std::size_t const k     = e.period;
        auto const        u     = w.letters().subspan(0, k);
        std::size_t const s0    = least_rotation(u);
        std::size_t const shift = (k - s0) % k;
        e.priority              = R;
        e.value                 = cycles.at(k)[shift];
        e.kind                  = WindowClass::periodic;
      } else if (Word(w).prefix(W - 1).is_constant()) {
        e.priority = R;
        e.value    = alpha(w[0], w[0]);
        e.kind     = WindowClass::almost_constant;
      } else {
        e.priority = next_negative--;
        e.value    = alpha(w[0], w[0]);
        e.kind     = WindowClass::other;
      }
    }
    return PriorityValueTable(n, W, std::move(entries), std::move(cycles));
  }

  Construction::Construction(Digraph g, ConstructionParams params, AlphaMatrix alpha)
      : Construction(g, params, alpha, build_priority_value(g, params, alpha)) {}

  Construction::Construction(Digraph g, ConstructionParams params, AlphaMatrix alpha,
                             PriorityValueTable table)
      : graph_(std::move(g)),
        params_(params),
        alpha_(std::move(alpha)),
        walks_(graph_, params.N - params.W),
        table_(std::move(table)) {
    if (params_.K < walks_.K()) {
      throw PreconditionError("parameter K = " + std::to_string(params_.K)
                              + " is below the uniform walk constant "
                              + std::to_string(walks_.K()));
    }
    if (alpha_.size() != params_.n) {
      throw InvalidArgument("alpha matrix size differs from the alphabet");
    }
    for (std::size_t i = 0; i < params_.n; ++i) {
      for (std::size_t j = 0; j < params_.n; ++j) {
        if (alpha_(i, j) >= graph_.vertex_count()) throw InvalidArgument("alpha entry is not a vertex");
      }
    }
    if (table_.alphabet() != params_.n || table_.window() != params_.W) {
      throw InvalidArgument("priority/value table does not match the parameters");
    }
  }

  void Construction::require_word(Word const& x) const {
    if (x.size() != params_.N || x.alphabet() != params_.n) {
      throw InvalidArgument("word must have length " + std::to_string(params_.N)
                            + " over an alphabet of size " + std::to_string(params_.n));
    }
  }

  PositionProfile Construction::profile(Word const& x) const {
    require_word(x);
    std::size_t const N = params_.N, W = params_.W, R = params_.R, L = params_.L, K = params_.K;
    std::size_t const P = N - W + 1;
    auto const        run = run_ends(x);

    PositionProfile prof;
    prof.priority.resize(P);
    prof.value.resize(P);
    prof.local_max.assign(P, false);

    std::uint64_t top = 1;
    for (std::size_t i = 1; i < W; ++i) top *= params_.n;
    std::uint64_t code = 0;
    for (std::size_t i = 0; i + 1 < W; ++i) code = code * params_.n + x[i];

    for (std::size_t p = 0; p < P; ++p) {
      code                  = code * params_.n + x[p + W - 1];
      WindowEntry const& e  = table_.entry(code);
      code                 %= top;

      if (run[p] + 1 >= p + W) {
        std::size_t const q = run[p] + 1 - W;
        prof.priority[p]    = static_cast<std::int64_t>(std::min(q - p, R - 1));
      } else {
        prof.priority[p] = e.priority;
      }

      prof.value[p] = e.value;
      if (p >= 1 && p <= L && run[p - 1] + 2 >= p + W + R) {
        prof.value[p] = alpha_(x[p - 1], x[p - 1 + W + R]);
      }
    }

    auto const top_priority = static_cast<std::int64_t>(R);
    for (std::size_t p = 0; p < P; ++p) {
      if (prof.priority[p] == top_priority) {
        prof.local_max[p] = true;
        continue;
      }
      if (p + 1 < K || p + K > N - W + 1) continue;
      std::size_t const lo = p + 1 >= K ? p + 1 - K : 0;
      std::size_t const hi = std::min(P - 1, p + K - 1);
      bool              ok = true;
      for (std::size_t q = lo; q <= hi && ok; ++q) ok = prof.priority[p] >= prof.priority[q];
      prof.local_max[p] = ok;
    }
    return prof;
  }

  std::int64_t Construction::position_priority(Word const& x, std::size_t p) const {
    auto prof = profile(x);
    if (p >= prof.priority.size()) throw InvalidArgument("position out of range");
    return prof.priority[p];
  }

  Vertex Construction::position_value(Word const& x, std::size_t p) const {
    auto prof = profile(x);
    if (p >= prof.value.size()) throw InvalidArgument("position out of range");
    return prof.value[p];
  }

  bool Construction::is_local_max(Word const& x, std::size_t p) const {
    auto prof = profile(x);
    if (p >= prof.local_max.size()) throw InvalidArgument("position out of range");
    return prof.local_max[p];
  }

  FEvaluation Construction::evaluate(Word const& x) const { return evaluate(x, profile(x)); }

  FEvaluation Construction::evaluate(Word const&, PositionProfile const& prof) const {
    std::size_t const L = params_.L;
    FEvaluation       out;
    if (prof.local_max[L]) {
      out.vertex = prof.value[L];
      out.left = out.right = L;
      return out;
    }
    std::optional<std::size_t> p, q;
    for (std::size_t i = L; i-- > 0;) {
      if (prof.local_max[i]) {
        p = i;
        break;
      }
    }
    for (std::size_t i = L + 1; i < prof.local_max.size(); ++i) {
      if (prof.local_max[i]) {
        q = i;
        break;
      }
    }
    if (!p || !q) {
      out.violation = "local-max-around-L";
      return out;
    }
    out.left  = *p;
    out.right = *q;
    if (*q - *p < params_.K) {
      out.violation = "walk-long-enough";
      return out;
    }
    out.vertex = walks_.walk_vertex(prof.value[*p], prof.value[*q], *q - *p, L - *p);
    return out;
  }

  Vertex Construction::eval_f(Word const& x) const {
    auto r = evaluate(x);
    if (!r.ok()) throw CorollaryViolation(r.violation, x);
    return *r.vertex;
  }

  DichotomyReport Construction::check_dichotomy(Word const& x) const {
    FEvaluation const        fx = evaluate(x);
    std::vector<FEvaluation> succ;
    succ.reserve(params_.n);
    for (Letter j = 0; j < params_.n; ++j) succ.push_back(evaluate(x.shifted(j)));
    return check_dichotomy(fx, succ);
  }

  DichotomyReport Construction::check_dichotomy(FEvaluation const&              fx,
                                                std::span<FEvaluation const> successors) const {
    std::size_t const n = params_.n;
    if (successors.size() != n) throw InvalidArgument("expected one successor per letter");
    DichotomyReport rep;
    if (!fx.ok()) {
      rep.diagnostic = fx.violation + " at x";
      return rep;
    }
    rep.value = fx.vertex;
    for (Letter j = 0; j < n; ++j) {
      if (!successors[j].ok()) {
        rep.letter     = j;
        rep.diagnostic = successors[j].violation + " at successor " + std::to_string(j);
        rep.successors.clear();
        return rep;
      }
      rep.successors.push_back(successors[j].vertex);
    }

    for (Letter i = 0; i < n; ++i) {
      if (*rep.value != alpha_(i, i)) continue;
      bool all = true;
      for (Letter j = 0; j < n && all; ++j) all = *rep.successors[j] == alpha_(i, j);
      if (all) {
        rep.outcome = DichotomyCase::constant_tail;
        rep.letter  = i;
        return rep;
      }
    }
    for (Letter j = 0; j < n; ++j) {
      if (!graph_.has_edge(*rep.value, *rep.successors[j])) {
        rep.letter     = j;
        rep.diagnostic = "no edge " + std::to_string(*rep.value) + " -> "
                         + std::to_string(*rep.successors[j]) + " for successor "
                         + std::to_string(j);
        return rep;
      }
    }
    rep.outcome = DichotomyCase::edges;
    return rep;
  }

  LemmaReport Construction::check_shift_lemmas(Word const& x, Letter i) const {
    require_word(x);
    if (i >= params_.n) throw InvalidArgument("successor letter out of range");
    Word const        y  = x.shifted(i);
    auto const        px = profile(x);
    auto const        py = profile(y);
    std::size_t const N = params_.N, W = params_.W, R = params_.R, L = params_.L, K = params_.K;
    auto const        yrun     = run_ends(y);
    bool const        x_tail   = run_ends(x)[L] == N - 1;
    LemmaReport       rep;
    auto              fail = [&](char const* lemma, std::size_t p, std::string detail) {
      rep.violations.push_back({lemma, p, std::move(detail)});
    };

    for (std::size_t p = 2; p <= N - W; ++p) {
      ++rep.checks;
      if (px.value[p] != py.value[p - 1] && !(x_tail && p == L + 1)) {
        fail("value-shift", p,
             "nu_x(p) = " + std::to_string(px.value[p]) + " but nu_y(p-1) = "
                 + std::to_string(py.value[p - 1]));
      }
    }

    for (std::size_t p = 1; p <= N - W; ++p) {
      ++rep.checks;
      std::int64_t const a = px.priority[p];
      std::int64_t const b = py.priority[p - 1];
      if (p > L + 1 && yrun[p - 1] == N - 1) {
        if (b != a + 1 || b < 0 || b > static_cast<std::int64_t>(R)) {
          fail("priority-shift", p,
               "expected pi_y(p-1) = pi_x(p)+1 in [0,R], got " + std::to_string(b) + " vs "
                   + std::to_string(a));
        }
      } else if (a != b) {
        fail("priority-shift", p,
             "pi_x(p) = " + std::to_string(a) + " but pi_y(p-1) = " + std::to_string(b));
      }
    }

    for (std::size_t p = K; p <= N - W; ++p) {
      ++rep.checks;
      if (px.local_max[p] && !py.local_max[p - 1]) {
        fail("local-max-shift", p, "p is a local maximum in x but p-1 is not in y");
      }
      if (py.local_max[p - 1] && !px.local_max[p]) {
        bool witness = false;
        if (p >= L + 2) {
          for (std::size_t q = L + 1; q < p && !witness; ++q) witness = px.local_max[q];
        }
        if (!witness) {
          fail("local-max-shift", p,
               "p-1 is a local maximum in y without a local maximum of x in [L+1, p)");
        }
      }
    }
    return rep;
  }

  LemmaReport Construction::check_local_max_lemmas(Word const& x) const {
    auto const        prof = profile(x);
    std::size_t const R = params_.R, L = params_.L, K = params_.K, W = params_.W;
    std::size_t const P = prof.local_max.size();
    LemmaReport       rep;

    std::vector<std::size_t> maxima;
    for (std::size_t p = 0; p < P; ++p) {
      if (prof.local_max[p]) maxima.push_back(p);
    }

    auto const r_minus_one = static_cast<std::int64_t>(R) - 1;
    for (std::size_t a = 0; a < maxima.size(); ++a) {
      for (std::size_t b = a + 1; b < maxima.size() && maxima[b] - maxima[a] < K; ++b) {
        ++rep.checks;
        std::size_t const p = maxima[a], q = maxima[b];
        if (prof.priority[p] != prof.priority[q] || prof.priority[p] < r_minus_one) {
          rep.violations.push_back({"close-local-max", p,
                                    "local maxima " + std::to_string(p) + " and "
                                        + std::to_string(q) + " have priorities "
                                        + std::to_string(prof.priority[p]) + " and "
                                        + std::to_string(prof.priority[q])});
        } else if (shortest_period(x.letters().subspan(p, q + W - p)) >= K) {
          rep.violations.push_back({"close-local-max", p,
                                    "segment between local maxima " + std::to_string(p) + " and "
                                        + std::to_string(q) + " has no period below K"});
        }
      }
    }

    for (std::size_t p = K - 1; p <= L + 1; ++p) {
      ++rep.checks;
      std::size_t const hi    = std::min(P - 1, p + R - 1);
      bool              found = false;
      for (std::size_t q = p; q <= hi && !found; ++q) found = prof.local_max[q];
      if (!found) {
        rep.violations.push_back(
            {"local-max-big-interval", p, "no local maximum in [p, p+R-1]"});
      }
    }

    ++rep.checks;
    auto const f = evaluate(x, prof);
    if (!f.ok()) rep.violations.push_back({f.violation, L, "for word " + word_text(x)});
    return rep;
  }

}  // namespace looplemma
