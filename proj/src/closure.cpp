#include "looplemma/closure.hpp"

#include <algorithm>

namespace looplemma {

  ////////////////////////////////////////////////////////////////////////
  // TermDag
  ////////////////////////////////////////////////////////////////////////

  TermDag::TermDag(std::shared_ptr<TermArena const> arena, std::uint32_t root)
      : arena_(std::move(arena)), root_(root) {
    if (!arena_ || root_ >= arena_->size()) {
      throw InvalidArgument("term root outside its arena");
    }
  }

  std::vector<std::uint32_t> TermDag::reachable_postorder() const {
    std::vector<std::uint32_t> order;
    std::vector<std::uint8_t>  state(arena_->size(), 0);  // 0 new, 1 open, 2 done
    std::vector<std::uint32_t> stack{root_};
    while (!stack.empty()) {
      std::uint32_t id = stack.back();
      if (state[id] == 2) {
        stack.pop_back();
        continue;
      }
      if (state[id] == 1) {
        state[id] = 2;
        order.push_back(id);
        stack.pop_back();
        continue;
      }
      state[id] = 1;
      for (auto c : node(id).children) {
        if (state[c] == 0) {
          stack.push_back(c);
        }
      }
    }
    return order;
  }

  Tuple TermDag::evaluate(std::span<OpTable const> ops, std::span<Tuple const> generators) const {
    std::unordered_map<std::uint32_t, Tuple> value;
    for (auto id : reachable_postorder()) {
      TermNode const& n = node(id);
      if (n.kind == TermNode::Kind::generator) {
        if (n.index >= generators.size()) {
          throw InvalidArgument("term refers to a missing generator");
        }
        value[id] = generators[n.index];
        continue;
      }
      if (n.index >= ops.size()) {
        throw InvalidArgument("term refers to a missing operation");
      }
      std::vector<Tuple const*> args;
      for (auto c : n.children) {
        args.push_back(&value.at(c));
      }
      value[id] = ops[n.index].apply_coordinatewise(args);
    }
    return value.at(root_);
  }

  Element TermDag::evaluate(std::span<OpTable const> ops,
                            std::span<Element const> variables) const {
    std::unordered_map<std::uint32_t, Element> value;
    std::vector<Element>                       args;
    for (auto id : reachable_postorder()) {
      TermNode const& n = node(id);
      if (n.kind == TermNode::Kind::generator) {
        if (n.index >= variables.size()) {
          throw InvalidArgument("term refers to a missing variable");
        }
        value[id] = variables[n.index];
        continue;
      }
      if (n.index >= ops.size()) {
        throw InvalidArgument("term refers to a missing operation");
      }
      args.clear();
      for (auto c : n.children) {
        args.push_back(value.at(c));
      }
      value[id] = ops[n.index](args);
    }
    return value.at(root_);
  }

  std::size_t TermDag::depth() const {
    std::unordered_map<std::uint32_t, std::size_t> d;
    for (auto id : reachable_postorder()) {
      std::size_t best = 0;
      for (auto c : node(id).children) {
        best = std::max(best, d.at(c) + 1);
      }
      d[id] = best;
    }
    return d.at(root_);
  }

  std::size_t TermDag::node_count() const { return reachable_postorder().size(); }

  std::string TermDag::to_prefix(std::function<std::string(std::size_t)> const& op_name,
                                 std::function<std::string(std::size_t)> const& var_name) const {
    std::unordered_map<std::uint32_t, std::string> text;
    for (auto id : reachable_postorder()) {
      TermNode const& n = node(id);
      if (n.kind == TermNode::Kind::generator) {
        text[id] = var_name(n.index);
        continue;
      }
      std::string s = op_name(n.index) + "(";
      for (std::size_t j = 0; j < n.children.size(); ++j) {
        s += (j ? "," : "") + text.at(n.children[j]);
      }
      text[id] = s + ")";
    }
    return text.at(root_);
  }

  ////////////////////////////////////////////////////////////////////////
  // Closure
  ////////////////////////////////////////////////////////////////////////

  std::size_t TupleHash::operator()(Tuple const& t) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (Element e : t) {
      h ^= e + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

  std::optional<std::size_t> Closure::find(Tuple const& t) const {
    auto it = index_.find(t);
    if (it == index_.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  TermDag Closure::derivation(std::size_t i) const {
    if (!tracked()) {
      throw PreconditionError("closure was computed without derivation tracking");
    }
    if (i >= elements_.size()) {
      throw InvalidArgument("closure element index out of range");
    }
    return TermDag(arena_, static_cast<std::uint32_t>(i));
  }

  Closure subpower_closure(std::span<OpTable const> ops, std::span<Tuple const> generators,
                           ClosureOptions const& options) {
    if (generators.empty()) {
      return {};
    }
    std::size_t const arity  = generators[0].size();
    std::size_t       domain = 0;
    for (auto const& op : ops) {
      if (domain != 0 && op.domain() != domain) {
        throw InvalidArgument("operations of the algebra have different domains");
      }
      domain = op.domain();
    }
    for (auto const& g : generators) {
      if (g.size() != arity) {
        throw InvalidArgument("generators have different arities");
      }
      for (Element e : g) {
        if (domain != 0 && e >= domain) {
          throw InvalidArgument("generator entry outside the domain");
        }
      }
    }

    Closure     closure;
    std::size_t frontier_begin = 0;
    auto        arena = options.track ? std::make_shared<TermArena>() : nullptr;
    bool       stopped = false;
    auto       insert = [&](Tuple&& t, std::size_t round, TermNode&& node) {
      auto [it, fresh] = closure.index_.try_emplace(t, closure.elements_.size());
      if (!fresh) {
        return;
      }
      if (closure.elements_.size() >= options.max_size) {
        throw BudgetExceeded("subpower closure exceeded its size cap with a frontier of "
                                 + std::to_string(closure.elements_.size() - frontier_begin)
                                 + " tuples",
                             closure.elements_.size() + 1, options.max_size);
      }
      closure.elements_.push_back(std::move(t));
      closure.rounds_.push_back(round);
      if (arena) {
        arena->push_back(std::move(node));
      }
      stopped = options.stop && options.stop(closure.elements_.back());
    };
    auto finish = [&] {
      closure.arena_    = std::move(arena);
      closure.complete_ = !stopped;
      return std::move(closure);
    };

    for (std::size_t j = 0; j < generators.size() && !stopped; ++j) {
      insert(Tuple(generators[j]), 0,
             TermNode{TermNode::Kind::generator, static_cast<std::uint32_t>(j), {}});
    }
    if (stopped) {
      return finish();
    }

    Tuple result;
    for (std::size_t round = 1;; ++round) {
      std::size_t const known = closure.elements_.size();
      if (frontier_begin == known) {
        break;
      }
      for (std::size_t o = 0; o < ops.size(); ++o) {
        OpTable const&            op = ops[o];
        std::size_t const         n  = op.arity();
        std::vector<std::size_t>  pick(n);
        std::vector<Tuple const*> args(n);
        // Argument tuples whose first frontier element sits at position p.
        for (std::size_t p = 0; p < n; ++p) {
          if (p > 0 && frontier_begin == 0) {
            break;  // positions before p must come from an empty old set
          }
          auto lo = [&](std::size_t j) { return j == p ? frontier_begin : 0; };
          auto hi = [&](std::size_t j) { return j < p ? frontier_begin : known; };
          for (std::size_t j = 0; j < n; ++j) {
            pick[j] = lo(j);
          }
          while (true) {
            for (std::size_t j = 0; j < n; ++j) {
              args[j] = &closure.elements_[pick[j]];
            }
            op.apply_coordinatewise(args, result);
            if (!closure.index_.contains(result)) {
              TermNode node{TermNode::Kind::apply, static_cast<std::uint32_t>(o), {}};
              if (arena) {
                node.children.assign(pick.begin(), pick.end());
              }
              insert(std::move(result), round, std::move(node));
              if (stopped) {
                return finish();
              }
            }
            // advance the odometer, rightmost position fastest
            std::size_t j = n;
            while (j-- > 0) {
              if (++pick[j] < hi(j)) {
                break;
              }
              pick[j] = lo(j);
            }
            if (j == static_cast<std::size_t>(-1)) {
              break;
            }
          }
        }
      }
      frontier_begin = known;
    }
    return finish();
  }

  ////////////////////////////////////////////////////////////////////////
  // Loop oracle
  ////////////////////////////////////////////////////////////////////////

  std::optional<LoopWitness> loop_oracle(OpTable const& t, Digraph const& g,
                                         std::size_t max_size) {
    if (t.domain() != g.vertex_count()) {
      throw InvalidArgument("operation domain does not match the digraph's vertex count");
    }
    std::vector<Tuple> edges;
    for (auto [u, v] : g.edges()) {
      edges.push_back({u, v});
    }
    OpTable const ops[] = {t};
    ClosureOptions options{.max_size = max_size, .track = true, .stop = {}};
    options.stop = [](Tuple const& e) { return e[0] == e[1]; };
    Closure const closure = subpower_closure(ops, edges, options);
    for (std::size_t i = 0; i < closure.size(); ++i) {
      auto const& e = closure.elements()[i];
      if (e[0] == e[1]) {
        return LoopWitness{e[0], closure.derivation(i)};
      }
    }
    return std::nullopt;
  }

}  // namespace looplemma
