#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "looplemma/algebra.hpp"
#include "looplemma/construction.hpp"
#include "looplemma/digraph.hpp"
#include "looplemma/doubleloop.hpp"
#include "looplemma/loopfinder.hpp"
#include "looplemma/strongloop.hpp"

namespace looplemma::io {

  // Keys keep insertion order so reports read top-down.
  using Json = nlohmann::ordered_json;

  struct GraphFile {
    Digraph graph;
    bool    undirected = false;
  };

  // Digraph: JSON {"vertices": m, "edges": [[u,v],...], "undirected": bool}
  // or text, first line "m" or "m undirected", then one "u v" per line.
  // '#' starts a comment in the text form. Errors are ParseError with
  // "source:line:column" or a JSON pointer to the offending value.
  GraphFile   parse_graph(std::string_view text, std::string const& source = "<input>");
  // {"arity": n, "domain": m, "table": [...]}, leftmost argument most
  // significant.
  OpTable     parse_op(std::string_view text, std::string const& source = "<input>");
  // n x n JSON array of vertices.
  AlphaMatrix parse_alpha(std::string_view text, std::string const& source = "<input>");

  std::string read_file(std::string const& path);
  GraphFile   load_graph(std::string const& path);
  OpTable     load_op(std::string const& path);
  AlphaMatrix load_alpha(std::string const& path);

  // Undirected graphs list each pair once, u <= v.
  Json to_json(Digraph const& g, bool undirected = false);
  Json to_json(OpTable const& t);
  Json to_json(AlphaMatrix const& alpha);
  Json to_json(Word const& w);
  Json to_json(ConstructionParams const& p);
  Json to_json(PriorityValueTable const& table);
  Json to_json(DichotomyReport const& r);
  Json to_json(DichotomyStats const& s);
  Json to_json(LoopReport const& r);
  Json to_json(StrongLoopReport const& r);
  Json to_json(TaylorSystem const& s);
  Json to_json(DoubleLoopTerm const& d);

  std::string_view to_string(WindowClass c) noexcept;
  std::string_view to_string(DichotomyCase c) noexcept;

  // One "path = value" line per scalar, paths in JSON pointer syntax.
  std::string to_text(Json const& j);

}  // namespace looplemma::io
