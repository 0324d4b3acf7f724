#include "looplemma/io.hpp"

#include <fstream>
#include <sstream>

#include "looplemma/sampling.hpp"

namespace looplemma::io {

  namespace {

    [[noreturn]] void fail_at(std::string const& source, Json::json_pointer const& where,
                              std::string const& what) {
      std::string const path = where.to_string();
      throw ParseError(source + ": at " + (path.empty() ? "/" : path) + ": " + what);
    }

    Json parse_json(std::string_view text, std::string const& source) {
      try {
        return Json::parse(text.begin(), text.end());
      } catch (nlohmann::json::parse_error const& e) {
        std::size_t line = 1, column = 1;
        for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
          if (text[k] == '\n') {
            ++line;
            column = 1;
          } else {
            ++column;
          }
        }
        std::string msg = e.what();
        if (auto p = msg.find("parse error"); p != std::string::npos) msg = msg.substr(p);
        throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": "
                         + msg);
      }
    }

    std::uint64_t unsigned_at(Json const& root, Json::json_pointer const& where,
                              std::string const& source) {
      if (!root.contains(where)) fail_at(source, where, "missing value");
      Json const& v = root.at(where);
      if (!v.is_number_unsigned()) fail_at(source, where, "expected a non-negative integer");
      return v.get<std::uint64_t>();
    }

    Json const& array_at(Json const& root, Json::json_pointer const& where,
                         std::string const& source) {
      if (!root.contains(where)) fail_at(source, where, "missing value");
      Json const& v = root.at(where);
      if (!v.is_array()) fail_at(source, where, "expected an array");
      return v;
    }

    bool looks_like_json(std::string_view text) {
      auto p = text.find_first_not_of(" \t\r\n");
      return p != std::string_view::npos && (text[p] == '{' || text[p] == '[');
    }

    GraphFile graph_from_json(Json const& j, std::string const& source) {
      using P = Json::json_pointer;
      if (!j.is_object()) fail_at(source, P(), "expected an object");
      std::uint64_t const m = unsigned_at(j, P("/vertices"), source);
      bool                undirected = false;
      if (j.contains("undirected")) {
        if (!j["undirected"].is_boolean()) fail_at(source, P("/undirected"), "expected a boolean");
        undirected = j["undirected"].get<bool>();
      }
      Json const&       edges = array_at(j, P("/edges"), source);
      std::vector<Edge> list;
      for (std::size_t k = 0; k < edges.size(); ++k) {
        P const at = P("/edges") / k;
        if (!edges[k].is_array() || edges[k].size() != 2) fail_at(source, at, "expected [u, v]");
        auto const u = unsigned_at(j, at / 0, source);
        auto const v = unsigned_at(j, at / 1, source);
        if (u >= m || v >= m) {
          fail_at(source, at, "vertex out of range for " + std::to_string(m) + " vertices");
        }
        list.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
      }
      Digraph g = undirected ? Digraph::undirected(m, list) : Digraph(m, list);
      return {std::move(g), undirected};
    }

    GraphFile graph_from_text(std::string_view text, std::string const& source) {
      std::istringstream in{std::string(text)};
      std::string        raw;
      std::size_t        line_no = 0;
      std::optional<std::uint64_t> m;
      bool                         undirected = false;
      std::vector<Edge>            list;
      auto fail = [&](std::size_t column, std::string const& what) {
        throw ParseError(source + ":" + std::to_string(line_no) + ":" + std::to_string(column) + ": "
                         + what);
      };
      while (std::getline(in, raw)) {
        ++line_no;
        std::string const line = raw.substr(0, raw.find('#'));
        std::vector<std::pair<std::string, std::size_t>> tokens;  // token, 1-based column
        for (std::size_t p = 0; p < line.size();) {
          if (std::isspace(static_cast<unsigned char>(line[p]))) {
            ++p;
            continue;
          }
          std::size_t q = p;
          while (q < line.size() && !std::isspace(static_cast<unsigned char>(line[q]))) ++q;
          tokens.emplace_back(line.substr(p, q - p), p + 1);
          p = q;
        }
        if (tokens.empty()) continue;
        auto number = [&](std::size_t k) -> std::uint64_t {
          auto const& [tok, col] = tokens[k];
          if (tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 18) {
            fail(col, "expected a non-negative integer, found '" + tok + "'");
          }
          return std::stoull(tok);
        };
        if (!m) {
          m = number(0);
          if (tokens.size() == 2 && tokens[1].first == "undirected") {
            undirected = true;
          } else if (tokens.size() != 1) {
            fail(tokens[1].second, "expected 'undirected' or end of line");
          }
          continue;
        }
        if (tokens.size() != 2) fail(tokens[0].second, "expected an edge 'u v'");
        auto const u = number(0), v = number(1);
        if (u >= *m) fail(tokens[0].second, "vertex out of range");
        if (v >= *m) fail(tokens[1].second, "vertex out of range");
        list.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
      }
      if (!m) {
        line_no = std::max<std::size_t>(line_no, 1);
        fail(1, "missing vertex count");
      }
      Digraph g = undirected ? Digraph::undirected(*m, list) : Digraph(*m, list);
      return {std::move(g), undirected};
    }

  }  // namespace

  GraphFile parse_graph(std::string_view text, std::string const& source) {
    if (looks_like_json(text)) return graph_from_json(parse_json(text, source), source);
    return graph_from_text(text, source);
  }

  OpTable parse_op(std::string_view text, std::string const& source) {
    using P      = Json::json_pointer;
    Json const j = parse_json(text, source);
    if (!j.is_object()) fail_at(source, P(), "expected an object");
    auto const  n     = unsigned_at(j, P("/arity"), source);
    auto const  m     = unsigned_at(j, P("/domain"), source);
    Json const& table = array_at(j, P("/table"), source);
    std::vector<Element> values;
    for (std::size_t k = 0; k < table.size(); ++k) {
      auto const v = unsigned_at(j, P("/table") / k, source);
      if (v >= m) fail_at(source, P("/table") / k, "value outside the domain");
      values.push_back(static_cast<Element>(v));
    }
    try {
      return OpTable(n, m, std::move(values));
    } catch (InvalidArgument const& e) {
      fail_at(source, P("/table"), e.what());
    }
  }

  AlphaMatrix parse_alpha(std::string_view text, std::string const& source) {
    using P      = Json::json_pointer;
    Json const j = parse_json(text, source);
    if (!j.is_array()) fail_at(source, P(), "expected an n x n array");
    std::vector<std::vector<Vertex>> rows;
    for (std::size_t i = 0; i < j.size(); ++i) {
      Json const& row = array_at(j, P() / i, source);
      if (row.size() != j.size()) fail_at(source, P() / i, "row length differs from row count");
      rows.emplace_back();
      for (std::size_t k = 0; k < row.size(); ++k) {
        rows.back().push_back(static_cast<Vertex>(unsigned_at(j, P() / i / k, source)));
      }
    }
    try {
      return AlphaMatrix(std::move(rows));
    } catch (InvalidArgument const& e) {
      fail_at(source, P(), e.what());
    }
  }

  std::string read_file(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  GraphFile   load_graph(std::string const& path) { return parse_graph(read_file(path), path); }
  OpTable     load_op(std::string const& path) { return parse_op(read_file(path), path); }
  AlphaMatrix load_alpha(std::string const& path) { return parse_alpha(read_file(path), path); }

  Json to_json(Digraph const& g, bool undirected) {
    Json edges = Json::array();
    for (auto [u, v] : g.edges()) {
      if (!undirected || u <= v) edges.push_back({u, v});
    }
    Json j{{"vertices", g.vertex_count()}, {"edges", std::move(edges)}};
    if (undirected) j["undirected"] = true;
    return j;
  }

  Json to_json(OpTable const& t) {
    return {{"arity", t.arity()}, {"domain", t.domain()}, {"table", t.table()}};
  }

  Json to_json(AlphaMatrix const& alpha) { return alpha.rows(); }

  Json to_json(Word const& w) {
    return std::vector<Letter>(w.letters().begin(), w.letters().end());
  }

  Json to_json(ConstructionParams const& p) {
    return {{"n", p.n}, {"K", p.K}, {"W", p.W}, {"M", p.M}, {"R", p.R},
            {"L", p.L}, {"N", p.N}, {"reduced", p.reduced}};
  }

  std::string_view to_string(WindowClass c) noexcept {
    switch (c) {
      case WindowClass::constant: return "constant";
      case WindowClass::periodic: return "periodic";
      case WindowClass::almost_constant: return "almost-constant";
      case WindowClass::other: return "other";
    }
    return "unknown";
  }

  std::string_view to_string(DichotomyCase c) noexcept {
    switch (c) {
      case DichotomyCase::constant_tail: return "constant-tail";
      case DichotomyCase::edges: return "edges";
      case DichotomyCase::violation: return "violation";
    }
    return "unknown";
  }

  Json to_json(PriorityValueTable const& table) {
    Json out = Json::array();
    for (std::uint64_t code = 0; code < table.size(); ++code) {
      auto const& e = table.entry(code);
      out.push_back({{"word", to_json(Word::from_code(code, table.window(), table.alphabet()))},
                     {"priority", e.priority},
                     {"value", e.value},
                     {"kind", to_string(e.kind)}});
    }
    return out;
  }

  Json to_json(DichotomyReport const& r) {
    Json successors = Json::array();
    for (auto const& s : r.successors) successors.push_back(s ? Json(*s) : Json());
    Json j{{"case", to_string(r.outcome)}};
    j["letter"]     = r.letter ? Json(*r.letter) : Json();
    j["value"]      = r.value ? Json(*r.value) : Json();
    j["successors"] = std::move(successors);
    if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
    return j;
  }

  Json to_json(DichotomyStats const& s) {
    Json violations = Json::array();
    for (auto const& v : s.violations) {
      violations.push_back(
          {{"index", v.index}, {"word", to_json(v.word)}, {"check", v.check}, {"detail", v.detail}});
    }
    Json families = Json::object();
    for (std::size_t k = 0; k < s.family_counts.size(); ++k) {
      families[std::string(to_string(static_cast<SampleFamily>(k)))] = s.family_counts[k];
    }
    return {{"words", s.words},
            {"case_one", s.case_one},
            {"case_two", s.case_two},
            {"lemma_checks", s.lemma_checks},
            {"families", std::move(families)},
            {"violation_count", s.violation_count},
            {"violations", std::move(violations)}};
  }

  Json to_json(LoopReport const& r) {
    Json j{{"mode", r.mode},
           {"params", to_json(r.params)},
           {"graph_K", r.graph_K},
           {"seed", r.seed}};
    j["odd_girth"] = r.odd_girth ? Json(*r.odd_girth) : Json();
    j["dichotomy"] = to_json(r.dichotomy);
    if (r.loop) {
      j["loop"] = {{"vertex", r.loop->vertex},
                   {"a", r.loop->trace.a},
                   {"b", r.loop->trace.b},
                   {"leaves", r.loop->trace.leaves},
                   {"oracle_vertex", r.loop->oracle_vertex}};
    } else {
      j["loop"] = nullptr;
    }
    j["oracle_loop"] = r.oracle_loop ? Json(*r.oracle_loop) : Json();
    j["failure"]     = r.failure;
    j["ok"]          = r.ok();
    return j;
  }

  Json to_json(StrongLoopReport const& r) {
    Json j{{"b", r.b}};
    j["loop"]        = r.loop ? Json(*r.loop) : Json();
    j["oracle_loop"] = r.oracle_loop ? Json(*r.oracle_loop) : Json();
    j["k"]           = r.k ? Json(*r.k) : Json();
    j["a"]           = r.a;
    if (r.k) {
      j["star_depth"]    = r.star_depth;
      j["star_exponent"] = r.star_exponent;
      j["star_checked"]  = r.star_checked;
    }
    j["failure"] = r.failure;
    j["ok"]      = r.ok();
    return j;
  }

  Json to_json(TaylorSystem const& s) {
    Json rows = Json::array();
    for (auto const& row : s.rows) rows.push_back(to_string(row));
    return {{"arity", s.arity}, {"idempotent", s.idempotent_required}, {"rows", std::move(rows)}};
  }

  Json to_json(DoubleLoopTerm const& d) {
    return {{"term", d.prefix},
            {"equations", Json::array({d.equations[0], d.equations[1]})},
            {"assignments", d.assignments},
            {"failures", d.failures},
            {"verified", d.verified()}};
  }

  std::string to_text(Json const& j) {
    std::string out;
    auto        walk = [&](auto&& self, Json const& v, std::string const& path) -> void {
      if (v.is_object() && !v.empty()) {
        for (auto it = v.begin(); it != v.end(); ++it) self(self, it.value(), path + "/" + it.key());
      } else if (v.is_array() && !v.empty() && !std::all_of(v.begin(), v.end(), [](Json const& e) {
                   return e.is_primitive();
                 })) {
        for (std::size_t k = 0; k < v.size(); ++k) self(self, v[k], path + "/" + std::to_string(k));
      } else {
        out += (path.empty() ? "/" : path) + " = " + v.dump() + "\n";
      }
    };
    walk(walk, j, "");
    return out;
  }

}  // namespace looplemma::io
