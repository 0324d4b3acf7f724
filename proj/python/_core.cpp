#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "looplemma/io.hpp"

namespace py = pybind11;
using namespace looplemma;

namespace {

  // Reports cross the boundary as JSON text; the package decodes them.
  std::string dump(io::Json const& j) { return j.dump(); }

  AlphaMatrix alpha_of(std::vector<std::vector<Vertex>> rows) { return AlphaMatrix(std::move(rows)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "looplemma core bindings";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<Digraph>(m, "Digraph")
      .def(py::init([](std::size_t n, std::vector<Edge> const& edges) { return Digraph(n, edges); }),
           py::arg("vertices"), py::arg("edges"))
      .def_static("undirected",
                  [](std::size_t n, std::vector<Edge> const& edges) { return Digraph::undirected(n, edges); })
      .def_property_readonly("vertex_count", &Digraph::vertex_count)
      .def("edges", &Digraph::edges)
      .def("has_edge", &Digraph::has_edge)
      .def("has_loop", &Digraph::has_loop)
      .def("__eq__", [](Digraph const& a, Digraph const& b) { return a == b; })
      .def("__repr__", [](Digraph const& g) {
        return "Digraph(" + std::to_string(g.vertex_count()) + " vertices, "
               + std::to_string(g.edge_count()) + " edges)";
      });

  py::class_<OpTable>(m, "OpTable")
      .def(py::init<std::size_t, std::size_t, std::vector<Element>>(), py::arg("arity"),
           py::arg("domain"), py::arg("table"))
      .def_static("builtin", [](std::string const& name) { return OpTable::builtin(name); })
      .def_property_readonly("arity", &OpTable::arity)
      .def_property_readonly("domain", &OpTable::domain)
      .def_property_readonly("table", &OpTable::table)
      .def("__call__", [](OpTable const& t, std::vector<Element> const& args) { return t(args); })
      .def("__eq__", [](OpTable const& a, OpTable const& b) { return a == b; });

  m.def("parse_graph", [](std::string const& text) {
    auto f = io::parse_graph(text);
    return py::make_tuple(std::move(f.graph), f.undirected);
  });
  m.def("parse_op", [](std::string const& text) { return io::parse_op(text); });

  m.def("is_idempotent", &is_idempotent);
  m.def("is_compatible", py::overload_cast<OpTable const&, Digraph const&>(&is_compatible));
  m.def("is_strongly_connected", &is_strongly_connected);
  m.def("algebraic_length_one", &algebraic_length_one);
  m.def("uniform_walk_constant", &uniform_walk_constant);
  m.def("cycle_lengths", &cycle_lengths);

  m.def("star_power_eval", [](OpTable const& t, std::size_t depth, std::vector<Element> values) {
    return star_power_eval(t, StarSubstitution(t.arity(), depth, std::move(values)));
  });

  m.def(
      "loop_oracle",
      [](OpTable const& t, Digraph const& g, std::size_t cap) -> std::optional<Vertex> {
        auto w = loop_oracle(t, g, cap);
        return w ? std::optional<Vertex>(w->vertex) : std::nullopt;
      },
      py::arg("op"), py::arg("graph"), py::arg("max_size") = default_closure_cap);

  m.def("find_taylor_system", [](OpTable const& t, std::vector<Element> const& subset) -> std::optional<std::string> {
    auto sys = find_taylor_system(t, subset, true);
    return sys ? std::optional<std::string>(dump(io::to_json(*sys))) : std::nullopt;
  });

  m.def("make_params", [](std::size_t n, std::size_t K) { return dump(io::to_json(make_params(n, K))); });

  m.def(
      "priority_value_table",
      [](Digraph const& g, std::vector<std::vector<Vertex>> alpha, std::size_t K) {
        auto const a = alpha_of(std::move(alpha));
        return dump(io::to_json(build_priority_value(g, make_params(a.size(), K), a)));
      },
      py::arg("graph"), py::arg("alpha"), py::arg("K"));

  m.def(
      "sample_dichotomy",
      [](Digraph const& g, std::vector<std::vector<Vertex>> alpha, std::size_t K, std::uint64_t samples,
         std::uint64_t seed) {
        auto const         a = alpha_of(std::move(alpha));
        Construction const ctx(g, make_params(a.size(), K), a);
        return dump(io::to_json(sample_dichotomy(ctx, samples, seed, true)));
      },
      py::arg("graph"), py::arg("alpha"), py::arg("K"), py::arg("samples"), py::arg("seed") = 0);

  m.def(
      "main_theorem_pipeline",
      [](Digraph const& g, OpTable const& t, std::vector<std::vector<Vertex>> alpha, std::uint64_t samples,
         std::uint64_t seed, std::optional<std::tuple<std::size_t, std::size_t, std::size_t>> reduced,
         bool exhaustive) {
        PipelineOptions o;
        o.samples    = samples;
        o.seed       = seed;
        o.exhaustive = exhaustive;
        if (reduced) o.reduced = ReducedOverrides{std::get<0>(*reduced), std::get<1>(*reduced), std::get<2>(*reduced)};
        py::gil_scoped_release release;
        return dump(io::to_json(main_theorem_pipeline(g, t, alpha_of(std::move(alpha)), o)));
      },
      py::arg("graph"), py::arg("op"), py::arg("alpha"), py::arg("samples") = 1000, py::arg("seed") = 0,
      py::arg("reduced") = py::none(), py::arg("exhaustive") = false);

  m.def("double_loop", [](OpTable const& t, std::vector<Element> const& X) -> std::optional<std::string> {
    std::vector<OpTable> ops{t};
    auto const           loop = find_double_loop(ops, X);
    if (!loop) return std::nullopt;
    return dump(io::to_json(extract_double_loop_term(ops, X, *loop)));
  });

  m.def("strong_loop_pipeline",
        [](OpTable const& t, Digraph const& g) { return dump(io::to_json(strong_loop_pipeline(t, g))); });

  m.def("fanin_vertex", [](OpTable const& t, std::size_t i, std::vector<Vertex> const& X) {
    return fanin_vertex(t, i, X);
  });
}
