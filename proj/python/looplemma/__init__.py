"""Loop lemma toolkit: digraphs, finite operations, loop and double loop terms.

Report-producing functions return plain dicts decoded from the library's
JSON reports; the formats match the command-line tool.
"""

import json as _json

from . import _core
from ._core import (
    BudgetExceeded,
    Digraph,
    InvalidArgument,
    OpTable,
    ParseError,
    PreconditionError,
    algebraic_length_one,
    cycle_lengths,
    fanin_vertex,
    is_compatible,
    is_idempotent,
    is_strongly_connected,
    loop_oracle,
    parse_graph,
    parse_op,
    star_power_eval,
    uniform_walk_constant,
)

__all__ = [
    "BudgetExceeded",
    "Digraph",
    "InvalidArgument",
    "OpTable",
    "ParseError",
    "PreconditionError",
    "algebraic_length_one",
    "cycle_lengths",
    "double_loop",
    "fanin_vertex",
    "find_taylor_system",
    "is_compatible",
    "is_idempotent",
    "is_strongly_connected",
    "loop_oracle",
    "main_theorem_pipeline",
    "make_params",
    "parse_graph",
    "parse_op",
    "priority_value_table",
    "sample_dichotomy",
    "star_power_eval",
    "strong_loop_pipeline",
    "uniform_walk_constant",
]


def _decode(text):
    return None if text is None else _json.loads(text)


def find_taylor_system(op, subset=None):
    """The first idempotent Taylor system of `op` on `subset`, or None."""
    if subset is None:
        subset = list(range(op.domain))
    return _decode(_core.find_taylor_system(op, list(subset)))


def make_params(n, K):
    return _decode(_core.make_params(n, K))


def priority_value_table(graph, alpha, K):
    return _decode(_core.priority_value_table(graph, alpha, K))


def sample_dichotomy(graph, alpha, K, samples, seed=0):
    return _decode(_core.sample_dichotomy(graph, alpha, K, samples, seed))


def main_theorem_pipeline(graph, op, alpha, samples=1000, seed=0, reduced=None, exhaustive=False):
    return _decode(_core.main_theorem_pipeline(graph, op, alpha, samples, seed, reduced, exhaustive))


def double_loop(op, subset):
    """Verification report of a double loop term on `subset`, or None."""
    return _decode(_core.double_loop(op, list(subset)))


def strong_loop_pipeline(op, graph):
    return _decode(_core.strong_loop_pipeline(op, graph))
