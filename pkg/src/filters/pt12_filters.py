# pt12_filters.py - Necessary conditions on G for (G, complement of G) to split K12 into planar + toroidal

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from src.graph.graph_core import (Graph, complement, count_separating_triangles, count_triangles,
                                  degree_power_notation, degree_sequence, is_independent_set,
                                  list_separating_4cycles, list_separating_triangles)

PT12_ORDER = 12
PT12_SIZE = 30
MAX_DEGREE = 8
MIN_NONSEPARATING_TRIANGLES = 24

# Degree sequences of order-12 triangulations whose complements cannot triangulate the torus
FORBIDDEN_DEGREE_SEQUENCES = frozenset({
    "5^12",
    "4^1 5^10 6^1",
    "4^2 5^8 6^2",
    "4^3 5^6 6^3",
    "3^1 5^9 6^2",
    "4^2 5^9 7^1",
    "3^1 5^10 7^1",
})


class FilterPreconditionError(ValueError):
    """Raised when a filter gets a graph that is not a 12-vertex, 30-edge triangulation."""


class FilterName(Enum):
    MAX_DEGREE = "maxDegree"
    DEG8_INDEPENDENCE = "deg8Independence"
    FORBIDDEN_DEGREE_SEQUENCE = "forbiddenDegreeSequence"
    TRIANGLE_BUDGET = "triangleBudget"
    SEPARATING_3_6 = "separating36"
    SEPARATING_4_5 = "separating45"
    SEPARATING_4CYCLE_4_4 = "separating4cycle44"


ALL_FILTERS = tuple(FilterName)
# the stage used for the computer search; graphs without a degree-8 vertex pass deg8Independence
SEARCH_FILTERS = (FilterName.MAX_DEGREE, FilterName.DEG8_INDEPENDENCE)


@dataclass
class FilterReport:
    """Outcome of every filter evaluated on one graph, in evaluation order"""
    graph_id: int
    outcomes: Dict[FilterName, bool] = field(default_factory=dict)

    @property
    def survivor(self) -> bool:
        return all(self.outcomes.values())

    @property
    def first_failure(self) -> Optional[FilterName]:
        return next((name for name, passed in self.outcomes.items() if not passed), None)

    def to_line(self) -> str:
        verdicts = ",".join(f"{name.value}={'pass' if ok else 'fail'}" for name, ok in self.outcomes.items())
        return f"{self.graph_id}\t{'survivor' if self.survivor else 'rejected'}\t{verdicts}"


def _require_pt12_shape(g: Graph) -> None:
    if g.order != PT12_ORDER or g.size != PT12_SIZE:
        raise FilterPreconditionError(
            f"Filters expect a triangulation with {PT12_ORDER} vertices and {PT12_SIZE} edges, got {g!r}")


def filter_max_degree(g: Graph) -> bool:
    """Pass iff no vertex has degree above 8."""
    _require_pt12_shape(g)
    ds = degree_sequence(g)
    if ds.min_degree < 3:
        raise FilterPreconditionError(f"Triangulations have minimum degree 3, got {ds.min_degree}")
    return ds.max_degree <= MAX_DEGREE


def filter_deg8_independence(g: Graph) -> bool:
    """
    A degree-8 vertex v of G has only three non-neighbours, and in the
    complement they must all be adjacent to each other; so they must be
    independent in G. All degree-8 vertices must also be mutually adjacent.
    """
    _require_pt12_shape(g)
    eights = [v for v in range(g.order) if g.degree(v) == MAX_DEGREE]
    for v in eights:
        outside = [u for u in range(g.order) if u != v and not g.has_edge(u, v)]
        if not is_independent_set(g, outside):
            return False
    return all(g.has_edge(u, v) for i, u in enumerate(eights) for v in eights[i + 1:])


def filter_forbidden_degree_sequences(g: Graph) -> bool:
    _require_pt12_shape(g)
    return degree_power_notation(g) not in FORBIDDEN_DEGREE_SEQUENCES


def filter_triangle_budget(g: Graph) -> bool:
    """
    A torus triangulation on 12 vertices has 24 faces, each a non-separating
    triangle. Fail when the complement has fewer than 24 triangles left after
    discarding its separating ones, or is disconnected.
    """
    _require_pt12_shape(g)
    h = complement(g)
    if not h.is_connected():
        return False
    return count_triangles(h) - count_separating_triangles(h) >= MIN_NONSEPARATING_TRIANGLES


def filter_separating_3_6(g: Graph) -> bool:
    _require_pt12_shape(g)
    return not any(w.sides_can_realize(3, 6) for w in list_separating_triangles(g))


def filter_separating_4_5(g: Graph) -> bool:
    _require_pt12_shape(g)
    return not any(w.sides_can_realize(4, 5) for w in list_separating_triangles(g))


def filter_separating_4cycle_4_4(g: Graph) -> bool:
    _require_pt12_shape(g)
    return not any(w.sides_can_realize(4, 4) for w in list_separating_4cycles(g))


FILTERS: Dict[FilterName, Callable[[Graph], bool]] = {
    FilterName.MAX_DEGREE: filter_max_degree,
    FilterName.DEG8_INDEPENDENCE: filter_deg8_independence,
    FilterName.FORBIDDEN_DEGREE_SEQUENCE: filter_forbidden_degree_sequences,
    FilterName.TRIANGLE_BUDGET: filter_triangle_budget,
    FilterName.SEPARATING_3_6: filter_separating_3_6,
    FilterName.SEPARATING_4_5: filter_separating_4_5,
    FilterName.SEPARATING_4CYCLE_4_4: filter_separating_4cycle_4_4,
}


def run_filters(g: Graph, filters: Sequence[FilterName] = ALL_FILTERS, graph_id: int = 0,
                short_circuit: bool = True) -> FilterReport:
    """
    Apply filters in the given order, stopping at the first failure unless
    short_circuit is off.

    Args:
        g (Graph): Order-12 sphere triangulation
        filters: Filters to run, in order
        graph_id (int): Catalog index recorded in the report
        short_circuit (bool): Stop at the first failing filter

    Returns:
        FilterReport: Per-filter outcomes and the survivor flag
    """
    report = FilterReport(graph_id)
    for name in filters:
        passed = FILTERS[name](g)
        report.outcomes[name] = passed
        if not passed:
            logging.debug(f"Graph {graph_id} rejected by {name.value}")
            if short_circuit:
                break
    return report


def stage_counts(reports: Sequence[FilterReport], filters: Sequence[FilterName]) -> List[Tuple[str, int]]:
    """Number of graphs passing every filter up to and including each stage."""
    counts = []
    for depth, name in enumerate(filters, start=1):
        left = sum(1 for r in reports if len(r.outcomes) >= depth and all(list(r.outcomes.values())[:depth]))
        counts.append((name.value, left))
    return counts
