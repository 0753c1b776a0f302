# graph_core.py - Simple graphs on at most 64 vertices with bitmask adjacency rows

import logging
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from math import comb
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

MAX_ORDER = 64

Edge = Tuple[int, int]


class GraphError(ValueError):
    """Raised for invalid vertices, loop edges or inconsistent degree data."""


class DisconnectedGraphError(GraphError):
    """Raised when an operation that needs a connected graph gets a disconnected one."""


class SeparatorKind(Enum):
    """Shape of a small separating vertex set"""
    TRIANGLE = "triangle"
    FOUR_CYCLE = "four-cycle"
    CLIQUE_FOUR_CYCLE = "clique-four-cycle"


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; row v of `rows` is the neighbour bitmask of vertex v."""
    order: int
    rows: Tuple[int, ...]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> List[int]:
        return _bits(self.rows[v])

    def degree(self, v: int) -> int:
        return bin(self.rows[v]).count("1")

    @property
    def size(self) -> int:
        return sum(bin(row).count("1") for row in self.rows) // 2

    @property
    def vertex_mask(self) -> int:
        return (1 << self.order) - 1

    def edges(self) -> List[Edge]:
        """All edges as (u, v) with u < v, in lexicographic order."""
        return [(u, v) for u in range(self.order) for v in _bits(self.rows[u] >> (u + 1) << (u + 1))]

    def without_edges(self, removed: Iterable[Edge]) -> "Graph":
        rows = list(self.rows)
        for u, v in removed:
            if not self.has_edge(u, v):
                raise GraphError(f"Cannot remove missing edge ({u}, {v})")
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        return Graph(self.order, tuple(rows))

    def is_connected(self) -> bool:
        return len(components(self)) <= 1

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, size={self.size})"


@dataclass(frozen=True)
class DegreeSequence:
    """Vertex degrees sorted in descending order"""
    degrees: Tuple[int, ...]

    @property
    def min_degree(self) -> int:
        return self.degrees[-1] if self.degrees else 0

    @property
    def max_degree(self) -> int:
        return self.degrees[0] if self.degrees else 0

    def multiplicities(self) -> Dict[int, int]:
        """Map degree d to the number r of vertices with that degree (the d^r notation)."""
        counts: Dict[int, int] = {}
        for d in self.degrees:
            counts[d] = counts.get(d, 0) + 1
        return counts

    def power_notation(self) -> str:
        """Render as e.g. '3^1 5^10 7^1', degrees ascending."""
        return " ".join(f"{d}^{r}" for d, r in sorted(self.multiplicities().items()))

    def sum_binomial_degrees(self) -> int:
        return sum(comb(d, 2) for d in self.degrees)

    @classmethod
    def from_power_notation(cls, text: str) -> "DegreeSequence":
        degrees: List[int] = []
        for token in text.split():
            d, _, r = token.partition("^")
            degrees.extend([int(d)] * int(r or 1))
        return cls(tuple(sorted(degrees, reverse=True)))


@dataclass(frozen=True)
class SeparatorWitness:
    """A 3- or 4-vertex set whose deletion disconnects the graph"""
    separator: Tuple[int, ...]
    kind: SeparatorKind
    component_orders: Tuple[int, ...] = field(default=())

    def sides_can_realize(self, first: int, second: int) -> bool:
        """True if the components group into two sides of orders `first` and `second`."""
        if sum(self.component_orders) != first + second:
            return False
        reachable = {0}
        for size in self.component_orders:
            reachable |= {s + size for s in reachable}
        return first in reachable


def _bits(mask: int) -> List[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def make_graph(order: int, edges: Iterable[Sequence[int]]) -> Graph:
    """
    Build a simple graph from an edge list, dropping duplicate pairs.

    Args:
        order (int): Number of vertices, labelled 0..order-1
        edges: Iterable of vertex pairs

    Returns:
        Graph: The graph with exactly the given edges

    Raises:
        GraphError: On an out-of-range order or endpoint, or a loop edge
    """
    if not 1 <= order <= MAX_ORDER:
        raise GraphError(f"Graph order must be between 1 and {MAX_ORDER}, got {order}")
    rows = [0] * order
    for pair in edges:
        u, v = int(pair[0]), int(pair[1])
        if not (0 <= u < order and 0 <= v < order):
            raise GraphError(f"Edge ({u}, {v}) has an endpoint outside 0..{order - 1}")
        if u == v:
            raise GraphError(f"Edge ({u}, {v}) is a loop")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(order, tuple(rows))


def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    return Graph(g.order, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.rows)))


def degree_sequence(g: Graph) -> DegreeSequence:
    return DegreeSequence(tuple(sorted((g.degree(v) for v in range(g.order)), reverse=True)))


def count_triangles(g: Graph) -> int:
    """Count vertex triples inducing K3 by scanning every triple."""
    rows = g.rows
    total = 0
    for u, v, w in combinations(range(g.order), 3):
        if rows[u] >> v & 1 and rows[u] >> w & 1 and rows[v] >> w & 1:
            total += 1
    return total


def goodman_total(ds: DegreeSequence, n: int, m: int) -> int:
    """
    Right-hand side of Goodman's formula, t(G) + t(complement G).

    Raises:
        GraphError: If the degree sequence does not fit n vertices and m edges
    """
    if len(ds.degrees) != n:
        raise GraphError(f"Degree sequence has {len(ds.degrees)} entries, expected {n}")
    if sum(ds.degrees) != 2 * m:
        raise GraphError(f"Degree sum {sum(ds.degrees)} does not equal 2m = {2 * m}")
    if ds.degrees and (ds.min_degree < 0 or ds.max_degree > n - 1):
        raise GraphError(f"Degrees must lie in 0..{n - 1}")
    return comb(n, 3) - (n - 2) * m + ds.sum_binomial_degrees()


def components(g: Graph, removed: int = 0) -> List[int]:
    """Connected components of g minus the vertex bitmask `removed`, as bitmasks."""
    remaining = g.vertex_mask & ~removed
    found = []
    while remaining:
        seed = remaining & -remaining
        comp = seed
        frontier = seed
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            fresh = g.rows[low.bit_length() - 1] & remaining & ~comp
            comp |= fresh
            frontier |= fresh
        found.append(comp)
        remaining &= ~comp
    return found


def _require_connected(g: Graph) -> None:
    if not g.is_connected():
        raise DisconnectedGraphError("Operation requires a connected graph")


def _separation_orders(g: Graph, separator: Sequence[int]) -> Optional[Tuple[int, ...]]:
    parts = components(g, _mask(separator))
    if len(parts) < 2:
        return None
    return tuple(sorted(bin(p).count("1") for p in parts))


def list_separating_triangles(g: Graph) -> List[SeparatorWitness]:
    """
    Find every triangle whose three vertices form a cutset.

    Raises:
        DisconnectedGraphError: If g is not connected
    """
    _require_connected(g)
    rows = g.rows
    witnesses = []
    for u, v, w in combinations(range(g.order), 3):
        if rows[u] >> v & 1 and rows[u] >> w & 1 and rows[v] >> w & 1:
            orders = _separation_orders(g, (u, v, w))
            if orders is not None:
                witnesses.append(SeparatorWitness((u, v, w), SeparatorKind.TRIANGLE, orders))
    return witnesses


def _spans_four_cycle(g: Graph, a: int, b: int, c: int, d: int) -> bool:
    e = g.has_edge
    # the three cyclic orders of four vertices
    return ((e(a, b) and e(b, c) and e(c, d) and e(d, a))
            or (e(a, b) and e(b, d) and e(d, c) and e(c, a))
            or (e(a, c) and e(c, b) and e(b, d) and e(d, a)))


def list_separating_4cycles(g: Graph) -> List[SeparatorWitness]:
    """
    Find every 4-vertex set that contains a spanning 4-cycle of g and whose
    deletion disconnects g. Sets inducing K4 are tagged CLIQUE_FOUR_CYCLE.

    Raises:
        DisconnectedGraphError: If g is not connected
    """
    _require_connected(g)
    witnesses = []
    for quad in combinations(range(g.order), 4):
        if not _spans_four_cycle(g, *quad):
            continue
        orders = _separation_orders(g, quad)
        if orders is None:
            continue
        clique = all(g.has_edge(x, y) for x, y in combinations(quad, 2))
        kind = SeparatorKind.CLIQUE_FOUR_CYCLE if clique else SeparatorKind.FOUR_CYCLE
        witnesses.append(SeparatorWitness(quad, kind, orders))
    return witnesses


def is_independent_set(g: Graph, s: Iterable[int]) -> bool:
    members = _mask(s)
    return all(not (g.rows[v] & members) for v in _bits(members))


def vertex_set(mask: int) -> FrozenSet[int]:
    return frozenset(_bits(mask))


def girth(g: Graph) -> Optional[int]:
    """Length of a shortest cycle, or None for a forest."""
    best: Optional[int] = None
    for root in range(g.order):
        dist = {root: 0}
        parent = {root: -1}
        queue = [root]
        for x in queue:
            for y in g.neighbors(x):
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    cycle = dist[x] + dist[y] + 1
                    if best is None or cycle < best:
                        best = cycle
        if best == 3:
            break
    logging.debug(f"girth of {g!r} is {best}")
    return best


def degree_power_notation(g: Graph) -> str:
    return degree_sequence(g).power_notation()


def count_separating_triangles(g: Graph) -> int:
    return len(list_separating_triangles(g))
