# named_graphs.py - Standard graphs used as fixtures and sanity checks

from itertools import combinations
from typing import List, Sequence, Tuple

from src.graph.graph_core import Graph, GraphError, make_graph

Triangle = Tuple[int, int, int]


def complete_graph(n: int) -> Graph:
    return make_graph(n, combinations(range(n), 2))


def empty_graph(n: int) -> Graph:
    return make_graph(n, [])


def complete_multipartite(*parts: int) -> Graph:
    """Complete multipartite graph; parts are numbered consecutively from vertex 0."""
    labels: List[int] = []
    for index, size in enumerate(parts):
        labels.extend([index] * size)
    n = len(labels)
    return make_graph(n, [(u, v) for u, v in combinations(range(n), 2) if labels[u] != labels[v]])


def complete_bipartite(a: int, b: int) -> Graph:
    return complete_multipartite(a, b)


def cycle_graph(n: int) -> Graph:
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return make_graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    return make_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def wheel_graph(spokes: int) -> Graph:
    """Hub 0 joined to a rim cycle 1..spokes."""
    rim = [(i, i % spokes + 1) for i in range(1, spokes + 1)]
    return make_graph(spokes + 1, rim + [(0, i) for i in range(1, spokes + 1)])


def cube_graph() -> Graph:
    return make_graph(8, [(u, u ^ (1 << b)) for u in range(8) for b in range(3) if u < u ^ (1 << b)])


def octahedron() -> Graph:
    """K_{2,2,2}: antipodal pairs are (0,1), (2,3), (4,5)."""
    return complete_multipartite(2, 2, 2)


def k2_plus_p4() -> Graph:
    """Join of the edge 0-1 with the path 2-3-4-5."""
    edges = [(0, 1), (2, 3), (3, 4), (4, 5)]
    edges += [(hub, p) for hub in (0, 1) for p in range(2, 6)]
    return make_graph(6, edges)


def icosahedron() -> Graph:
    """
    Top vertex 0, upper ring 1..5, lower ring 6..10, bottom vertex 11.
    Upper vertex i sits between lower vertices 5+i and 5+(i mod 5)+1.
    """
    edges = []
    for i in range(1, 6):
        nxt = i % 5 + 1
        edges.append((0, i))
        edges.append((i, nxt))
        edges.append((i + 5, nxt + 5))
        edges.append((11, i + 5))
        edges.append((i, i + 5))
        edges.append((i, nxt + 5))
    return make_graph(12, edges)


def stacked_triangulation(order: int, keep_face: Triangle = (0, 1, 2)) -> Tuple[Graph, List[Triangle]]:
    """
    Apollonian triangulation grown from K4 by repeatedly inserting a degree-3
    vertex into the most recently created face. `keep_face` is never used, so
    it stays a face of the result (handy for pasting).

    Returns:
        The graph and the parent triangle of every inserted vertex, in order.
    """
    if order < 4:
        raise GraphError("Stacked triangulations start from K4")
    edges = list(combinations(range(4), 2))
    faces: List[Triangle] = [f for f in combinations(range(4), 3) if f != tuple(sorted(keep_face))]
    parents: List[Triangle] = []
    for v in range(4, order):
        a, b, c = faces.pop()
        parents.append((a, b, c))
        edges += [(a, v), (b, v), (c, v)]
        faces += [(a, b, v), (a, c, v), (b, c, v)]
    return make_graph(order, edges), parents


def paste_on_triangle(g1: Graph, tri1: Sequence[int], g2: Graph, tri2: Sequence[int]) -> Graph:
    """Identify face tri2 of g2 with face tri1 of g1 (vertex by vertex)."""
    mapping = {tri2[i]: tri1[i] for i in range(3)}
    next_label = g1.order
    for v in range(g2.order):
        if v not in mapping:
            mapping[v] = next_label
            next_label += 1
    edges = g1.edges() + [(mapping[u], mapping[v]) for u, v in g2.edges()]
    return make_graph(next_label, edges)
