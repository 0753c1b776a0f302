# embedding_core.py - Rotation systems on orientable surfaces

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from src.graph.graph_core import DisconnectedGraphError, Graph, GraphError, make_graph

Rotation = Tuple[Tuple[int, ...], ...]


class EmbeddingError(ValueError):
    """Raised when a rotation system does not match its graph."""


class Dart(NamedTuple):
    tail: int
    head: int


@dataclass(frozen=True)
class FaceSet:
    """Faces traced from an embedding, each a cyclic sequence of darts"""
    faces: Tuple[Tuple[Dart, ...], ...]

    @property
    def lengths(self) -> List[int]:
        return [len(face) for face in self.faces]

    @property
    def count(self) -> int:
        return len(self.faces)

    def length_histogram(self) -> Dict[int, int]:
        return dict(sorted(Counter(self.lengths).items()))


@dataclass(frozen=True)
class Embedding:
    """
    A graph with a cyclic order of neighbours at every vertex (its circular
    adjacency lists). Equality is exact: the lists must match position by
    position, not just up to cyclic shift.
    """
    graph: Graph
    rotation: Rotation

    def __post_init__(self):
        if len(self.rotation) != self.graph.order:
            raise EmbeddingError(f"Rotation has {len(self.rotation)} lists for {self.graph.order} vertices")
        for v, ring in enumerate(self.rotation):
            if len(set(ring)) != len(ring):
                raise EmbeddingError(f"Vertex {v} lists a neighbour twice: {list(ring)}")
            if sorted(ring) != self.graph.neighbors(v):
                raise EmbeddingError(f"Rotation at vertex {v} is {list(ring)}, neighbours are {self.graph.neighbors(v)}")

    @classmethod
    def from_rotation(cls, rotation: Sequence[Sequence[int]]) -> "Embedding":
        """Build the embedding and its graph from the rotation lists alone."""
        order = len(rotation)
        edges = []
        for v, ring in enumerate(rotation):
            for u in ring:
                if not 0 <= u < order:
                    raise EmbeddingError(f"Vertex {v} lists neighbour {u} outside 0..{order - 1}")
                if v not in rotation[u]:
                    raise EmbeddingError(f"Adjacency is not symmetric: {u} in list of {v} but not vice versa")
                edges.append((v, u))
        try:
            graph = make_graph(order, edges)
        except GraphError as e:
            raise EmbeddingError(str(e)) from e
        return cls(graph, tuple(tuple(ring) for ring in rotation))

    @property
    def order(self) -> int:
        return self.graph.order

    @property
    def size(self) -> int:
        return self.graph.size

    @cached_property
    def _position(self) -> Tuple[Dict[int, int], ...]:
        return tuple({u: i for i, u in enumerate(ring)} for ring in self.rotation)

    def successor(self, v: int, u: int) -> int:
        """Neighbour following u in the rotation at v."""
        ring = self.rotation[v]
        return ring[(self._position[v][u] + 1) % len(ring)]

    def darts(self) -> List[Dart]:
        return [Dart(v, u) for v, ring in enumerate(self.rotation) for u in ring]

    def __repr__(self) -> str:
        return f"Embedding(order={self.order}, size={self.size})"


def trace_faces(e: Embedding) -> FaceSet:
    """
    Walk every dart once. The dart after (u, v) is (v, w) where w follows u
    in the rotation at v.
    """
    seen = set()
    faces = []
    for start in e.darts():
        if start in seen:
            continue
        face = []
        dart = start
        while dart not in seen:
            seen.add(dart)
            face.append(dart)
            dart = Dart(dart.head, e.successor(dart.head, dart.tail))
        if dart != start:
            raise EmbeddingError(f"Face walk from {start} did not close")
        faces.append(tuple(face))
    return FaceSet(tuple(faces))


def face_count(e: Embedding) -> int:
    # an edgeless (single vertex) embedding still has one face
    return trace_faces(e).count if e.size else 1


def genus(e: Embedding) -> int:
    """
    Genus of this particular embedding from n - m + f = 2 - 2g.

    Raises:
        DisconnectedGraphError: If the underlying graph is not connected
    """
    if not e.graph.is_connected():
        raise DisconnectedGraphError("Euler's formula needs a connected graph")
    twice = 2 - e.order + e.size - face_count(e)
    if twice < 0 or twice % 2:
        raise EmbeddingError(f"Euler characteristic gives non-integral genus {twice}/2")
    return twice // 2


def is_triangulation(e: Embedding) -> bool:
    return e.size > 0 and all(length == 3 for length in trace_faces(e).lengths)


def count_triangular_faces(e: Embedding) -> int:
    return sum(1 for length in trace_faces(e).lengths if length == 3)


def reflect(e: Embedding) -> Embedding:
    return Embedding(e.graph, tuple(tuple(reversed(ring)) for ring in e.rotation))


def relabel(e: Embedding, perm: Sequence[int]) -> Embedding:
    """Rename vertex v to perm[v]."""
    rotation: List[Tuple[int, ...]] = [()] * e.order
    for v, ring in enumerate(e.rotation):
        rotation[perm[v]] = tuple(perm[u] for u in ring)
    return Embedding.from_rotation(rotation)


def rotate_lists(e: Embedding, shifts: Sequence[int]) -> Embedding:
    """Change the starting point of each cyclic list; the embedding is unchanged."""
    rotation = []
    for v, ring in enumerate(e.rotation):
        k = shifts[v] % len(ring) if ring else 0
        rotation.append(ring[k:] + ring[:k])
    return Embedding(e.graph, tuple(rotation))


def _code_from_start(rotation: Sequence[Sequence[int]], position: Sequence[Dict[int, int]],
                     root: int, first: int, backwards: bool, best: Optional[List[int]]) -> Optional[List[int]]:
    """
    Breadth-first code seeded at dart (root, first). Each vertex, in label
    order, lists the labels of its neighbours starting from the neighbour it
    was discovered from, then a 0. Returns None as soon as the code cannot
    beat `best`.
    """
    n = len(rotation)
    label = [0] * n
    label[root] = 1
    entry = [0] * n
    entry[root] = first
    queue = [root]
    code: List[int] = []
    next_label = 2
    undecided = best is not None
    step = -1 if backwards else 1
    for x in queue:
        ring = rotation[x]
        d = len(ring)
        at = position[x][entry[x]]
        for t in range(d):
            y = ring[(at + step * t) % d]
            if not label[y]:
                label[y] = next_label
                next_label += 1
                entry[y] = x
                queue.append(y)
            value = label[y]
            if undecided:
                other = best[len(code)]
                if value > other:
                    return None
                if value < other:
                    undecided = False
            code.append(value)
        if undecided and best[len(code)] > 0:
            undecided = False
        code.append(0)
    if len(queue) != n:
        raise DisconnectedGraphError("Canonical codes need a connected embedding")
    return None if undecided else code


def canonical_code_of_rotation(rotation: Sequence[Sequence[int]]) -> bytes:
    """
    Canonical code of a connected rotation system, identical for embeddings
    that agree up to relabelling, list starting points and reflection.

    Only roots of minimum degree are tried: every root list reads
    2, 3, ..., d+1, 0, so a smaller root degree always gives a smaller code.
    """
    n = len(rotation)
    if n == 1:
        return bytes([1, 0])
    position = [{u: i for i, u in enumerate(ring)} for ring in rotation]
    low = min(len(ring) for ring in rotation)
    if low == 0:
        raise DisconnectedGraphError("Canonical codes need a connected embedding")
    best: Optional[List[int]] = None
    for root in range(n):
        if len(rotation[root]) != low:
            continue
        for first in rotation[root]:
            for backwards in (False, True):
                candidate = _code_from_start(rotation, position, root, first, backwards, best)
                if candidate is not None:
                    best = candidate
    return bytes([n] + best)


def canonical_code(e: Embedding) -> bytes:
    if not e.graph.is_connected():
        raise DisconnectedGraphError("Canonical codes need a connected embedding")
    return canonical_code_of_rotation(e.rotation)


def equivalent(a: Embedding, b: Embedding) -> bool:
    """Flip-isomorphism test."""
    return a.order == b.order and a.size == b.size and canonical_code(a) == canonical_code(b)
