# genus_search.py - Complete backtracking search for embeddings of bounded genus

import logging
from dataclasses import dataclass
from itertools import combinations, islice, permutations, product
from math import comb, factorial, prod
from typing import Dict, Iterator, List, Optional, Set, Tuple

import numpy as np

from src.embedding.embedding_core import Embedding, Rotation, canonical_code, genus
from src.graph.graph_core import DisconnectedGraphError, Edge, Graph, girth

# Configure logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')


@dataclass
class SearchOptions:
    """Tuning knobs for the backtracking search"""
    edge_order_seed: Optional[int] = None  # None keeps the degree-sum heuristic order
    anchor_orientation: bool = False  # fix the orientation at one vertex, quotienting out reflection
    prefer_same_face: bool = True


@dataclass
class EmbedOutcome:
    """Either a witness embedding or a certified exhaustion"""
    max_genus: int
    embedding: Optional[Embedding] = None
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.embedding is not None

    @property
    def exhausted(self) -> bool:
        return self.embedding is None


@dataclass
class EnumerationResult:
    embeddings: List[Embedding]
    truncated: bool = False
    nodes: int = 0


@dataclass
class FaceMap:
    face_of: Dict[Tuple[int, int], int]
    members: List[Set[int]]
    lengths: List[int]

    def faces_at(self, order: int) -> List[Set[int]]:
        at: List[Set[int]] = [set() for _ in range(order)]
        for (tail, _), fid in self.face_of.items():
            at[tail].add(fid)
        return at


@dataclass
class PartialEmbedding:
    """Rotation system of the edges inserted so far; always connected."""
    rotation: List[List[int]]
    placed: List[bool]
    vertex_count: int = 1
    edge_count: int = 0
    face_count: int = 1

    @classmethod
    def seed(cls, order: int, root: int) -> "PartialEmbedding":
        placed = [False] * order
        placed[root] = True
        return cls([[] for _ in range(order)], placed)

    @property
    def genus(self) -> int:
        return (2 - self.vertex_count + self.edge_count - self.face_count) // 2

    def attach(self, u: int, v: int, corner: int) -> None:
        """Hang new vertex v off u, after position `corner` of u's list."""
        self.rotation[u].insert(corner + 1, v)
        self.rotation[v] = [u]
        self.placed[v] = True
        self.vertex_count += 1
        self.edge_count += 1

    def detach(self, u: int, v: int, corner: int) -> None:
        self.rotation[u].pop(corner + 1)
        self.rotation[v] = []
        self.placed[v] = False
        self.vertex_count -= 1
        self.edge_count -= 1

    def join(self, u: int, v: int, cu: int, cv: int, merge: bool) -> None:
        self.rotation[u].insert(cu + 1, v)
        self.rotation[v].insert(cv + 1, u)
        self.edge_count += 1
        self.face_count += -1 if merge else 1

    def unjoin(self, u: int, v: int, cu: int, cv: int, merge: bool) -> None:
        self.rotation[u].pop(cu + 1)
        self.rotation[v].pop(cv + 1)
        self.edge_count -= 1
        self.face_count -= -1 if merge else 1

    def trace(self) -> FaceMap:
        """Face walk over the inserted darts, same successor rule as trace_faces."""
        rot = self.rotation
        position = [{w: k for k, w in enumerate(ring)} for ring in rot]
        face_of: Dict[Tuple[int, int], int] = {}
        members: List[Set[int]] = []
        lengths: List[int] = []
        for x, ring in enumerate(rot):
            for y in ring:
                if (x, y) in face_of:
                    continue
                fid = len(lengths)
                seen: Set[int] = set()
                length = 0
                a, b = x, y
                while (a, b) not in face_of:
                    face_of[(a, b)] = fid
                    seen.add(a)
                    length += 1
                    nxt = rot[b]
                    a, b = b, nxt[(position[b][a] + 1) % len(nxt)]
                members.append(seen)
                lengths.append(length)
        return FaceMap(face_of, members, lengths)

    def freeze(self) -> Rotation:
        return tuple(tuple(ring) for ring in self.rotation)


def genus_lower_bound(g: Graph) -> int:
    """Euler bound with every face at least as long as the girth."""
    shortest = girth(g)
    if g.size == 0 or shortest is None:
        return 0
    twice = 2 - g.order + g.size - (2 * g.size) // shortest
    return max(0, (twice + 1) // 2)


def plan_insertion_order(g: Graph, seed: Optional[int] = None) -> Tuple[List[Edge], int]:
    """
    Edge insertion order: DFS tree edges in discovery order (parent first),
    then the remaining edges by decreasing endpoint degree sum.

    Returns:
        The ordered edges and the number of leading tree edges.
    """
    if g.size == 0:
        return [], 0
    root = max(range(g.order), key=lambda v: (g.degree(v), -v))
    visited = {root}
    tree: List[Edge] = []
    stack = [(root, iter(g.neighbors(root)))]
    while stack:
        parent, pending = stack[-1]
        child = next((w for w in pending if w not in visited), None)
        if child is None:
            stack.pop()
            continue
        visited.add(child)
        tree.append((parent, child))
        stack.append((child, iter(g.neighbors(child))))
    in_tree = {frozenset(e) for e in tree}
    rest = [e for e in g.edges() if frozenset(e) not in in_tree]
    rest.sort(key=lambda e: (-(g.degree(e[0]) + g.degree(e[1])), e))
    if seed is not None:
        rng = np.random.default_rng(seed)
        rest = [rest[i] for i in rng.permutation(len(rest))]
    return tree + rest, len(tree)


class GenusSearchEngine:
    """
    Inserts edges one at a time into a partial rotation system, branching over
    every corner placement. Placing a new edge inside one face splits it
    (genus unchanged); joining two faces merges them and costs one handle.
    """

    def __init__(self, graph: Graph, options: Optional[SearchOptions] = None):
        if not graph.is_connected():
            raise DisconnectedGraphError(f"Genus search needs a connected graph, got {graph!r}")
        self.graph = graph
        self.options = options or SearchOptions()
        self.order, self.tree_edges = plan_insertion_order(graph, self.options.edge_order_seed)
        self.root = self.order[0][0] if self.order else 0
        self.anchor = self._find_anchor() if self.options.anchor_orientation else None
        self.nodes = 0
        self._target = 0
        self._collect: Optional[Dict[bytes, Embedding]] = None
        self._limit: Optional[int] = None
        self._truncated = False
        self._witness: Optional[Embedding] = None

    def _find_anchor(self) -> Optional[Tuple[int, int]]:
        """(depth, vertex) of the first insertion giving some vertex a third neighbour."""
        degree = [0] * self.graph.order
        for depth, (u, v) in enumerate(self.order):
            degree[u] += 1
            degree[v] += 1
            for x in (u, v):
                if degree[x] == 3:
                    return depth, x
        return None

    def _corner_allowed(self, depth: int, x: int, ring: List[int], corner: int, y: int) -> bool:
        if self.anchor is None or self.anchor != (depth, x):
            return True
        trial = ring[:corner + 1] + [y] + ring[corner + 1:]
        k = trial.index(min(trial))
        trial = trial[k:] + trial[:k]
        return trial[1] < trial[2]

    def find_one(self, max_genus: int) -> EmbedOutcome:
        self._target = max_genus
        self._collect = None
        self._witness = None
        self.nodes = 0
        if genus_lower_bound(self.graph) > max_genus:
            logging.debug(f"{self.graph!r} exceeds genus {max_genus} by the girth bound")
            return EmbedOutcome(max_genus, None, 0)
        self._descend(PartialEmbedding.seed(self.graph.order, self.root), 0)
        return EmbedOutcome(max_genus, self._witness, self.nodes)

    def enumerate(self, target_genus: int, limit: Optional[int] = None) -> EnumerationResult:
        self._target = target_genus
        self._collect = {}
        self._limit = limit
        self._truncated = False
        self.nodes = 0
        if genus_lower_bound(self.graph) <= target_genus:
            self._descend(PartialEmbedding.seed(self.graph.order, self.root), 0)
        found = [self._collect[code] for code in sorted(self._collect)]
        return EnumerationResult(found, self._truncated, self.nodes)

    def _descend(self, state: PartialEmbedding, depth: int) -> bool:
        self.nodes += 1
        if depth == len(self.order):
            return self._accept(state)
        u, v = self.order[depth]
        if depth < self.tree_edges:
            return self._place_pendant(state, depth, u, v)
        return self._place_chord(state, depth, u, v)

    def _accept(self, state: PartialEmbedding) -> bool:
        embedding = Embedding(self.graph, state.freeze())
        if self._collect is None:
            self._witness = embedding
            return True
        if state.genus != self._target:
            return False
        code = canonical_code(embedding)
        if code not in self._collect:
            self._collect[code] = embedding
            if self._limit is not None and len(self._collect) >= self._limit:
                self._truncated = True
                return True
        return False

    def _place_pendant(self, state: PartialEmbedding, depth: int, u: int, v: int) -> bool:
        ring = state.rotation[u]
        for corner in (range(len(ring)) if ring else [-1]):
            if not self._corner_allowed(depth, u, ring, corner, v):
                continue
            state.attach(u, v, corner)
            if self._descend(state, depth + 1):
                return True
            state.detach(u, v, corner)
        return False

    def _place_chord(self, state: PartialEmbedding, depth: int, u: int, v: int) -> bool:
        faces = state.trace()
        budget = self._target - state.genus
        if not self._can_finish(state, depth, faces, budget):
            return False
        ru, rv = state.rotation[u], state.rotation[v]
        corners_u = [(i, faces.face_of[(ru[i], u)]) for i in range(len(ru))]
        corners_v = [(j, faces.face_of[(rv[j], v)]) for j in range(len(rv))]
        splits = []
        merges = []
        for i, fu in corners_u:
            if not self._corner_allowed(depth, u, ru, i, v):
                continue
            for j, fv in corners_v:
                if not self._corner_allowed(depth, v, rv, j, u):
                    continue
                if fu == fv:
                    splits.append((i, j, False))
                elif budget > 0:
                    merges.append((i, j, True))
        choices = splits + merges if self.options.prefer_same_face else merges + splits
        for i, j, merge in choices:
            state.join(u, v, i, j, merge)
            if self._descend(state, depth + 1):
                return True
            state.unjoin(u, v, i, j, merge)
        return False

    def _can_finish(self, state: PartialEmbedding, depth: int, faces: FaceMap, budget: int) -> bool:
        """
        With no handles left, faces only split, so every remaining edge needs
        a face holding both endpoints. If the result must also be a
        triangulation, a face of length L needs L - 3 chords of its own.
        """
        if budget > 0:
            return True
        remaining = self.order[depth:]
        at = faces.faces_at(self.graph.order)
        shared = []
        for a, b in remaining:
            common = at[a] & at[b]
            if not common:
                return False
            shared.append(common)
        if 3 * (state.face_count + len(remaining)) != 2 * self.graph.size:
            return True
        chords = [0] * len(faces.lengths)
        for common in shared:
            for fid in common:
                chords[fid] += 1
        return all(length <= 3 or chords[fid] >= length - 3 for fid, length in enumerate(faces.lengths))


def embed_in_genus(g: Graph, max_genus: int, options: Optional[SearchOptions] = None) -> EmbedOutcome:
    """
    Decide whether g has an embedding of genus at most max_genus.

    Args:
        g (Graph): A connected graph
        max_genus (int): Largest genus allowed
        options (SearchOptions): Edge order and anchoring settings

    Returns:
        EmbedOutcome: A witness, re-checked with embedding-core, or exhaustion

    Raises:
        DisconnectedGraphError: If g is not connected
    """
    outcome = GenusSearchEngine(g, options).find_one(max_genus)
    if outcome.found:
        achieved = genus(outcome.embedding)
        if achieved > max_genus or outcome.embedding.graph != g:
            raise RuntimeError(f"Search returned an invalid witness of genus {achieved}")
    logging.debug(f"embed_in_genus({g!r}, {max_genus}): found={outcome.found} after {outcome.nodes} nodes")
    return outcome


def min_genus(g: Graph, bound: int, options: Optional[SearchOptions] = None) -> Optional[int]:
    """Smallest genus up to `bound` admitting an embedding; None means exhausted."""
    for candidate in range(genus_lower_bound(g), bound + 1):
        if embed_in_genus(g, candidate, options).found:
            return candidate
    return None


def embeddings_up_to_equivalence(g: Graph, target_genus: int, limit: Optional[int] = None,
                                 options: Optional[SearchOptions] = None) -> EnumerationResult:
    """Pairwise flip-inequivalent embeddings of exactly `target_genus`, sorted by canonical code."""
    return GenusSearchEngine(g, options).enumerate(target_genus, limit)


def iter_removal_candidates(edges: List[Edge], k: int, start: int = 0,
                            stop: Optional[int] = None) -> Iterator[Tuple[Edge, ...]]:
    """k-subsets of `edges` in lexicographic order, positions start..stop-1."""
    return islice(combinations(edges, k), start, stop)


def count_removal_candidates(m: int, k: int) -> int:
    return comb(m, k)


def embed_with_removals(g: Graph, k: int, target_genus: int, options: Optional[SearchOptions] = None,
                        start: int = 0, stop: Optional[int] = None) -> List[Tuple[Tuple[Edge, ...], Embedding]]:
    """
    Try every k-subset of edges (lexicographic) and keep those whose removal
    leaves a graph embeddable in genus target_genus.
    """
    if not 0 <= k <= g.size:
        raise ValueError(f"Cannot remove {k} edges from a graph with {g.size}")
    witnesses = []
    skipped = 0
    for removed in iter_removal_candidates(g.edges(), k, start, stop):
        h = g.without_edges(removed)
        if not h.is_connected():
            skipped += 1
            logging.info(f"Skipping removal {list(removed)}: remaining graph is disconnected")
            continue
        outcome = embed_in_genus(h, target_genus, options)
        if outcome.found:
            witnesses.append((removed, outcome.embedding))
    if skipped:
        logging.info(f"{skipped} disconnected removal candidates skipped")
    return witnesses


def iter_rotation_systems(g: Graph) -> Iterator[Rotation]:
    """Every rotation system of g (first neighbour of each list held fixed)."""
    choices = []
    for v in range(g.order):
        nb = g.neighbors(v)
        if len(nb) <= 2:
            choices.append([tuple(nb)])
        else:
            choices.append([(nb[0],) + rest for rest in permutations(nb[1:])])
    return product(*choices)


def rotation_system_count(g: Graph) -> int:
    return prod(factorial(max(g.degree(v) - 1, 0)) for v in range(g.order))


def exhaustive_min_genus(g: Graph, limit: int = 100_000) -> int:
    """Minimum genus over all rotation systems; the oracle for the backtracking search."""
    total = rotation_system_count(g)
    if total > limit:
        raise ValueError(f"{total} rotation systems exceed the oracle limit {limit}")
    return min(genus(Embedding(g, rotation)) for rotation in iter_rotation_systems(g))
