# triangulation_gen.py - All sphere triangulations of a given order by vertex splitting

import logging
from bisect import bisect_left
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Sequence

from tqdm import tqdm

from src.embedding.embedding_core import (Embedding, Rotation, canonical_code_of_rotation, genus,
                                          is_triangulation)
from src.formats.graph_io import parse_surftri_line

# Configure logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')

K4_SURFTRI = "4 bcd,adc,abd,acb"
MIN_ORDER = 4
MAX_ORDER = 14


class GenerationError(ValueError):
    """Raised for orders outside the supported range or non-triangulation input."""


@dataclass
class GenerationLevel:
    """Pairwise inequivalent sphere triangulations of one order, sorted by canonical code"""
    order: int
    embeddings: List[Embedding]
    codes: List[bytes]

    def __len__(self) -> int:
        return len(self.embeddings)


def split_vertex(rotation: Sequence[Sequence[int]], v: int, i: int, j: int) -> Rotation:
    """
    Split v into v and a new vertex x along its neighbours w_i and w_j (i < j).
    x takes the arc w_i..w_j and v keeps w_j..w_i; both stay adjacent to
    w_i and w_j. j = i + 1 inserts a degree-3 vertex into the face v w_i w_j.
    """
    ring = list(rotation[v])
    d = len(ring)
    x = len(rotation)
    wi, wj = ring[i], ring[j]
    lists = [list(r) for r in rotation]
    lists.append(ring[i:j + 1] + [v])
    lists[v] = [ring[(j + t) % d] for t in range(d - (j - i) + 1)] + [x]
    for w in ring[i + 1:j]:
        lists[w][lists[w].index(v)] = x
    at = lists[wi].index(v)
    lists[wi].insert(at, x)
    at = lists[wj].index(v)
    lists[wj].insert(at + 1, x)
    return tuple(tuple(r) for r in lists)


def iter_splits(rotation: Sequence[Sequence[int]]) -> Iterator[Rotation]:
    for v, ring in enumerate(rotation):
        for i, j in combinations(range(len(ring)), 2):
            yield split_vertex(rotation, v, i, j)


def _require_sphere_triangulation(e: Embedding) -> None:
    if not (is_triangulation(e) and genus(e) == 0):
        raise GenerationError(f"{e!r} is not a sphere triangulation")


def expand(e: Embedding) -> List[Embedding]:
    """
    Every vertex split of a sphere triangulation (duplicates included).

    Raises:
        GenerationError: If e is not a sphere triangulation
    """
    _require_sphere_triangulation(e)
    return [Embedding.from_rotation(child) for child in iter_splits(e.rotation)]


def _children_by_code(rotation: Rotation) -> Dict[bytes, Rotation]:
    found: Dict[bytes, Rotation] = {}
    for child in iter_splits(rotation):
        code = canonical_code_of_rotation(child)
        if code not in found:
            found[code] = child
    return found


def base_level() -> GenerationLevel:
    k4 = parse_surftri_line(K4_SURFTRI)
    return GenerationLevel(MIN_ORDER, [k4], [canonical_code_of_rotation(k4.rotation)])


def next_level(level: GenerationLevel, workers: int = 1, progress: bool = False) -> GenerationLevel:
    """Expand every member of a level and keep one embedding per canonical code."""
    parents = [e.rotation for e in level.embeddings]
    merged: Dict[bytes, Rotation] = {}
    bar = tqdm(total=len(parents), desc=f"order {level.order + 1}", disable=not progress)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            batches = pool.map(_children_by_code, parents, chunksize=max(1, len(parents) // (workers * 8)))
            for batch in batches:
                for code, child in batch.items():
                    merged.setdefault(code, child)
                bar.update(1)
    else:
        for parent in parents:
            for code, child in _children_by_code(parent).items():
                merged.setdefault(code, child)
            bar.update(1)
    bar.close()
    codes = sorted(merged)
    embeddings = [Embedding.from_rotation(merged[code]) for code in codes]
    logging.info(f"Order {level.order + 1}: {len(codes)} triangulations from {len(parents)} parents")
    return GenerationLevel(level.order + 1, embeddings, codes)


def generate(n: int, workers: int = 1, progress: bool = False) -> GenerationLevel:
    """
    All sphere triangulations of order n up to flip-isomorphism, grown level
    by level from K4.

    Args:
        n (int): Target order, 4..14
        workers (int): Worker processes used to expand a level
        progress (bool): Show a tqdm bar per level

    Returns:
        GenerationLevel: Level n sorted by canonical code

    Raises:
        GenerationError: If n is out of range
    """
    if not MIN_ORDER <= n <= MAX_ORDER:
        raise GenerationError(f"Order must be between {MIN_ORDER} and {MAX_ORDER}, got {n}")
    level = base_level()
    while level.order < n:
        level = next_level(level, workers, progress)
    return level


def find_in_level(level: GenerationLevel, code: bytes) -> Optional[int]:
    """Index of the class with this canonical code, if present."""
    k = bisect_left(level.codes, code)
    return k if k < len(level.codes) and level.codes[k] == code else None
