# witness_fixtures.py - Near-miss triangulations with their dotted edges, validated on load

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple, Union

import yaml

from src.embedding.embedding_core import Embedding, is_triangulation
from src.graph.graph_core import Edge, Graph, complement, degree_power_notation, make_graph
from src.search.genus_search import embed_in_genus

FIXTURE_PATH = Path(__file__).with_name("near_miss_triangulations.yaml")


class FixtureError(ValueError):
    """Raised when a transcribed triangulation fails validation."""


@dataclass(frozen=True)
class NearMissFixture:
    name: str
    description: str
    graph: Graph
    dotted: Tuple[Edge, ...]
    planar_embedding: Embedding

    def near_miss(self) -> Graph:
        """Complement with the dotted edges removed."""
        return complement(self.graph).without_edges(self.dotted)


def _zero_based(pairs) -> List[Edge]:
    return [tuple(sorted((int(u) - 1, int(v) - 1))) for u, v in pairs]


def _validate(name: str, g: Graph, dotted: List[Edge], expected_degrees: Optional[str]) -> Embedding:
    if g.order != 12 or g.size != 30:
        raise FixtureError(f"{name}: expected 12 vertices and 30 edges, got {g!r}")
    outcome = embed_in_genus(g, 0)
    if not outcome.found or not is_triangulation(outcome.embedding):
        raise FixtureError(f"{name}: not a planar triangulation")
    h = complement(g)
    if not h.is_connected():
        raise FixtureError(f"{name}: complement is disconnected")
    for u, v in dotted:
        if not h.has_edge(u, v):
            raise FixtureError(f"{name}: dotted edge ({u + 1}, {v + 1}) is not in the complement")
    if expected_degrees and degree_power_notation(g) != expected_degrees:
        raise FixtureError(f"{name}: degree sequence {degree_power_notation(g)} != {expected_degrees}")
    return outcome.embedding


def load_near_miss_fixtures(path: Union[str, Path] = FIXTURE_PATH) -> List[NearMissFixture]:
    """
    Read the near-miss triangulations and check each one.

    Raises:
        FixtureError: If a transcription is not a 12-vertex planar triangulation
            with a connected complement containing its dotted edges
    """
    with open(path, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f)
    fixtures = []
    for entry in data["near_misses"]:
        name = entry["name"]
        edges = _zero_based(entry["edges"])
        if len(set(edges)) != len(edges):
            raise FixtureError(f"{name}: repeated edge in transcription")
        g = make_graph(12, edges)
        dotted = _zero_based(entry["dotted"])
        embedding = _validate(name, g, dotted, entry.get("degree_sequence"))
        fixtures.append(NearMissFixture(name, entry.get("description", ""), g, tuple(dotted), embedding))
    logging.info(f"Loaded {len(fixtures)} near-miss fixtures from {path}")
    return fixtures
