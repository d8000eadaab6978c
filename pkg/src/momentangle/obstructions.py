"""Scan for the five induced 6-vertex subgraphs that obstruct triviality of
triple Massey products of degree-3 classes."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import combinations, permutations

from .simplicial import SimplicialComplex, build_complex

_PAIRS = list(combinations(range(6), 2))
_BIT = {p: 1 << i for i, p in enumerate(_PAIRS)}


@dataclass(frozen=True)
class ObstructionGraph:
    id: int
    edges: tuple[tuple[int, int], ...]

    def as_complex(self) -> SimplicialComplex:
        return build_complex(self.edges, 6)


@lru_cache(maxsize=1)
def obstruction_graphs() -> tuple[ObstructionGraph, ...]:
    raw = json.loads(resources.files(__package__).joinpath("data/obstruction_graphs.json").read_text())
    return tuple(ObstructionGraph(g["id"], tuple(tuple(sorted(e)) for e in g["edges"])) for g in raw["graphs"])


def _mask(edges, relabel) -> int:
    m = 0
    for a, b in edges:
        x, y = sorted((relabel[a - 1], relabel[b - 1]))
        m |= _BIT[(x, y)]
    return m


@lru_cache(maxsize=1)
def _pattern_table() -> dict[int, int]:
    """Edge bitmask on positions 0..5 -> graph id, over all 720 relabellings."""
    table: dict[int, int] = {}
    for g in obstruction_graphs():
        for perm in permutations(range(6)):
            mask = _mask(g.edges, perm)
            if table.get(mask, g.id) != g.id:
                raise ValueError(f"graphs {table[mask]} and {g.id} are isomorphic")
            table[mask] = g.id
    return table


def obstruction_scan(K: SimplicialComplex) -> list[tuple[tuple[int, ...], int]]:
    """All 6-subsets S whose induced 1-skeleton is one of the five graphs."""
    table = _pattern_table()
    edges = K.edge_set
    hits = []
    for S in combinations(K.vertices, 6):
        mask = 0
        for (i, j), bit in _BIT.items():
            if (S[i], S[j]) in edges:
                mask |= bit
        gid = table.get(mask)
        if gid is not None:
            hits.append((S, gid))
    return hits
