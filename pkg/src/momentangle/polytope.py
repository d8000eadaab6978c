"""Combinatorial simple 3-polytopes given by facet adjacency cycles.

A polytope is a list of facets 1..m; facet ``i`` is described by the cyclic
sequence of facets it meets along its boundary edges. Vertices are the
triples ``{i, a, b}`` with ``a, b`` consecutive in the cycle of ``i``.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

from .errors import MalformedPolytopeError, NotFlagError, NotPogorelovError, ValidationError
from .simplicial import SimplicialComplex, build_complex


def _rotate_min(cycle: Sequence[int]) -> tuple[int, ...]:
    i = cycle.index(min(cycle))
    return tuple(cycle[i:]) + tuple(cycle[:i])


@dataclass(frozen=True)
class SimplePolytope3:
    facet_cycles: tuple[tuple[int, ...], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "facet_cycles", tuple(tuple(int(x) for x in c) for c in self.facet_cycles))
        self._validate()

    @property
    def m(self) -> int:
        return len(self.facet_cycles)

    def cycle(self, i: int) -> tuple[int, ...]:
        return self.facet_cycles[i - 1]

    def size(self, i: int) -> int:
        """Number of edges (= neighbours) of facet ``i``."""
        return len(self.facet_cycles[i - 1])

    def adjacent(self, i: int, j: int) -> bool:
        return j in self._adjacency[i]

    def neighbors(self, i: int) -> frozenset[int]:
        return self._adjacency[i]

    @cached_property
    def _adjacency(self) -> dict[int, frozenset[int]]:
        return {i + 1: frozenset(c) for i, c in enumerate(self.facet_cycles)}

    @cached_property
    def vertices(self) -> list[tuple[int, int, int]]:
        """Polytope vertices as sorted facet triples, lexicographically ordered."""
        out = set()
        for i, c in enumerate(self.facet_cycles, start=1):
            for a, b in zip(c, c[1:] + c[:1]):
                out.add(tuple(sorted((i, a, b))))
        return sorted(out)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return sorted({(min(i, j), max(i, j)) for i in self._adjacency for j in self._adjacency[i]})

    def facet_vertices(self, i: int) -> list[tuple[int, int, int]]:
        c = self.cycle(i)
        return sorted(tuple(sorted((i, a, b))) for a, b in zip(c, c[1:] + c[:1]))

    def _validate(self) -> None:
        m = self.m
        if m < 4:
            raise MalformedPolytopeError(f"a 3-polytope needs at least 4 facets, got {m}")
        for i, c in enumerate(self.facet_cycles, start=1):
            if len(c) < 3:
                raise MalformedPolytopeError(f"facet {i} has only {len(c)} neighbours")
            if len(set(c)) != len(c):
                raise MalformedPolytopeError(f"facet {i} lists a neighbour twice: {list(c)}")
            for j in c:
                if not 1 <= j <= m or j == i:
                    raise MalformedPolytopeError(f"facet {i} has invalid neighbour {j}")
        for i, c in enumerate(self.facet_cycles, start=1):
            for j in c:
                if i not in self.facet_cycles[j - 1]:
                    raise MalformedPolytopeError(f"adjacency not symmetric: {j} in F{i} but {i} not in F{j}")
        # each vertex {i,a,b} must show up as a consecutive pair in all three cycles
        seen: Counter = Counter()
        for i, c in enumerate(self.facet_cycles, start=1):
            for a, b in zip(c, c[1:] + c[:1]):
                seen[frozenset((i, a, b))] += 1
        bad = [sorted(v) for v, k in seen.items() if k != 3]
        if bad:
            raise MalformedPolytopeError(f"inconsistent vertex incidences at facet triples {bad[:3]}")
        V = len(seen)
        E = sum(len(c) for c in self.facet_cycles) // 2
        if V - E + m != 2:
            raise MalformedPolytopeError(f"Euler relation fails: V - E + F = {V} - {E} + {m} != 2")

    def to_json(self) -> dict:
        return {"m": self.m, "facet_cycles": [list(c) for c in self.facet_cycles]}


def load_polytope(source, name: str = "") -> SimplePolytope3:
    """Read ``{"m": int, "facet_cycles": [[...], ...]}`` from a path or dict."""
    if isinstance(source, Mapping):
        data = source
    else:
        path = Path(source)
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: line {exc.lineno} col {exc.colno}: {exc.msg}") from exc
        name = name or path.stem
    try:
        cycles = data["facet_cycles"]
        m = int(data.get("m", len(cycles)))
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValidationError(f"bad polytope JSON: missing {exc}") from exc
    if m != len(cycles):
        raise ValidationError(f"m = {m} but {len(cycles)} facet cycles given")
    return SimplePolytope3(tuple(tuple(c) for c in cycles), name=name or data.get("name", ""))


# --- dual complex ------------------------------------------------------------


def dual_complex(P: SimplePolytope3) -> SimplicialComplex:
    """``K_P``: vertex i per facet, a triangle per polytope vertex."""
    K = build_complex(P.vertices, P.m)
    edge_count = Counter()
    for t in K.faces(2):
        for e in combinations(t, 2):
            edge_count[e] += 1
    if any(edge_count[e] != 2 for e in K.faces(1)):
        raise MalformedPolytopeError("dual complex is not a closed surface")
    f0, f1, f2 = K.f_vector
    if f0 - f1 + f2 != 2:
        raise MalformedPolytopeError(f"dual complex has Euler characteristic {f0 - f1 + f2}")
    return K


# --- belts ------------------------------------------------------------------


@dataclass(frozen=True)
class Belt:
    """A cyclic sequence of facets; consecutive ones meet, no others do."""

    facets: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.facets)

    def __len__(self) -> int:
        return len(self.facets)

    def canonical(self) -> "Belt":
        """Rotation/reflection representative: smallest label first, smaller neighbour second."""
        c = _rotate_min(list(self.facets))
        if len(c) > 2 and c[-1] < c[1]:
            c = (c[0],) + tuple(reversed(c[1:]))
        return Belt(c)

    def as_set(self) -> frozenset[int]:
        return frozenset(self.facets)


def is_belt(P: SimplePolytope3, facets: Sequence[int]) -> bool:
    """Check the belt condition directly from the polytope."""
    k = len(facets)
    if k < 3 or len(set(facets)) != k:
        return False
    for a in range(k):
        for b in range(a + 1, k):
            consecutive = b == a + 1 or (a == 0 and b == k - 1)
            if P.adjacent(facets[a], facets[b]) != consecutive:
                return False
    if k == 3:
        return tuple(sorted(facets)) not in set(P.vertices)
    return True


def _chordless_cycles(adj: Mapping[int, frozenset[int]], k: int) -> list[tuple[int, ...]]:
    """Chordless k-cycles (k >= 4) of a graph, each once in canonical rotation."""
    out = []

    def extend(path: list[int], on_path: set[int]):
        s, last = path[0], path[-1]
        if len(path) == k:
            if s in adj[last] and path[1] < path[-1]:
                out.append(tuple(path))
            return
        for w in sorted(adj[last]):
            if w <= s or w in on_path:
                continue
            # w may touch only `last`, and `s` only if it closes the cycle
            touches = adj[w] & on_path
            allowed = {last, s} if len(path) == k - 1 else {last}
            if not touches <= allowed:
                continue
            if len(path) == k - 1 and s not in touches:
                continue
            path.append(w)
            on_path.add(w)
            extend(path, on_path)
            path.pop()
            on_path.discard(w)

    for s in sorted(adj):
        extend([s], {s})
    return out


def find_belts(P: SimplePolytope3, k: int) -> list[Belt]:
    """All k-belts of P, each once up to rotation and reflection, sorted."""
    if k < 3:
        raise ValueError("belts have length at least 3")
    adj = {i: P.neighbors(i) for i in range(1, P.m + 1)}
    if k == 3:
        verts = set(P.vertices)
        found = []
        for a in adj:
            for b in adj[a]:
                if b <= a:
                    continue
                for c in adj[a] & adj[b]:
                    if c > b and (a, b, c) not in verts:
                        found.append(Belt((a, b, c)))
        return sorted(found, key=lambda b: b.facets)
    return [Belt(c) for c in _chordless_cycles(adj, k)]


@dataclass
class Verdict:
    """A yes/no answer with the reason and, on 'no', an explicit witness."""

    holds: bool
    witness: Optional[Belt] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.holds


def is_flag(P: SimplePolytope3) -> Verdict:
    if P.m == 4:
        return Verdict(False, None, "simplex")
    belts = find_belts(P, 3)
    if belts:
        return Verdict(False, belts[0], "3-belt")
    return Verdict(True)


def is_pogorelov(P: SimplePolytope3) -> Verdict:
    flag = is_flag(P)
    if not flag:
        return flag
    belts = find_belts(P, 4)
    if belts:
        return Verdict(False, belts[0], "4-belt")
    return Verdict(True)


def require_pogorelov(P: SimplePolytope3) -> None:
    v = is_pogorelov(P)
    if not v:
        what = f"{v.reason} {list(v.witness.facets)}" if v.witness else v.reason
        raise NotPogorelovError(f"{P.name or 'polytope'} is not Pogorelov ({what})", v.witness)


# --- p-vector ----------------------------------------------------------------


@dataclass(frozen=True)
class PVector:
    counts: tuple[tuple[int, int], ...]

    def __getitem__(self, k: int) -> int:
        return dict(self.counts).get(k, 0)

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    @property
    def m(self) -> int:
        return sum(c for _, c in self.counts)

    def euler_defect(self) -> int:
        """``3p3 + 2p4 + p5 - sum_{k>=7} (k-6) pk - 12``; zero for every simple 3-polytope."""
        return sum((6 - k) * c for k, c in self.counts) - 12


def p_vector(P: SimplePolytope3, *, pogorelov: bool = False) -> PVector:
    counts = Counter(len(c) for c in P.facet_cycles)
    pv = PVector(tuple(sorted(counts.items())))
    if pv.euler_defect() != 0:
        raise MalformedPolytopeError(f"p-vector {pv.as_dict()} violates 3p3 + 2p4 + p5 = 12 + ...")
    if pogorelov and (pv[3] or pv[4] or pv[5] < 12):
        raise MalformedPolytopeError(f"Pogorelov polytope with p-vector {pv.as_dict()}")
    return pv


# --- belts around facets ----------------------------------------------------


def belt_around_facet(P: SimplePolytope3, i: int) -> Belt:
    flag = is_flag(P)
    if not flag:
        raise NotFlagError(f"{P.name or 'polytope'} is not flag ({flag.reason})")
    belt = Belt(P.cycle(i))
    if not is_belt(P, belt.facets):
        raise MalformedPolytopeError(f"neighbours of F{i} do not form a belt")
    return belt


def belt_around_pair(P: SimplePolytope3, i: int, j: int, *, check: bool = True) -> Belt:
    """The (|F_i| + |F_j| - 4)-belt around two adjacent facets."""
    if check:
        require_pogorelov(P)
    if not P.adjacent(i, j):
        raise ValidationError(f"facets {i} and {j} are not adjacent")

    def path_around(a: int, b: int) -> list[int]:
        c = list(P.cycle(a))
        k = c.index(b)
        return c[k + 1:] + c[:k]

    pi, pj = path_around(i, j), path_around(j, i)
    if pj[0] != pi[-1]:
        pj.reverse()
    belt = pi + pj[1:-1]
    if not is_belt(P, belt):
        raise MalformedPolytopeError(f"no belt around the pair F{i}, F{j}")
    return Belt(tuple(belt))
