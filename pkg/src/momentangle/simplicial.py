"""Finite simplicial complexes on [m], full subcomplexes, integral cochains with
coaugmentation, and reduced cohomology.

Simplices are sorted tuples of positive ints; ``()`` is the empty simplex.
Coboundary sign convention: inserting vertex ``v`` at position ``k`` of the
sorted simplex contributes ``(-1)**k``. In particular ``d chi_() = sum chi_(i)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

from . import linalg
from .errors import ValidationError

Simplex = tuple[int, ...]


def simplex(vertices: Iterable[int]) -> Simplex:
    """Validate and sort a vertex collection. Duplicates are an error."""
    vs = tuple(sorted(int(v) for v in vertices))
    if len(set(vs)) != len(vs):
        raise ValidationError(f"duplicate vertex in simplex {list(vertices)}")
    return vs


class SimplicialComplex:
    """A downward-closed family of simplices on a vertex set ``vertices`` inside [m].

    Construct through :func:`build_complex` or :meth:`full_subcomplex`; the
    constructor trusts that ``simplices`` is already closed under faces.
    The empty complex is ``{()}``: no vertices, only the empty simplex.
    """

    def __init__(self, simplices: Iterable[Simplex], m: int, vertices: Optional[Iterable[int]] = None):
        self.m = m
        simp = frozenset(simplices) | {()}
        self.simplices = simp
        if vertices is None:
            vertices = range(1, m + 1)
        self.vertices: tuple[int, ...] = tuple(sorted(vertices))
        by_dim: dict[int, list[Simplex]] = {}
        for s in simp:
            by_dim.setdefault(len(s) - 1, []).append(s)
        self._by_dim = {q: sorted(v) for q, v in by_dim.items()}
        self._index = {q: {s: i for i, s in enumerate(v)} for q, v in self._by_dim.items()}

    def __contains__(self, s) -> bool:
        return tuple(s) in self.simplices

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.vertices == other.vertices and self.simplices == other.simplices

    def __hash__(self) -> int:
        return hash((self.vertices, self.simplices))

    def __repr__(self) -> str:
        return f"SimplicialComplex(m={self.m}, vertices={list(self.vertices)}, f={self.f_vector})"

    @property
    def dim(self) -> int:
        return max(self._by_dim)

    def faces(self, q: int) -> list[Simplex]:
        """Simplices of dimension ``q`` (``q + 1`` vertices), lexicographically sorted."""
        return self._by_dim.get(q, [])

    def face_index(self, q: int) -> dict[Simplex, int]:
        return self._index.get(q, {})

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.faces(q)) for q in range(0, self.dim + 1))

    @cached_property
    def maximal_simplices(self) -> list[Simplex]:
        out = []
        for s in self.simplices:
            if not any(len(t) == len(s) + 1 and set(s) < set(t) for t in self.faces(len(s))):
                out.append(s)
        return sorted(out, key=lambda s: (-len(s), s))

    @cached_property
    def edge_set(self) -> frozenset[Simplex]:
        return frozenset(self.faces(1))

    def neighbors(self, v: int) -> set[int]:
        return {w for e in self.faces(1) if v in e for w in e if w != v}

    def full_subcomplex(self, J: Iterable[int]) -> "SimplicialComplex":
        return full_subcomplex(self, J)

    def is_cone(self) -> bool:
        """True when some vertex is joinable to every simplex (then K is contractible)."""
        if not self.vertices:
            return False
        maximal = self.maximal_simplices
        for v in self.vertices:
            if all(tuple(sorted(set(s) | {v})) in self.simplices for s in maximal):
                return True
        return False

    def to_json(self) -> dict:
        return {"m": self.m, "maximal_simplices": [list(s) for s in self.maximal_simplices if s]}


def build_complex(maximal_simplices: Iterable[Sequence[int]], m: int) -> SimplicialComplex:
    """Smallest complex on [m] containing the given simplices and every vertex of [m]."""
    if m < 0:
        raise ValidationError("m must be nonnegative")
    simplices: set[Simplex] = {()}
    simplices.update((i,) for i in range(1, m + 1))
    for raw in maximal_simplices:
        s = simplex(raw)
        for v in s:
            if not 1 <= v <= m:
                raise ValidationError(f"vertex label {v} outside [1, {m}]")
        if s in simplices:
            continue
        for k in range(len(s) + 1):
            simplices.update(combinations(s, k))
    return SimplicialComplex(simplices, m)


def empty_complex(m: int = 0) -> SimplicialComplex:
    return SimplicialComplex([()], m, vertices=())


def full_subcomplex(K: SimplicialComplex, J: Iterable[int]) -> SimplicialComplex:
    """``K_J``: the simplices of K lying inside J. Original labels are kept."""
    Jset = frozenset(J)
    if not Jset <= set(range(1, K.m + 1)):
        raise ValidationError(f"{sorted(Jset)} is not a subset of [1, {K.m}]")
    Jset &= set(K.vertices)
    return SimplicialComplex((s for s in K.simplices if Jset.issuperset(s)), K.m, vertices=Jset)


def load_complex(source) -> SimplicialComplex:
    """Read ``{"m": int, "maximal_simplices": [[...], ...]}`` from a path or a dict."""
    if isinstance(source, Mapping):
        data = source
    else:
        path = Path(source)
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: line {exc.lineno} col {exc.colno}: {exc.msg}") from exc
    try:
        return build_complex(data["maximal_simplices"], int(data["m"]))
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValidationError(f"bad simplicial complex JSON: {exc}") from exc


# --- cochains ---------------------------------------------------------------


@dataclass(eq=False)
class Cochain:
    """An integral ``degree``-cochain; ``coefficients`` maps simplices with
    ``degree + 1`` vertices to nonzero ints."""

    complex: SimplicialComplex
    degree: int
    coefficients: dict[Simplex, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for s, c in self.coefficients.items():
            s = tuple(s)
            if len(s) != self.degree + 1:
                raise ValidationError(f"simplex {s} has wrong size for a {self.degree}-cochain")
            if s not in self.complex:
                raise ValidationError(f"simplex {s} is not in the complex")
            if c:
                clean[s] = clean.get(s, 0) + c
        self.coefficients = {s: c for s, c in clean.items() if c}

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.complex == other.complex and self.degree == other.degree
                and self.coefficients == other.coefficients)

    def _check(self, other: "Cochain") -> None:
        if other.complex != self.complex or other.degree != self.degree:
            raise ValueError("cochains live in different groups")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._check(other)
        out = dict(self.coefficients)
        for s, c in other.coefficients.items():
            out[s] = out.get(s, 0) + c
        return Cochain(self.complex, self.degree, out)

    def __neg__(self) -> "Cochain":
        return Cochain(self.complex, self.degree, {s: -c for s, c in self.coefficients.items()})

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def __rmul__(self, k: int) -> "Cochain":
        return Cochain(self.complex, self.degree, {s: k * c for s, c in self.coefficients.items()})

    def is_zero(self) -> bool:
        return not self.coefficients

    def vector(self) -> list[int]:
        return [self.coefficients.get(s, 0) for s in self.complex.faces(self.degree)]

    @classmethod
    def from_vector(cls, K: SimplicialComplex, degree: int, vec: Sequence[int]) -> "Cochain":
        return cls(K, degree, {s: c for s, c in zip(K.faces(degree), vec) if c})

    def __repr__(self) -> str:
        terms = " + ".join(f"{c}*chi{list(s)}" for s, c in sorted(self.coefficients.items()))
        return f"Cochain(deg={self.degree}, {terms or '0'})"


def chi(K: SimplicialComplex, s: Iterable[int], coefficient: int = 1) -> Cochain:
    """The characteristic cochain of one simplex."""
    s = simplex(s)
    return Cochain(K, len(s) - 1, {s: coefficient})


def coboundary(c: Cochain) -> Cochain:
    K = c.complex
    out: dict[Simplex, int] = {}
    for s, coef in c.coefficients.items():
        for v in K.vertices:
            if v in s:
                continue
            pos = sum(1 for x in s if x < v)
            t = s[:pos] + (v,) + s[pos:]
            if t in K.simplices:
                out[t] = out.get(t, 0) + (-coef if pos % 2 else coef)
    return Cochain(K, c.degree + 1, out)


def coboundary_matrix(K: SimplicialComplex, q: int) -> linalg.Matrix:
    """Matrix of ``d: C^q -> C^{q+1}`` in the sorted face bases (rows: (q+1)-faces)."""
    rows = K.faces(q + 1)
    col_index = K.face_index(q)
    mat = linalg.zeros(len(rows), len(col_index))
    for i, t in enumerate(rows):
        for k in range(len(t)):
            mat[i][col_index[t[:k] + t[k + 1:]]] = -1 if k % 2 else 1
    return mat


# --- groups -----------------------------------------------------------------


@dataclass(frozen=True)
class AbelianGroup:
    """``Z^free_rank + Z/torsion[0] + ...`` with torsion in divisibility order.

    ``generators`` (not part of equality) holds representing cocycles: free
    generators first, then one per torsion coefficient.
    """

    free_rank: int = 0
    torsion: tuple[int, ...] = ()
    generators: tuple = field(default=(), compare=False, repr=False)

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) or "0"


def _cochain_cohomology(K: SimplicialComplex, q: int) -> linalg.CohomologyData:
    d_in = coboundary_matrix(K, q - 1) if q >= 0 else None
    d_out = coboundary_matrix(K, q)
    return linalg.cohomology(d_in, d_out, len(K.faces(q)), len(K.faces(q - 1)) if q >= 0 else 0)


def reduced_cohomology_group(K: SimplicialComplex, q: int) -> AbelianGroup:
    """``H~^q(K)`` with generators as :class:`Cochain` objects."""
    data = _cochain_cohomology(K, q)
    gens = tuple(Cochain.from_vector(K, q, g) for g in data.generators)
    return AbelianGroup(data.free_rank, data.torsion, gens)


def reduced_cohomology(K: SimplicialComplex, *, generators: bool = True) -> dict[int, AbelianGroup]:
    """Reduced (coaugmented) integral cohomology, degrees ``-1 .. dim K``."""
    out = {}
    for q in range(-1, max(K.dim, -1) + 1):
        if generators:
            out[q] = reduced_cohomology_group(K, q)
        else:
            out[q] = AbelianGroup(*reduced_cohomology_ranks(K, q))
    return out


def reduced_cohomology_ranks(K: SimplicialComplex, q: int) -> tuple[int, tuple[int, ...]]:
    n = len(K.faces(q))
    if n == 0:
        return 0, ()
    d_in = coboundary_matrix(K, q - 1) if q >= 0 else None
    in_dim = len(K.faces(q - 1)) if q >= 0 else 0
    return linalg.cohomology_invariants(d_in, coboundary_matrix(K, q), n, in_dim)


def cohomology_class_coordinates(c: Cochain) -> tuple[list[int], list[int]]:
    """Coordinates of ``[c]`` relative to the generators of :func:`reduced_cohomology_group`."""
    return _cochain_cohomology(c.complex, c.degree).coordinates(c.vector())
