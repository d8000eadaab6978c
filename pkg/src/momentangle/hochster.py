"""Cohomology of moment-angle complexes assembled from full subcomplexes.

``H^k(Z_K) = sum over J of H~^{k-|J|-1}(K_J)``; the summand for ``J`` and
simplicial degree ``q`` sits in total degree ``q + |J| + 1``.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional

from . import koszul
from .errors import InternalConsistencyError, PreconditionError
from .koszul import Multidegree
from .simplicial import (AbelianGroup, Cochain, SimplicialComplex, reduced_cohomology_group,
                         reduced_cohomology_ranks)

THREADS_ENV = "MOMENTANGLE_THREADS"
DEFAULT_MAX_M = 24


@dataclass(frozen=True)
class HochsterComponent:
    J: tuple[int, ...]
    q: int
    group: AbelianGroup

    @property
    def embedding_degree(self) -> int:
        return self.q + len(self.J) + 1

    @property
    def multidegree(self) -> Multidegree:
        return Multidegree.of_simplicial(self.J, self.q)


def hochster_component(K: SimplicialComplex, J: Iterable[int], q: int) -> HochsterComponent:
    """``H~^q(K_J)`` with generators as simplicial cocycles on ``K_J``."""
    J = tuple(sorted(set(J)))
    return HochsterComponent(J, q, reduced_cohomology_group(K.full_subcomplex(J), q))


@dataclass
class BettiTable:
    betti: dict[int, int] = field(default_factory=dict)
    torsion: dict[int, list[int]] = field(default_factory=dict)
    subsets_visited: int = 0
    cones_skipped: int = 0

    def __getitem__(self, k: int) -> int:
        return self.betti.get(k, 0)

    @property
    def top_degree(self) -> int:
        return max(self.betti) if self.betti else 0

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * b for k, b in self.betti.items())

    def to_json(self) -> dict:
        return {
            "betti": {str(k): b for k, b in sorted(self.betti.items())},
            "torsion": {str(k): t for k, t in sorted(self.torsion.items()) if t},
        }


def _is_cone(KJ: SimplicialComplex) -> bool:
    simp = KJ.simplices
    for v in KJ.vertices:
        if all(v in s or tuple(sorted(s + (v,))) in simp for s in simp):
            return True
    return False


def _subset_contributions(K: SimplicialComplex, subsets: list[tuple[int, ...]]):
    out = []
    cones = 0
    for J in subsets:
        KJ = K.full_subcomplex(J)
        if _is_cone(KJ):
            cones += 1
            continue
        for q in range(-1, KJ.dim + 1):
            rank, tors = reduced_cohomology_ranks(KJ, q)
            if rank or tors:
                out.append((q + len(J) + 1, rank, tors))
    return out, cones


def _chunks(items: list, n: int) -> list[list]:
    size = max(1, -(-len(items) // n))
    return [items[i:i + size] for i in range(0, len(items), size)]


def betti_numbers(K: SimplicialComplex, *, max_m: Optional[int] = None,
                  workers: Optional[int] = None) -> BettiTable:
    """Betti numbers and torsion of ``Z_K`` by summing over all vertex subsets."""
    max_m = DEFAULT_MAX_M if max_m is None else max_m
    n = len(K.vertices)
    if n > max_m:
        raise PreconditionError(f"{n} vertices exceed the subset-enumeration guard max_m={max_m}")
    if workers is None:
        workers = int(os.environ.get(THREADS_ENV, "1") or 1)
    subsets = [J for size in range(n + 1) for J in combinations(K.vertices, size)]
    table = BettiTable(subsets_visited=len(subsets))
    if workers > 1 and len(subsets) > 256:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_subset_contributions, [K] * workers, _chunks(subsets, workers)))
    else:
        parts = [_subset_contributions(K, subsets)]
    for contribs, cones in parts:
        table.cones_skipped += cones
        for k, rank, tors in contribs:
            if rank:
                table.betti[k] = table.betti.get(k, 0) + rank
            if tors:
                table.torsion.setdefault(k, []).extend(tors)
    table.betti.setdefault(0, 0)
    table.torsion = {k: sorted(v) for k, v in sorted(table.torsion.items())}
    table.betti = dict(sorted(table.betti.items()))
    return table


def manifold_checks(K: SimplicialComplex, betti: Optional[BettiTable] = None, **kwargs) -> dict:
    """Sanity checks for ``K = K_P``: ``Z_K`` is a 2-connected closed manifold
    of dimension ``m + n`` (n = dim K + 1), so its free Betti numbers are
    palindromic and its Euler characteristic vanishes in odd dimension."""
    betti = betti or betti_numbers(K, **kwargs)
    m = len(K.vertices)
    dim = m + K.dim + 1
    report = {"dimension": dim, "euler_characteristic": betti.euler_characteristic()}
    failures = []
    if betti[0] != 1:
        failures.append(f"b0 = {betti[0]}")
    if betti[1] or betti[2] or betti.torsion.get(1) or betti.torsion.get(2):
        failures.append("not 2-connected")
    report["two_connected"] = not failures
    asym = [k for k in range(dim + 1) if betti[k] != betti[dim - k]]
    if asym or max(betti.betti) > dim:
        failures.append(f"Poincare duality fails in degrees {asym}")
    report["poincare_duality"] = not asym
    if dim % 2 and report["euler_characteristic"] != 0:
        failures.append(f"Euler characteristic {report['euler_characteristic']} in odd dimension")
    report["euler_ok"] = not (dim % 2 and report["euler_characteristic"])
    if failures:
        raise InternalConsistencyError("manifold checks failed: " + "; ".join(failures))
    return report


def mu_product(K: SimplicialComplex, a: Cochain, b: Cochain) -> Cochain:
    """Product of cochains on ``K_I`` and ``K_J`` landing in ``K_{I+J}``,
    computed in R*(K) so the sign is the canonical one."""
    I, J = a.complex.vertices, b.complex.vertices
    if a.complex.m != K.m or b.complex.m != K.m:
        raise PreconditionError("factors live on different ambient complexes")
    union = tuple(sorted(set(I) | set(J)))
    target = K.full_subcomplex(union)
    degree = a.degree + b.degree + 1
    if set(I) & set(J):
        return Cochain(target, degree)
    md = Multidegree.of_simplicial(I, a.degree) + Multidegree.of_simplicial(J, b.degree)
    prod = koszul.multiply(koszul.cochain_to_r(K, a), koszul.cochain_to_r(K, b))
    return koszul.r_to_cochain(prod, md)
