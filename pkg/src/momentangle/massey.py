"""Triple Massey products in R*(K), decided exactly over the integers.

Convention: ``d a12 = a1 a2``, ``d a23 = a2 a3`` and
``b = (-1)^(k1+1) a1 a23 + a12 a3``. The product is the coset
``[b] + a1 H^(k2+k3-1) + a3 H^(k1+k2-1)``; it is trivial when the coset
contains zero.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Iterable, Optional

from . import koszul, linalg
from .errors import InternalConsistencyError, NotDefinedError, ValidationError
from .koszul import Multidegree, RElement, solve_d, strand
from .simplicial import Cochain, SimplicialComplex

FULL_STRAND_LIMIT = 20000


@dataclass(frozen=True, eq=False)
class CohomologyClass:
    """A class given by a multihomogeneous cocycle of R*(K)."""

    representative: RElement
    degree: Optional[int] = None
    label: str = ""

    def __post_init__(self):
        rep = self.representative
        if not rep.d().is_zero():
            raise ValidationError(f"representative {self.label or rep} is not a cocycle")
        if rep.is_zero():
            if self.degree is None:
                raise ValidationError("the zero class needs an explicit degree")
        else:
            rep.multidegree  # raises unless multihomogeneous
            if self.degree is not None and self.degree != rep.total_degree:
                raise ValidationError(f"declared degree {self.degree} != {rep.total_degree}")
            object.__setattr__(self, "degree", rep.total_degree)

    @property
    def complex(self) -> SimplicialComplex:
        return self.representative.complex

    @property
    def multidegree(self) -> Optional[Multidegree]:
        return None if self.representative.is_zero() else self.representative.multidegree

    @property
    def support(self) -> tuple[int, ...]:
        md = self.multidegree
        return md.support if md else ()

    @classmethod
    def from_cochain(cls, K: SimplicialComplex, c: Cochain, label: str = "") -> "CohomologyClass":
        """The class of a simplicial cocycle on a full subcomplex ``K_J``."""
        md = Multidegree.of_simplicial(c.complex.vertices, c.degree)
        return cls(koszul.cochain_to_r(K, c), md.total_degree, label)

    def is_zero(self) -> bool:
        md = self.multidegree
        return md is None or strand(self.complex, md).is_coboundary(self.representative)


@dataclass
class Definedness:
    defined: bool
    a12: Optional[RElement] = None
    a23: Optional[RElement] = None
    obstruction: Optional[tuple[str, RElement]] = None

    def __bool__(self) -> bool:
        return self.defined


def is_defined(c1: CohomologyClass, c2: CohomologyClass, c3: CohomologyClass) -> Definedness:
    """Solve ``d a12 = a1 a2`` and ``d a23 = a2 a3`` over the integers."""
    a1, a2, a3 = c1.representative, c2.representative, c3.representative
    p12, p23 = a1 * a2, a2 * a3
    a12 = solve_d(p12)
    if a12 is None:
        return Definedness(False, obstruction=("a1*a2", p12))
    a23 = solve_d(p23)
    if a23 is None:
        return Definedness(False, a12=a12, obstruction=("a2*a3", p23))
    return Definedness(True, a12, a23)


@dataclass(frozen=True)
class IndeterminacyGenerator:
    """``factor * cofactor`` (side 1) or ``cofactor`` times ``a3`` (side 3)."""

    side: int
    cofactor: RElement
    product: RElement

    @property
    def target(self) -> Multidegree:
        return self.product.multidegree


@dataclass
class MasseyResult:
    classes: tuple[CohomologyClass, CohomologyClass, CohomologyClass]
    a12: RElement
    a23: RElement
    representative: RElement
    indeterminacy: list[IndeterminacyGenerator]
    mode: str
    trivial: bool
    witness: Optional[list[int]] = None
    strands_scanned: int = 0
    defined: bool = True

    @property
    def degrees(self) -> tuple[int, int, int]:
        return tuple(c.degree for c in self.classes)

    @property
    def degree(self) -> int:
        k1, k2, k3 = self.degrees
        return k1 + k2 + k3 - 1

    @property
    def complex(self) -> SimplicialComplex:
        return self.representative.complex

    @property
    def target_multidegree(self) -> Optional[Multidegree]:
        """Multidegree of b: supports add up, the exterior count is one more
        than the sum (b has degree k1 + k2 + k3 - 1). None if it must vanish."""
        mds = [c.multidegree for c in self.classes]
        if any(md is None for md in mds):
            return None
        try:
            s = mds[0] + mds[1] + mds[2]
        except ValueError:
            return None
        return Multidegree(s.p + 1, s.support) if s.p < len(s.support) else None


def _cofactor_strands(K: SimplicialComplex, factor: CohomologyClass, degree: int,
                      target: Optional[Multidegree], mode: str) -> list[Multidegree]:
    fmd = factor.multidegree
    if fmd is None:
        return []
    if mode == "multigraded":
        if target is None:
            return []
        md = target - fmd
        return [md] if md is not None and md.total_degree == degree else []
    rest = [v for v in K.vertices if v not in set(fmd.support)]
    out = []
    for size in range((degree + 1) // 2, min(degree, len(rest)) + 1):
        p = 2 * size - degree
        for S in combinations(rest, size):
            out.append(Multidegree(p, S))
    return out


def _count_full_strands(K: SimplicialComplex, classes, degrees) -> int:
    from math import comb

    total = 0
    for c, k in zip(classes, degrees):
        if c.multidegree is None:
            continue
        n = len(K.vertices) - len(c.support)
        total += sum(comb(n, s) for s in range((k + 1) // 2, min(k, n) + 1))
    return total


def _strand_is_zero(K: SimplicialComplex, md: Multidegree) -> bool:
    # K_S a cone => every reduced group vanishes, so the strand is acyclic
    from .hochster import _is_cone

    return _is_cone(K.full_subcomplex(md.support)) or strand(K, md).is_zero


def decide_membership(target: RElement, generators: list[IndeterminacyGenerator]) -> Optional[list[int]]:
    """Integer coefficients c with ``[target] + sum c_j [product_j] == 0``, or None.

    Works in the direct sum of the cohomology groups of every strand touched,
    torsion included.
    """
    K = target.complex
    strands: dict[Multidegree, None] = {}
    for md in target.components():
        strands[md] = None
    for g in generators:
        for md in g.product.components():
            strands[md] = None
    layout = []
    for md in sorted(strands):
        data = strand(K, md).data
        layout.append((md, data.free_rank, data.torsion))

    def flat(x: RElement) -> tuple[list[int], list[int]]:
        comps = x.components()
        free, tors = [], []
        for md, fr, t in layout:
            if md in comps:
                f, tr = strand(K, md).coordinates(comps[md])
            else:
                f, tr = [0] * fr, [0] * len(t)
            free += f
            tors += tr
        return free, tors

    moduli = [t for _, _, ts in layout for t in ts]
    f, t = flat(target)
    goal = [-x for x in f + t]
    vecs = [sum(flat(g.product), []) for g in generators]
    if not any(goal):
        return [0] * len(generators)
    return linalg.lattice_membership(goal, vecs, moduli)


def triple_massey(c1: CohomologyClass, c2: CohomologyClass, c3: CohomologyClass, *,
                  indeterminacy: str = "auto",
                  lifts: Optional[tuple[RElement, RElement]] = None) -> MasseyResult:
    """Representative, indeterminacy generators and exact triviality verdict.

    ``indeterminacy`` is ``"full"`` (every cofactor strand whose support misses
    the factor's support), ``"multigraded"`` (only the strands that can hit the
    multidegree of b) or ``"auto"`` (full unless that means more than
    FULL_STRAND_LIMIT strands).
    """
    K = c1.complex
    if lifts is None:
        dfn = is_defined(c1, c2, c3)
        if not dfn:
            raise NotDefinedError(f"Massey product not defined: {dfn.obstruction[0]} is not exact")
        a12, a23 = dfn.a12, dfn.a23
    else:
        a12, a23 = lifts
    a1, a2, a3 = c1.representative, c2.representative, c3.representative
    if (a12.d() != a1 * a2) or (a23.d() != a2 * a3):
        raise ValidationError("supplied lifts do not satisfy d a12 = a1 a2, d a23 = a2 a3")
    k1, k2, k3 = c1.degree, c2.degree, c3.degree
    sign = 1 if (k1 + 1) % 2 == 0 else -1
    b = sign * (a1 * a23) + a12 * a3
    if not b.d().is_zero():
        raise InternalConsistencyError("Massey representative is not a cocycle")
    if not b.is_zero() and b.total_degree != k1 + k2 + k3 - 1:
        raise InternalConsistencyError(f"representative has degree {b.total_degree}, expected {k1 + k2 + k3 - 1}")

    if indeterminacy == "auto":
        n = _count_full_strands(K, (c1, c3), (k2 + k3 - 1, k1 + k2 - 1))
        indeterminacy = "full" if n <= FULL_STRAND_LIMIT else "multigraded"
    if indeterminacy not in ("full", "multigraded"):
        raise ValueError(f"unknown indeterminacy mode {indeterminacy!r}")

    result = MasseyResult((c1, c2, c3), a12, a23, b, [], indeterminacy, False)
    target = result.target_multidegree
    gens: list[IndeterminacyGenerator] = []
    scanned = 0
    for side, factor, degree in ((1, c1, k2 + k3 - 1), (3, c3, k1 + k2 - 1)):
        for md in _cofactor_strands(K, factor, degree, target, indeterminacy):
            scanned += 1
            if _strand_is_zero(K, md):
                continue
            for g in strand(K, md).group.generators:
                prod = factor.representative * g if side == 1 else g * factor.representative
                if not prod.is_zero():
                    gens.append(IndeterminacyGenerator(side, g, prod))
    result.indeterminacy = gens
    result.strands_scanned = scanned
    witness = decide_membership(b, gens)
    result.trivial = witness is not None
    result.witness = witness
    return result


def restrict_indeterminacy_by_multidegree(result: MasseyResult) -> MasseyResult:
    """Keep only generators landing in the multidegree of b; the verdict must not change."""
    target = result.target_multidegree
    if target is None:
        kept = []
    else:
        kept = [g for g in result.indeterminacy if g.target == target]
    witness = decide_membership(result.representative, kept)
    pruned = replace(result, indeterminacy=kept, trivial=witness is not None, witness=witness,
                     mode=result.mode + "+pruned")
    if pruned.trivial != result.trivial:
        raise InternalConsistencyError("pruning by multidegree changed the triviality verdict")
    return pruned


def in_indeterminacy(result: MasseyResult, x: RElement) -> bool:
    """Whether the class of the cocycle ``x`` lies in the indeterminacy subgroup."""
    if not x.d().is_zero():
        raise ValidationError("not a cocycle")
    return decide_membership(x, result.indeterminacy) is not None
