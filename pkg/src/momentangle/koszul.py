"""The multigraded dg-algebra R*(K) = Lambda[u] (x) Z[K] / (v_i^2 = u_i v_i = 0).

Additive basis: monomials ``u_J v_I`` with ``I`` a simplex of K and
``I, J`` disjoint, written as the ordered product ``u_{j1} ... u_{jk} v_I``.
``u_i`` has degree 1 (odd), ``v_i`` degree 2 (even); ``d u_i = v_i``.

Multidegree of ``u_J v_I`` is ``(-|J|; 2(J + I))``. We store the exterior
count ``p = |J|`` (nonnegative) and the support ``J + I``; the bidegree
``(-p, 2|support|)`` is derived. The strand of multidegree ``(p, S)`` is
isomorphic to ``C^{|S|-p-1}(K_S)``, see :func:`cochain_to_r`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple, Optional

from . import linalg
from .errors import ValidationError
from .simplicial import AbelianGroup, Cochain, SimplicialComplex, Simplex


class RMonomial(NamedTuple):
    u: tuple[int, ...]
    v: tuple[int, ...]

    @property
    def total_degree(self) -> int:
        return len(self.u) + 2 * len(self.v)

    @property
    def multidegree(self) -> "Multidegree":
        return Multidegree(len(self.u), tuple(sorted(self.u + self.v)))

    def sort_key(self):
        return (self.total_degree, self.u, self.v)

    def __str__(self) -> str:
        s = ""
        if self.u:
            s += "u{" + ",".join(map(str, self.u)) + "}"
        if self.v:
            s += "v{" + ",".join(map(str, self.v)) + "}"
        return s or "1"


@dataclass(frozen=True, order=True)
class Multidegree:
    """Exterior count ``p`` and support ``S``; bigraded form ``(-p; 2S)``."""

    p: int
    support: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "support", tuple(sorted(self.support)))
        if not 0 <= self.p <= len(self.support):
            raise ValidationError(f"exterior degree {self.p} out of range for support {self.support}")

    @property
    def total_degree(self) -> int:
        return 2 * len(self.support) - self.p

    @property
    def bidegree(self) -> tuple[int, int]:
        return (-self.p, 2 * len(self.support))

    @property
    def simplicial_degree(self) -> int:
        """The degree q with ``H^{-p,2S}(Z_K) = H~^q(K_S)``."""
        return len(self.support) - self.p - 1

    def __add__(self, other: "Multidegree") -> "Multidegree":
        if set(self.support) & set(other.support):
            raise ValueError("supports overlap; the product vanishes")
        return Multidegree(self.p + other.p, self.support + other.support)

    def __sub__(self, other: "Multidegree") -> Optional["Multidegree"]:
        """The multidegree ``x`` with ``other + x == self``, or None."""
        if not set(other.support) <= set(self.support) or other.p > self.p:
            return None
        rest = tuple(sorted(set(self.support) - set(other.support)))
        p = self.p - other.p
        return Multidegree(p, rest) if p <= len(rest) else None

    @classmethod
    def of_simplicial(cls, support: Iterable[int], q: int) -> "Multidegree":
        s = tuple(sorted(support))
        return cls(len(s) - q - 1, s)

    def __str__(self) -> str:
        return f"(-{self.p}; 2{{{','.join(map(str, self.support))}}})"


def _merge_sign(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    """Sign of sorting the concatenation ``a + b`` of two sorted tuples."""
    inv = 0
    j = 0
    for x in a:
        while j < len(b) and b[j] < x:
            j += 1
        inv += j
    return -1 if inv % 2 else 1


def monomial_product(K: SimplicialComplex, x: RMonomial, y: RMonomial) -> tuple[int, Optional[RMonomial]]:
    """``x * y = sign * monomial``; returns (0, None) when the product vanishes."""
    sx = set(x.u) | set(x.v)
    if any(i in sx for i in y.u) or any(i in sx for i in y.v):
        return 0, None
    v = tuple(sorted(x.v + y.v))
    if v not in K.simplices:
        return 0, None
    # u_J v_I u_J' v_I' = u_J u_J' v_I v_I'  (v even)
    return _merge_sign(x.u, y.u), RMonomial(tuple(sorted(x.u + y.u)), v)


def monomial_differential(K: SimplicialComplex, x: RMonomial) -> list[tuple[int, RMonomial]]:
    out = []
    for t, j in enumerate(x.u):
        v = tuple(sorted(x.v + (j,)))
        if v in K.simplices:
            out.append((-1 if t % 2 else 1, RMonomial(x.u[:t] + x.u[t + 1:], v)))
    return out


class RElement:
    """An integer combination of basis monomials of R*(K)."""

    __slots__ = ("complex", "terms")

    def __init__(self, K: SimplicialComplex, terms: Optional[Mapping] = None):
        self.complex = K
        clean: dict[RMonomial, int] = {}
        for mono, c in (terms or {}).items():
            if not c:
                continue
            mono = mono if isinstance(mono, RMonomial) else RMonomial(*mono)
            if set(mono.u) & set(mono.v) or mono.v not in K.simplices:
                raise ValidationError(f"{mono} is not a basis monomial of R*(K)")
            clean[mono] = clean.get(mono, 0) + c
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def monomial(cls, K: SimplicialComplex, u: Iterable[int] = (), v: Iterable[int] = (), c: int = 1) -> "RElement":
        return cls(K, {RMonomial(tuple(sorted(u)), tuple(sorted(v))): c})

    @classmethod
    def zero(cls, K: SimplicialComplex) -> "RElement":
        return cls(K)

    def _same(self, other: "RElement") -> None:
        if other.complex is not self.complex and other.complex != self.complex:
            raise ValidationError("elements of R*(K) for different complexes")

    def __add__(self, other: "RElement") -> "RElement":
        self._same(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return RElement(self.complex, out)

    def __neg__(self) -> "RElement":
        return RElement(self.complex, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "RElement") -> "RElement":
        return self + (-other)

    def __rmul__(self, k: int) -> "RElement":
        return RElement(self.complex, {m: k * c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return other * self
        return multiply(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RElement):
            return NotImplemented
        return self.complex == other.complex and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def d(self) -> "RElement":
        return differential(self)

    def sorted_terms(self) -> list[tuple[RMonomial, int]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    @property
    def multidegrees(self) -> set[Multidegree]:
        return {m.multidegree for m in self.terms}

    @property
    def multidegree(self) -> Multidegree:
        mds = self.multidegrees
        if len(mds) != 1:
            raise ValidationError(f"element is not multihomogeneous ({len(mds)} multidegrees)")
        return next(iter(mds))

    @property
    def total_degree(self) -> Optional[int]:
        degs = {m.total_degree for m in self.terms}
        if len(degs) > 1:
            raise ValidationError("element is not homogeneous")
        return degs.pop() if degs else None

    def components(self) -> dict[Multidegree, "RElement"]:
        """Split into multihomogeneous parts."""
        parts: dict[Multidegree, dict] = {}
        for m, c in self.terms.items():
            parts.setdefault(m.multidegree, {})[m] = c
        return {md: RElement(self.complex, t) for md, t in parts.items()}

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"RElement({render(self)})"


def render(x: RElement) -> str:
    """Deterministic text form, e.g. ``u{1,3}v{2} - 2u{4}``."""
    if not x.terms:
        return "0"
    out = ""
    for i, (mono, c) in enumerate(x.sorted_terms()):
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 else str(abs(c))
        if not mono.u and not mono.v:
            mono, mag = "", str(abs(c))  # constants print as plain integers
        if i == 0:
            out += ("-" if c < 0 else "") + mag + str(mono)
        else:
            out += f" {sign} {mag}{mono}"
    return out


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*((?:u\{[\d,\s]*\})?(?:v\{[\d,\s]*\})?)")


def parse(K: SimplicialComplex, text: str) -> RElement:
    """Inverse of :func:`render`."""
    text = text.strip()
    if text == "0":
        return RElement(K)
    terms: dict[RMonomial, int] = {}
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValidationError(f"cannot parse R*(K) element at position {pos}: {text[pos:pos + 12]!r}")
        sign, mag, body = m.groups()
        if not body and not mag:
            raise ValidationError(f"missing monomial at position {pos}")
        c = int(mag) if mag else 1
        if sign == "-":
            c = -c
        u = v = ()
        for part, inner in re.findall(r"([uv])\{([\d,\s]*)\}", body):
            vals = tuple(sorted(int(t) for t in inner.split(",") if t.strip()))
            if part == "u":
                u = vals
            else:
                v = vals
        mono = RMonomial(u, v)
        terms[mono] = terms.get(mono, 0) + c
        pos = m.end()
        while pos < len(text) and text[pos] == " ":
            pos += 1
    return RElement(K, terms)


def multiply(x: RElement, y: RElement) -> RElement:
    x._same(y)
    K = x.complex
    out: dict[RMonomial, int] = {}
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            s, mono = monomial_product(K, a, b)
            if s:
                out[mono] = out.get(mono, 0) + s * ca * cb
    return RElement(K, out)


def differential(x: RElement) -> RElement:
    K = x.complex
    out: dict[RMonomial, int] = {}
    for a, c in x.terms.items():
        for s, mono in monomial_differential(K, a):
            out[mono] = out.get(mono, 0) + s * c
    return RElement(K, out)


def r_basis(K: SimplicialComplex, md: Multidegree) -> list[RMonomial]:
    """Basis ``u_{S-L} v_L`` of the strand, ``L`` running over simplices of
    ``K_S`` of size ``|S| - p`` in lexicographic order."""
    S = md.support
    size = len(S) - md.p
    Sset = set(S)
    out = []
    for L in K.faces(size - 1):
        if Sset.issuperset(L):
            out.append(RMonomial(tuple(x for x in S if x not in L), L))
    return out


def element_from_vector(K: SimplicialComplex, basis: list[RMonomial], vec) -> RElement:
    return RElement(K, {b: c for b, c in zip(basis, vec) if c})


def element_to_vector(x: RElement, basis: list[RMonomial]) -> list[int]:
    index = {b: i for i, b in enumerate(basis)}
    vec = [0] * len(basis)
    for mono, c in x.terms.items():
        try:
            vec[index[mono]] = c
        except KeyError:
            raise ValidationError(f"{mono} is not in the given strand") from None
    return vec


def strand_differential_matrix(K: SimplicialComplex, md: Multidegree) -> linalg.Matrix:
    """Matrix of ``d`` from strand ``(p, S)`` to ``(p - 1, S)``."""
    src = r_basis(K, md)
    if md.p == 0:
        return []
    tgt = r_basis(K, Multidegree(md.p - 1, md.support))
    index = {b: i for i, b in enumerate(tgt)}
    mat = linalg.zeros(len(tgt), len(src))
    for j, mono in enumerate(src):
        for s, t in monomial_differential(K, mono):
            mat[index[t]][j] += s
    return mat


@dataclass
class Strand:
    """Cohomology data of one multidegree strand of (R*(K), d)."""

    complex: SimplicialComplex
    md: Multidegree
    basis: list[RMonomial]
    data: linalg.CohomologyData

    @property
    def group(self) -> AbelianGroup:
        gens = tuple(element_from_vector(self.complex, self.basis, g) for g in self.data.generators)
        return AbelianGroup(self.data.free_rank, self.data.torsion, gens)

    @property
    def is_zero(self) -> bool:
        return self.data.is_zero

    def coordinates(self, x: RElement) -> tuple[list[int], list[int]]:
        """(free, torsion) coordinates of ``[x]`` for a cocycle ``x`` of this strand."""
        if x.is_zero():
            return [0] * self.data.free_rank, [0] * len(self.data.torsion)
        if x.multidegree != self.md:
            raise ValidationError(f"element of multidegree {x.multidegree} in strand {self.md}")
        return self.data.coordinates(element_to_vector(x, self.basis))

    def flat_coordinates(self, x: RElement) -> list[int]:
        free, tors = self.coordinates(x)
        return free + tors

    def is_coboundary(self, x: RElement) -> bool:
        return not any(self.flat_coordinates(x))

    def lift(self, y: RElement) -> Optional[RElement]:
        """Some ``x`` in strand ``(p - 1, S)`` with ``d x = y``, for ``y`` in this strand."""
        return lift_in_strand(self.complex, y, self.md)


@lru_cache(maxsize=4096)
def strand(K: SimplicialComplex, md: Multidegree) -> Strand:
    basis = r_basis(K, md)
    below = Multidegree(md.p + 1, md.support) if md.p + 1 <= len(md.support) else None
    d_in = strand_differential_matrix(K, below) if below else None
    in_dim = len(r_basis(K, below)) if below else 0
    d_out = strand_differential_matrix(K, md) if md.p > 0 else None
    data = linalg.cohomology(d_in, d_out, len(basis), in_dim)
    return Strand(K, md, basis, data)


def cohomology_of_R(K: SimplicialComplex, md: Multidegree) -> AbelianGroup:
    """``H^{-p,2S}(R*(K))`` computed directly on the strand."""
    return strand(K, md).group


def lift_in_strand(K: SimplicialComplex, y: RElement, md: Optional[Multidegree] = None) -> Optional[RElement]:
    if y.is_zero():
        return RElement(K)
    md = md or y.multidegree
    if md.p + 1 > len(md.support):
        return None
    src_md = Multidegree(md.p + 1, md.support)
    src = r_basis(K, src_md)
    tgt = r_basis(K, md)
    x = linalg.solve_integer(strand_differential_matrix(K, src_md), element_to_vector(y, tgt), len(src))
    return None if x is None else element_from_vector(K, src, x)


def solve_d(y: RElement) -> Optional[RElement]:
    """An ``x`` with ``d x == y`` (strand by strand), or None if ``y`` is not exact."""
    K = y.complex
    total = RElement(K)
    for md, part in y.components().items():
        x = lift_in_strand(K, part, md)
        if x is None:
            return None
        total = total + x
    return total


# --- translation to simplicial cochains of full subcomplexes -----------------


def epsilon(L: Simplex, J: Iterable[int]) -> int:
    """Sign in ``chi_L -> epsilon(L, J) u_{J-L} v_L``.

    ``(-1)^(|L|(|L|-1)/2)`` times ``(-1)`` to the number of pairs ``j < l``
    with ``l`` in ``L`` and ``j`` in ``J - L``. With the coboundary convention
    of :mod:`simplicial` this makes the translation a cochain map.
    """
    Lset = set(L)
    rest = [j for j in J if j not in Lset]
    inv = sum(1 for l in L for j in rest if j < l)
    k = len(L)
    inv += k * (k - 1) // 2
    return -1 if inv % 2 else 1


def cochain_to_r(K: SimplicialComplex, c: Cochain) -> RElement:
    """Image of a cochain on ``K_J`` (``J = c.complex.vertices``) in R*(K)."""
    J = c.complex.vertices
    Jset = set(J)
    terms = {}
    for L, coef in c.coefficients.items():
        if L not in K.simplices or not Jset.issuperset(L):
            raise ValidationError(f"simplex {L} is not in K_J")
        terms[RMonomial(tuple(j for j in J if j not in L), L)] = epsilon(L, J) * coef
    return RElement(K, terms)


def r_to_cochain(x: RElement, md: Optional[Multidegree] = None) -> Cochain:
    """Inverse of :func:`cochain_to_r` on the strand ``md``."""
    K = x.complex
    if md is None:
        md = x.multidegree
    elif not x.is_zero() and x.multidegree != md:
        raise ValidationError(f"element is not of multidegree {md}")
    KJ = K.full_subcomplex(md.support)
    coeffs = {mono.v: epsilon(mono.v, md.support) * c for mono, c in x.terms.items()}
    return Cochain(KJ, md.simplicial_degree, coeffs)
