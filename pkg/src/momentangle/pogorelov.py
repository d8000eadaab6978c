"""Nontrivial triple Massey products for moment-angle manifolds of Pogorelov polytopes.

Pipeline: find a pentagon F1 and a vertex on it, label the surrounding facets
F1 .. F_{l+n-1}, build classes alpha, beta, gamma on the full subcomplexes
J1 = {F5, F6, F7}, J2 = {F2} + G3, J3 = {F3, F4}, compute the Massey product
and certify that it is nontrivial. Certificates are plain JSON and can be
rechecked by :func:`verify_certificate` without the search code.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import __version__, koszul
from .errors import InternalConsistencyError, ValidationError
from .koszul import Multidegree, RElement, strand
from .massey import CohomologyClass, MasseyResult, decide_membership, restrict_indeterminacy_by_multidegree, triple_massey
from .polytope import Belt, SimplePolytope3, belt_around_pair, dual_complex, is_belt, p_vector, require_pogorelov
from .simplicial import SimplicialComplex, chi, reduced_cohomology

CERTIFICATE_SCHEMA = "momentangle.massey-certificate/1"


@dataclass(frozen=True)
class Configuration:
    """Facets ``F[1] .. F[l+n-1]`` (``roles[i-1]`` is the facet playing F_i)."""

    roles: tuple[int, ...]
    l: int
    n: int
    vertex: tuple[int, int, int]

    def F(self, i: int) -> int:
        return self.roles[i - 1]

    @property
    def G2(self) -> tuple[int, ...]:
        return self.roles[7:self.l + 3]

    @property
    def G3(self) -> tuple[int, ...]:
        return self.roles[self.l + 3:self.l + self.n - 1]

    @property
    def belt(self) -> Belt:
        F = self.F
        return Belt((F(4),) + self.G2 + (F(5),) + self.G3 + (F(6), F(7)))

    @property
    def facet_labels(self) -> dict[str, int]:
        return {f"F{i}": f for i, f in enumerate(self.roles, start=1)}

    @property
    def J1(self) -> tuple[int, ...]:
        return tuple(sorted((self.F(5), self.F(6), self.F(7))))

    @property
    def J2(self) -> tuple[int, ...]:
        return tuple(sorted((self.F(2),) + self.G3))

    @property
    def J3(self) -> tuple[int, ...]:
        return tuple(sorted((self.F(3), self.F(4))))

    def to_json(self) -> dict:
        return {"roles": list(self.roles), "l": self.l, "n": self.n, "vertex": list(self.vertex),
                "belt": list(self.belt.facets)}

    @classmethod
    def from_json(cls, data: dict) -> "Configuration":
        return cls(tuple(data["roles"]), int(data["l"]), int(data["n"]), tuple(data["vertex"]))


def _path_between(P: SimplePolytope3, centre: int, start: int, end: int, avoid: int) -> list[int]:
    """Neighbours of ``centre`` strictly between ``start`` and ``end``, walking
    around its cycle in the direction that does not pass ``avoid``."""
    c = list(P.cycle(centre))
    k = len(c)
    i = c.index(start)
    for step in (1, -1):
        path = []
        j = (i + step) % k
        while c[j] != end:
            path.append(c[j])
            j = (j + step) % k
        if avoid not in path:
            return path
    raise InternalConsistencyError(f"cannot walk around F{centre} from F{start} to F{end}")


def _configuration_at(P: SimplePolytope3, f1: int, vertex: tuple[int, int, int]) -> Configuration:
    f2, f3 = sorted(x for x in vertex if x != f1)
    nb = P.neighbors

    def other(a: int, b: int, not_: int) -> int:
        common = (nb(a) & nb(b)) - {not_}
        if len(common) != 1:
            raise InternalConsistencyError(f"edge F{a}&F{b} does not have exactly two endpoints")
        return next(iter(common))

    f4 = other(f1, f2, f3)
    f5 = other(f2, f3, f1)
    f6 = other(f1, f3, f2)
    rest1 = nb(f1) - {f2, f3, f4, f6}
    if len(rest1) != 1:
        raise InternalConsistencyError(f"F{f1} is not a pentagon with the expected neighbours")
    f7 = next(iter(rest1))
    g2 = _path_between(P, f2, f4, f5, f1)
    g3 = _path_between(P, f3, f5, f6, f1)
    l, n = P.size(f2), P.size(f3)
    cfg = Configuration((f1, f2, f3, f4, f5, f6, f7) + tuple(g2) + tuple(g3), l, n, vertex)
    verify_configuration(P, cfg)
    return cfg


def verify_configuration(P: SimplePolytope3, cfg: Configuration) -> None:
    """Every adjacency and disjointness relation used by the construction."""
    F = cfg.F
    adj = P.adjacent
    problems = []
    roles = cfg.roles
    if len(set(roles)) != len(roles) or len(roles) != cfg.l + cfg.n - 1:
        problems.append("facets are not pairwise distinct")
    if P.size(F(1)) != 5:
        problems.append("F1 is not a pentagon")
    if (cfg.l, cfg.n) != (P.size(F(2)), P.size(F(3))) or min(cfg.l, cfg.n) < 5:
        problems.append("l, n do not match |F2|, |F3|")
    if len(cfg.G2) != cfg.l - 4 or len(cfg.G3) != cfg.n - 4:
        problems.append("wrong sizes of G2, G3")
    for a, b in ((2, 6), (3, 4), (1, 5)):
        if adj(F(a), F(b)):
            problems.append(f"F{a} meets F{b}")
    if set(cfg.G2) & set(cfg.G3):
        problems.append("G2 and G3 intersect")
    for g in cfg.G2:
        if adj(g, F(1)) or adj(g, F(3)) or not adj(g, F(2)) or adj(g, F(7)):
            problems.append(f"G2 facet {g} has wrong incidences")
    for g in cfg.G3:
        if adj(g, F(1)) or adj(g, F(2)) or not adj(g, F(3)) or adj(g, F(7)):
            problems.append(f"G3 facet {g} has wrong incidences")
    for gi in cfg.G2:
        for gj in cfg.G3:
            if adj(gi, gj):
                problems.append(f"G2 facet {gi} meets G3 facet {gj}")
    if cfg.G2 and not (adj(cfg.G2[0], F(4)) and adj(cfg.G2[-1], F(5))):
        problems.append("G2 is not ordered from F4 to F5")
    if cfg.G3 and not (adj(cfg.G3[0], F(5)) and adj(cfg.G3[-1], F(6))):
        problems.append("G3 is not ordered from F5 to F6")
    # the belts around F1, F2, F3 as cyclic sets
    around = {1: {F(2), F(3), F(6), F(7), F(4)},
              2: {F(1), F(3), F(5), F(4)} | set(cfg.G2),
              3: {F(1), F(2), F(5), F(6)} | set(cfg.G3)}
    for i, expected in around.items():
        if set(P.cycle(F(i))) != expected:
            problems.append(f"neighbours of F{i} do not match")
    belt = cfg.belt
    if belt.k != cfg.l + cfg.n - 4 or not is_belt(P, belt.facets):
        problems.append(f"{list(belt.facets)} is not an (l+n-4)-belt")
    if problems:
        raise InternalConsistencyError("configuration check failed: " + "; ".join(problems))


def find_configuration(P: SimplePolytope3, *, facet: Optional[int] = None,
                       vertex: Optional[tuple[int, int, int]] = None, check: bool = True) -> Configuration:
    """Deterministic configuration: lowest pentagon, then its lowest vertex."""
    if check:
        require_pogorelov(P)
        p_vector(P, pogorelov=True)
    if facet is None:
        facet = min(i for i in range(1, P.m + 1) if P.size(i) == 5)
    if vertex is None:
        vertex = P.facet_vertices(facet)[0]
    return _configuration_at(P, facet, tuple(sorted(vertex)))


def all_configurations(P: SimplePolytope3) -> list[Configuration]:
    """One configuration per (pentagonal facet, vertex of it)."""
    require_pogorelov(P)
    return [find_configuration(P, facet=i, vertex=v, check=False)
            for i in range(1, P.m + 1) if P.size(i) == 5
            for v in P.facet_vertices(i)]


def build_classes(P: SimplePolytope3, cfg: Configuration, K: Optional[SimplicialComplex] = None):
    """alpha in H~0(K_J1) (degree 4), beta in H~0(K_J2) (degree n-2), gamma in H~0(K_J3) (degree 3)."""
    K = K or dual_complex(P)
    F = cfg.F
    KJ1, KJ2, KJ3 = (K.full_subcomplex(J) for J in (cfg.J1, cfg.J2, cfg.J3))
    alpha = CohomologyClass.from_cochain(K, chi(KJ1, [F(6)]) + chi(KJ1, [F(7)]), "alpha")
    beta = CohomologyClass.from_cochain(K, chi(KJ2, [F(2)]), "beta")
    gamma = CohomologyClass.from_cochain(K, chi(KJ3, [F(4)]), "gamma")
    expected = (4, cfg.n - 2, 3)
    got = (alpha.degree, beta.degree, gamma.degree)
    if got != expected:
        raise InternalConsistencyError(f"class degrees {got}, expected {expected}")
    return alpha, beta, gamma


@dataclass
class MasseyCertificate:
    polytope: SimplePolytope3
    configuration: Configuration
    result: MasseyResult
    pruned: MasseyResult
    generator_coordinate: int
    sign_vs_chi47: int
    checks: dict = field(default_factory=dict)

    @property
    def nontrivial(self) -> bool:
        return not self.result.trivial

    @property
    def degree(self) -> int:
        return self.result.degree

    def to_json(self) -> dict:
        return certificate_to_json(self)


def certify(P: SimplePolytope3, cfg: Optional[Configuration] = None, *,
            indeterminacy: str = "auto") -> MasseyCertificate:
    """Run the whole construction and assert the product is nontrivial."""
    require_pogorelov(P)
    cfg = cfg or find_configuration(P, check=False)
    K = dual_complex(P)
    alpha, beta, gamma = build_classes(P, cfg, K)
    result = triple_massey(alpha, beta, gamma, indeterminacy=indeterminacy)
    pruned = restrict_indeterminacy_by_multidegree(result)
    checks = {}

    J_all = tuple(sorted(set(cfg.J1) | set(cfg.J2) | set(cfg.J3)))
    target = result.target_multidegree
    if result.degree != cfg.n + 4 or target is None or target != Multidegree.of_simplicial(J_all, 1):
        raise InternalConsistencyError(f"product lands in degree {result.degree} / {target}")
    checks["degree"] = result.degree

    for name, J in (("J1+J2", cfg.J1 + cfg.J2), ("J2+J3", cfg.J2 + cfg.J3)):
        groups = reduced_cohomology(K.full_subcomplex(J), generators=False)
        if any(not g.is_zero for g in groups.values()):
            raise InternalConsistencyError(f"K_{{{name}}} is not acyclic")
    checks["acyclic_pair_unions"] = True
    if pruned.indeterminacy:
        raise InternalConsistencyError("multidegree-pruned indeterminacy is not empty")
    checks["pruned_indeterminacy_empty"] = True

    st = strand(K, target)
    if st.data.free_rank != 1 or st.data.torsion:
        raise InternalConsistencyError(f"H~1(K_J) is {st.group}, expected Z")
    (coord,), _ = st.coordinates(result.representative)
    if abs(coord) != 1:
        raise InternalConsistencyError(f"[b] has coordinate {coord} on the generator of H~1 = Z")
    KJ = K.full_subcomplex(J_all)
    chi47 = koszul.cochain_to_r(K, chi(KJ, [cfg.F(4), cfg.F(7)]))
    (c47,), _ = st.coordinates(chi47)
    if abs(c47) != 1:
        raise InternalConsistencyError("chi_{4,7} does not generate H~1(K_J)")
    checks["representative_is_generator"] = True
    if result.trivial:
        raise InternalConsistencyError("the Massey product came out trivial")
    return MasseyCertificate(P, cfg, result, pruned, coord, coord * c47, checks)


# --- JSON -------------------------------------------------------------------


def polytope_digest(P: SimplePolytope3) -> str:
    blob = json.dumps(P.to_json(), sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def _strand_json(md: Optional[Multidegree]):
    return None if md is None else {"p": md.p, "support": list(md.support)}


def _result_json(r: MasseyResult) -> dict:
    return {
        "mode": r.mode,
        "classes": [{"label": c.label, "degree": c.degree, "multidegree": _strand_json(c.multidegree),
                     "representative": str(c.representative)} for c in r.classes],
        "a12": str(r.a12),
        "a23": str(r.a23),
        "representative": str(r.representative),
        "degree": r.degree,
        "multidegree": _strand_json(r.target_multidegree),
        "indeterminacy": [{"side": g.side, "cofactor": str(g.cofactor), "product": str(g.product),
                           "target": _strand_json(g.target)} for g in r.indeterminacy],
        "strands_scanned": r.strands_scanned,
        "trivial": r.trivial,
    }


def certificate_to_json(cert: MasseyCertificate) -> dict:
    cfg = cert.configuration
    r = cert.result
    return {
        "schema": CERTIFICATE_SCHEMA,
        "tool_version": __version__,
        "polytope": {"name": cert.polytope.name, "digest": polytope_digest(cert.polytope),
                     **cert.polytope.to_json()},
        "configuration": cfg.to_json(),
        "J1": list(cfg.J1), "J2": list(cfg.J2), "J3": list(cfg.J3),
        "degrees": {"alpha": r.degrees[0], "beta": r.degrees[1], "gamma": r.degrees[2], "product": r.degree},
        "result": _result_json(r),
        "pruned": _result_json(cert.pruned),
        "generator_coordinate": cert.generator_coordinate,
        "sign_vs_chi47": cert.sign_vs_chi47,
        "checks": cert.checks,
        "verdict": "nontrivial" if cert.nontrivial else "trivial",
    }


def verify_certificate(data: dict) -> dict:
    """Recheck a certificate from its own contents.

    Re-derives the dual complex from the embedded facet cycles, then checks the
    cocycle conditions, both lift equations, the formula for b, ``d b = 0``,
    that the stored cofactors span the relevant cohomology, and that ``[b]``
    is outside the indeterminacy. Raises :class:`InternalConsistencyError`.
    """
    if "certificate" in data and "schema" not in data:
        data = data["certificate"]
    if data.get("schema") != CERTIFICATE_SCHEMA:
        raise ValidationError(f"unknown certificate schema {data.get('schema')!r}")
    P = SimplePolytope3(tuple(tuple(c) for c in data["polytope"]["facet_cycles"]),
                        name=data["polytope"].get("name", ""))
    if polytope_digest(P) != data["polytope"]["digest"]:
        raise InternalConsistencyError("polytope digest mismatch")
    K = dual_complex(P)
    res = data["result"]
    parse = lambda s: koszul.parse(K, s)
    a = [parse(c["representative"]) for c in res["classes"]]
    degs = [c["degree"] for c in res["classes"]]
    a12, a23, b = parse(res["a12"]), parse(res["a23"]), parse(res["representative"])
    checks = {}

    def need(ok: bool, what: str):
        checks[what] = bool(ok)
        if not ok:
            raise InternalConsistencyError(f"certificate check failed: {what}")

    need(all(x.d().is_zero() for x in a), "inputs are cocycles")
    need(all(x.total_degree == k for x, k in zip(a, degs)), "input degrees")
    need(a12.d() == a[0] * a[1], "d a12 = a1 a2")
    need(a23.d() == a[1] * a[2], "d a23 = a2 a3")
    sign = 1 if (degs[0] + 1) % 2 == 0 else -1
    need(b == sign * (a[0] * a23) + a12 * a[2], "b = (-1)^(k1+1) a1 a23 + a12 a3")
    need(b.d().is_zero(), "d b = 0")
    need(b.total_degree == sum(degs) - 1 == data["degrees"]["product"], "product degree")

    # the cofactor strands that can reach b's multidegree, recomputed from scratch
    md_b = b.multidegree
    gens = []
    from .massey import IndeterminacyGenerator

    stored = {(g["side"], g["cofactor"]) for g in data["pruned"]["indeterminacy"]}
    for side, factor in ((1, a[0]), (3, a[2])):
        md = md_b - factor.multidegree
        if md is None:
            continue
        st = strand(K, md)
        for g in st.group.generators:
            prod = factor * g if side == 1 else g * factor
            if not prod.is_zero():
                gens.append(IndeterminacyGenerator(side, g, prod))
    need(all((g.side, str(g.cofactor)) in stored for g in gens) or not gens, "stored indeterminacy covers recomputed generators")
    need(decide_membership(b, gens) is None, "[b] is outside the indeterminacy")
    return checks
