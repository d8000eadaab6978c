"""Built-in polytopes and complexes, addressable by name.

The dodecahedron labelling is fixed so that the configuration search started
at facet 1 and its lowest vertex {1, 2, 3} assigns role F_i to facet i for
i = 1..9, which gives J1 = {5, 6, 7}, J2 = {2, 9}, J3 = {3, 4}.
"""
from __future__ import annotations

from .errors import ValidationError
from .polytope import SimplePolytope3
from .simplicial import SimplicialComplex, build_complex

DODECAHEDRON = (
    (2, 3, 6, 7, 4), (1, 4, 8, 5, 3), (1, 2, 5, 9, 6), (1, 7, 11, 8, 2),
    (2, 8, 10, 9, 3), (1, 3, 9, 12, 7), (1, 6, 12, 11, 4), (2, 4, 11, 10, 5),
    (3, 5, 10, 12, 6), (5, 8, 11, 12, 9), (4, 7, 12, 10, 8), (6, 9, 10, 11, 7),
)

TETRAHEDRON = ((2, 3, 4), (1, 4, 3), (1, 2, 4), (1, 3, 2))


def prism_cycles(k: int) -> tuple[tuple[int, ...], ...]:
    """Prism over a k-gon: side facets 1..k, bottom k+1, top k+2."""
    bottom, top = k + 1, k + 2
    sides = []
    for i in range(1, k + 1):
        prev = (i - 2) % k + 1
        nxt = i % k + 1
        sides.append((prev, bottom, nxt, top))
    return tuple(sides) + (tuple(range(1, k + 1)), tuple(range(k, 0, -1)))


POLYTOPES = {
    "tetrahedron": TETRAHEDRON,
    "triangular-prism": prism_cycles(3),
    "cube": prism_cycles(4),
    "pentagonal-prism": prism_cycles(5),
    "dodecahedron": DODECAHEDRON,
}


def _cycle_edges(n: int) -> list[tuple[int, int]]:
    return [(i, i % n + 1) for i in range(1, n + 1)]


COMPLEXES = {
    "pentagon": (5, _cycle_edges(5)),
    "two-points": (2, []),
    "k6": (6, [(a, b, c) for a in range(1, 7) for b in range(a + 1, 7) for c in range(b + 1, 7)]),
}


def polytope(name: str) -> SimplePolytope3:
    try:
        cycles = POLYTOPES[name]
    except KeyError:
        raise ValidationError(f"unknown polytope {name!r}; built-ins: {sorted(POLYTOPES)}") from None
    return SimplePolytope3(cycles, name=name)


def complex_(name: str) -> SimplicialComplex:
    if name == "icosahedron":
        from .polytope import dual_complex

        return dual_complex(polytope("dodecahedron"))
    if name.startswith("figure1-g"):
        from .obstructions import obstruction_graphs

        gid = int(name.removeprefix("figure1-g"))
        for g in obstruction_graphs():
            if g.id == gid:
                return g.as_complex()
    try:
        m, simplices = COMPLEXES[name]
    except KeyError:
        raise ValidationError(f"unknown complex {name!r}; built-ins: {sorted(COMPLEXES)}") from None
    return build_complex(simplices, m)


def names() -> dict[str, list[str]]:
    return {
        "polytopes": sorted(POLYTOPES),
        "complexes": sorted(COMPLEXES) + ["icosahedron"] + [f"figure1-g{i}" for i in range(1, 6)],
    }
