"""Regenerate the polytope JSON fixtures in this directory.

    python tests/data/make_polytopes.py
"""
import json
from pathlib import Path

from momentangle import corpus
from momentangle.polytope import SimplePolytope3

HERE = Path(__file__).parent


def barrel(k: int) -> SimplePolytope3:
    """Two k-gons joined by two rings of k pentagons (k = 5: dodecahedron, k = 6: C24)."""
    top, bottom = 1, 2
    A = lambda i: 3 + (i % k)
    B = lambda i: 3 + k + (i % k)
    cycles = {top: [A(i) for i in range(k)], bottom: [B(i) for i in range(k)][::-1]}
    for i in range(k):
        cycles[A(i)] = [top, A(i + 1), B(i + 1), B(i), A(i - 1)]
        cycles[B(i)] = [bottom, B(i + 1), A(i), A(i - 1), B(i - 1)]
    return SimplePolytope3(tuple(tuple(cycles[j]) for j in range(1, 2 * k + 3)), name=f"barrel{k}")


def leapfrog(P: SimplePolytope3) -> SimplePolytope3:
    """Keep every facet, add a hexagon per vertex (C20 -> C60)."""
    verts = P.vertices
    hexagon = {v: P.m + 1 + i for i, v in enumerate(verts)}
    key = lambda *fs: tuple(sorted(fs))

    def other_end(a, b, c):
        (d,) = (P.neighbors(a) & P.neighbors(b)) - {c}
        return key(a, b, d)

    cycles = {}
    for i in range(1, P.m + 1):
        c = P.cycle(i)
        cycles[i] = [hexagon[key(i, c[k], c[(k + 1) % len(c)])] for k in range(len(c))]
    for v in verts:
        a, b, c = v
        cycles[hexagon[v]] = [a, hexagon[other_end(a, b, c)], b, hexagon[other_end(b, c, a)],
                              c, hexagon[other_end(c, a, b)]]
    n = P.m + len(verts)
    return SimplePolytope3(tuple(tuple(cycles[j]) for j in range(1, n + 1)), name="leapfrog-" + P.name)


def main():
    fixtures = {
        "c24": barrel(6),
        "barrel7": barrel(7),
        "c60": leapfrog(corpus.polytope("dodecahedron")),
    }
    for name, P in fixtures.items():
        (HERE / f"{name}.json").write_text(json.dumps(P.to_json()) + "\n")


if __name__ == "__main__":
    main()
