"""Seeded generators and independent oracles shared by the test modules."""
from __future__ import annotations

import random
from itertools import combinations

import networkx as nx
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from momentangle import koszul
from momentangle.koszul import Multidegree, RElement, RMonomial
from momentangle.simplicial import Cochain, SimplicialComplex, build_complex

# minimal six-vertex triangulation of the real projective plane: H~^2 = Z/2
RP2_FACETS = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6), (2, 3, 5),
              (2, 4, 5), (2, 4, 6), (3, 4, 6), (3, 5, 6)]


def rp2() -> SimplicialComplex:
    return build_complex(RP2_FACETS, 6)


def random_complex(rng: random.Random, m_max: int = 8, m_min: int = 1,
                   rp2_rate: float = 0.0) -> SimplicialComplex:
    """Random complex on [m]; with probability ``rp2_rate`` (when m >= 6) it
    contains a relabelled six-vertex RP^2, so that torsion shows up."""
    m = rng.randint(m_min, m_max)
    faces = []
    if m >= 6 and rng.random() < rp2_rate:
        labels = rng.sample(range(1, m + 1), 6)
        faces += [[labels[v - 1] for v in f] for f in RP2_FACETS]
    for _ in range(rng.randint(0, 2 * m)):
        size = rng.randint(2, min(4, m)) if m >= 2 else 1
        faces.append(rng.sample(range(1, m + 1), size))
    return build_complex(faces, m)


def random_cochain(rng: random.Random, KJ: SimplicialComplex, q: int, bound: int = 3) -> Cochain:
    return Cochain(KJ, q, {s: rng.randint(-bound, bound) for s in KJ.faces(q)})


def random_monomial(rng: random.Random, K: SimplicialComplex) -> RMonomial:
    v = rng.choice(sorted(K.simplices))
    rest = [i for i in K.vertices if i not in v]
    u = tuple(sorted(rng.sample(rest, rng.randint(0, min(3, len(rest))))))
    return RMonomial(u, v)


def random_element(rng: random.Random, K: SimplicialComplex, terms: int = 4,
                   degree: int | None = None) -> RElement:
    """Random element, homogeneous in total degree (the degree of its first term)."""
    out: dict[RMonomial, int] = {}
    tries = 0
    while len(out) < terms and tries < 50 * terms:
        tries += 1
        mono = random_monomial(rng, K)
        if degree is None:
            degree = mono.total_degree
        if mono.total_degree == degree:
            out[mono] = out.get(mono, 0) + rng.choice([-2, -1, 1, 1, 2])
    return RElement(K, out)


# --- exact lattice oracle (sympy, independent of the package's SNF) ------------


def _nonzero_factors(M: Matrix) -> tuple[int, list[int]]:
    if M.rows == 0 or M.cols == 0:
        return 0, []
    facs = [int(f) for f in invariant_factors(M, domain=ZZ) if f != 0]
    return len(facs), [abs(f) for f in facs]


def in_integer_span(columns: list[list[int]], target: list[int]) -> bool:
    """Whether ``target`` is an integer combination of ``columns``.

    Adding ``target`` as a column leaves the lattice unchanged exactly when
    the rank and the product of invariant factors are unchanged.
    """
    n = len(target)
    if not any(target):
        return True
    if not columns:
        return False
    A = Matrix(n, len(columns), lambda i, j: columns[j][i])
    B = A.row_join(Matrix(n, 1, target))
    ra, fa = _nonzero_factors(A)
    rb, fb = _nonzero_factors(B)
    if ra != rb:
        return False
    prod_a = prod_b = 1
    for f in fa:
        prod_a *= f
    for f in fb:
        prod_b *= f
    return prod_a == prod_b


def sympy_invariants(mat: list[list[int]], rows: int, cols: int) -> list[int]:
    if rows == 0 or cols == 0:
        return []
    return [abs(int(f)) for f in invariant_factors(Matrix(rows, cols, lambda i, j: mat[i][j]), domain=ZZ) if f != 0]


def sympy_cohomology(d_in, in_dim: int, d_out, dim: int, out_dim: int) -> tuple[int, tuple[int, ...]]:
    """Free rank and torsion of ker(d_out)/im(d_in) from sympy invariant factors."""
    fin = sympy_invariants(d_in, dim, in_dim) if d_in else []
    rout = len(sympy_invariants(d_out, out_dim, dim)) if d_out else 0
    return dim - len(fin) - rout, tuple(f for f in fin if f > 1)


def massey_trivial_oracle(a1: RElement, a3: RElement, b: RElement, k1: int, k2: int, k3: int) -> bool:
    """Decide ``0 in [b] + a1 H + H a3`` at cochain level in the multidegree of b.

    Unknowns: a cochain z (cofactor of a1), a cochain w (cofactor of a3) and
    y. Equations: ``d z = 0``, ``d w = 0``, ``b + a1 z + w a3 = d y``. Every
    product and differential is expanded on basis monomials; the integer
    solvability test uses sympy. Each monomial product with a factor is
    homogeneous, so only the strand ``md(b) - md(factor)`` can contribute.
    """
    K = b.complex
    T = b.multidegree
    tgt = koszul.r_basis(K, T)
    index = {mono: i for i, mono in enumerate(tgt)}
    blocks = []  # (columns in target space, columns in constraint space, constraint dim)

    def strand_cols(md: Multidegree, mult, cocycle: bool) -> None:
        src = koszul.r_basis(K, md)
        if not src:
            return
        dmat = koszul.strand_differential_matrix(K, md) if cocycle and md.p > 0 else []
        cols = []
        for j, mono in enumerate(src):
            x = RElement(K, {mono: 1})
            img = [0] * len(tgt)
            for t, c in mult(x).terms.items():
                img[index[t]] += c
            cols.append((img, [row[j] for row in dmat]))
        blocks.append((cols, len(dmat)))

    for factor, deg, side in ((a1, k2 + k3 - 1, 1), (a3, k1 + k2 - 1, 3)):
        md = T - factor.multidegree
        if md is None or md.total_degree != deg:
            continue
        mult = (lambda x, f=factor: f * x) if side == 1 else (lambda x, f=factor: x * f)
        strand_cols(md, mult, cocycle=True)
    if T.p + 1 <= len(T.support):
        strand_cols(Multidegree(T.p + 1, T.support), lambda x: x.d(), cocycle=False)

    extra = sum(dim for _, dim in blocks)
    columns = []
    offset = 0
    for cols, dim in blocks:
        for img, con in cols:
            pad = [0] * extra
            pad[offset:offset + dim] = con
            columns.append(img + pad)
        offset += dim
    target = [0] * (len(tgt) + extra)
    for mono, c in b.terms.items():
        target[index[mono]] = -c
    return in_integer_span(columns, target)


# --- graph oracle for belts ------------------------------------------------------


def chordless_cycle_count(edges, k: int) -> int:
    """Induced k-cycles of a graph, via networkx (independent of the package)."""
    G = nx.Graph()
    G.add_edges_from(edges)
    if hasattr(nx, "chordless_cycles"):
        return sum(1 for c in nx.chordless_cycles(G, length_bound=k) if len(c) == k)
    count = 0
    for S in combinations(G.nodes, k):
        H = G.subgraph(S)
        if H.number_of_edges() == k and all(d == 2 for _, d in H.degree()) and nx.is_connected(H):
            count += 1
    return count


# --- small Massey instances --------------------------------------------------------


def random_class_on(rng: random.Random, K: SimplicialComplex, J):
    """A random nonzero class supported on ``J`` (a free combination), or None."""
    from momentangle.koszul import strand
    from momentangle.massey import CohomologyClass

    options = []
    for q in range(0, len(J) - 1):
        st = strand(K, Multidegree.of_simplicial(J, q))
        if st.data.free_rank:
            options.append(st)
    if not options:
        return None
    st = rng.choice(options)
    gens = st.group.generators[: st.data.free_rank]
    coeffs = [rng.choice([-1, 1, 1, 2]) for _ in gens]
    rep = RElement(K)
    for c, g in zip(coeffs, gens):
        rep = rep + c * g
    if rep.is_zero():
        rep = gens[0]
    return CohomologyClass(rep, label=f"{list(J)}")


def massey_instances(rng: random.Random, count: int, complexes):
    """Defined triple products ``(K, c1, c2, c3)`` with pairwise disjoint supports."""
    from momentangle.massey import is_defined

    out = []
    attempts = 0
    while len(out) < count and attempts < 500 * count:
        attempts += 1
        K = rng.choice(complexes)
        n = len(K.vertices)
        if n < 6:
            continue
        sizes = [2, 2, 2]
        for _ in range(n - 6):
            if rng.random() < 0.4:
                sizes[rng.randrange(3)] += 1
        verts = list(K.vertices)
        rng.shuffle(verts)
        Js, pos = [], 0
        for sz in sizes:
            Js.append(tuple(sorted(verts[pos:pos + sz])))
            pos += sz
        classes = [random_class_on(rng, K, J) for J in Js]
        if any(c is None for c in classes):
            continue
        if is_defined(*classes):
            out.append((K, *classes))
    return out
