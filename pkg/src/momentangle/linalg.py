"""Exact integer linear algebra: Smith normal form with unimodular transforms,
integer linear systems, and cohomology of a piece of a cochain complex.

Matrices are plain lists of rows of Python ints. Everything is exact; there is
no floating point anywhere in this module.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def matmul(a: Matrix, b: Matrix, inner: Optional[int] = None) -> Matrix:
    if not a:
        return []
    n = len(b) if inner is None else inner
    cols = len(b[0]) if b else 0
    out = zeros(len(a), cols)
    for i, row in enumerate(a):
        orow = out[i]
        for k in range(n):
            x = row[k]
            if x:
                brow = b[k]
                for j in range(cols):
                    if brow[j]:
                        orow[j] += x * brow[j]
    return out


def matvec(a: Matrix, v: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v) if x) for row in a]


def column(a: Matrix, j: int) -> list[int]:
    return [row[j] for row in a]


def transpose(a: Matrix, cols: Optional[int] = None) -> Matrix:
    if not a:
        return [[] for _ in range(cols or 0)]
    return [list(c) for c in zip(*a)]


@dataclass
class SmithForm:
    """``U @ A @ V == D`` with ``D`` diagonal, ``diagonal`` its nonzero entries.

    ``U_inv`` and ``V_inv`` are the exact inverses of ``U`` and ``V``. The
    nonzero diagonal entries are positive and each divides the next.
    """

    rows: int
    cols: int
    diagonal: list[int]
    U: Optional[Matrix] = None
    U_inv: Optional[Matrix] = None
    V: Optional[Matrix] = None
    V_inv: Optional[Matrix] = None

    @property
    def rank(self) -> int:
        return len(self.diagonal)


class _Reducer:
    # Row ops hit A and U (left), and U_inv as the inverse column op.
    # Column ops hit A and V (right), and V_inv as the inverse row op.

    def __init__(self, a: Matrix, cols: int, transforms: bool):
        self.A = [list(r) for r in a]
        self.n = len(self.A)
        self.k = cols
        self.track = transforms
        if transforms:
            self.U = identity(self.n)
            self.Ui = identity(self.n)
            self.V = identity(self.k)
            self.Vi = identity(self.k)

    def swap_rows(self, i: int, j: int) -> None:
        if i == j:
            return
        A = self.A
        A[i], A[j] = A[j], A[i]
        if self.track:
            self.U[i], self.U[j] = self.U[j], self.U[i]
            for row in self.Ui:
                row[i], row[j] = row[j], row[i]

    def swap_cols(self, i: int, j: int) -> None:
        if i == j:
            return
        for row in self.A:
            row[i], row[j] = row[j], row[i]
        if self.track:
            for row in self.V:
                row[i], row[j] = row[j], row[i]
            self.Vi[i], self.Vi[j] = self.Vi[j], self.Vi[i]

    def add_row(self, dst: int, src: int, c: int) -> None:
        """row[dst] += c * row[src]"""
        a_d, a_s = self.A[dst], self.A[src]
        for j in range(self.k):
            if a_s[j]:
                a_d[j] += c * a_s[j]
        if self.track:
            u_d, u_s = self.U[dst], self.U[src]
            for j in range(self.n):
                if u_s[j]:
                    u_d[j] += c * u_s[j]
            for row in self.Ui:
                if row[dst]:
                    row[src] -= c * row[dst]

    def add_col(self, dst: int, src: int, c: int) -> None:
        """col[dst] += c * col[src]"""
        for row in self.A:
            if row[src]:
                row[dst] += c * row[src]
        if self.track:
            for row in self.V:
                if row[src]:
                    row[dst] += c * row[src]
            v_s, v_d = self.Vi[src], self.Vi[dst]
            for j in range(self.k):
                if v_d[j]:
                    v_s[j] -= c * v_d[j]

    def negate_row(self, i: int) -> None:
        self.A[i] = [-x for x in self.A[i]]
        if self.track:
            self.U[i] = [-x for x in self.U[i]]
            for row in self.Ui:
                row[i] = -row[i]

    def _min_pivot(self, t: int) -> Optional[tuple[int, int]]:
        best = None
        best_abs = 0
        for i in range(t, self.n):
            row = self.A[i]
            for j in range(t, self.k):
                x = row[j]
                if x and (best is None or abs(x) < best_abs):
                    best, best_abs = (i, j), abs(x)
                    if best_abs == 1:
                        return best
        return best

    def run(self) -> list[int]:
        A = self.A
        diag: list[int] = []
        t = 0
        while t < min(self.n, self.k):
            pos = self._min_pivot(t)
            if pos is None:
                break
            self.swap_rows(t, pos[0])
            self.swap_cols(t, pos[1])
            while True:
                p = A[t][t]
                clean = True
                for i in range(t + 1, self.n):
                    if A[i][t]:
                        self.add_row(i, t, -(A[i][t] // p))
                        if A[i][t]:
                            clean = False
                for j in range(t + 1, self.k):
                    if A[t][j]:
                        self.add_col(j, t, -(A[t][j] // p))
                        if A[t][j]:
                            clean = False
                if not clean:
                    # move the smallest leftover in row/column t onto the pivot
                    best, where = abs(p), None
                    for i in range(t + 1, self.n):
                        if A[i][t] and abs(A[i][t]) < best:
                            best, where = abs(A[i][t]), ("r", i)
                    for j in range(t + 1, self.k):
                        if A[t][j] and abs(A[t][j]) < best:
                            best, where = abs(A[t][j]), ("c", j)
                    if where[0] == "r":
                        self.swap_rows(t, where[1])
                    else:
                        self.swap_cols(t, where[1])
                    continue
                bad = None
                for i in range(t + 1, self.n):
                    row = A[i]
                    for j in range(t + 1, self.k):
                        if row[j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                self.add_row(t, bad, 1)
            if A[t][t] < 0:
                self.negate_row(t)
            diag.append(A[t][t])
            t += 1
        return diag


def smith_normal_form(a: Matrix, cols: Optional[int] = None, *, transforms: bool = True) -> SmithForm:
    """Smith normal form of an integer matrix.

    ``cols`` must be given when ``a`` has no rows. With ``transforms=False``
    only the invariant factors are computed, which is noticeably cheaper.
    """
    k = cols if cols is not None else (len(a[0]) if a else 0)
    r = _Reducer(a, k, transforms)
    diag = r.run()
    if transforms:
        return SmithForm(r.n, k, diag, r.U, r.Ui, r.V, r.Vi)
    return SmithForm(r.n, k, diag)


def solve_integer(a: Matrix, b: Sequence[int], cols: Optional[int] = None,
                  snf: Optional[SmithForm] = None) -> Optional[list[int]]:
    """An integer solution of ``a @ x == b``, or None when there is none."""
    k = cols if cols is not None else (len(a[0]) if a else 0)
    if snf is None:
        snf = smith_normal_form(a, k)
    c = matvec(snf.U, b) if snf.rows else []
    y = [0] * k
    for i, s in enumerate(snf.diagonal):
        if c[i] % s:
            return None
        y[i] = c[i] // s
    if any(c[snf.rank:]):
        return None
    return matvec(snf.V, y) if k else []


def kernel_basis(a: Matrix, cols: int) -> list[list[int]]:
    """A basis of the integer kernel lattice ``{x : a @ x == 0}`` (saturated)."""
    snf = smith_normal_form(a, cols)
    return [column(snf.V, j) for j in range(snf.rank, cols)]


@dataclass
class CohomologyData:
    """``ker(d_out) / im(d_in)`` at one spot of a cochain complex of free modules.

    Generators are integer vectors in the ambient basis, free generators first
    and then one generator for each torsion coefficient, in ``torsion`` order.
    """

    dim: int
    free_rank: int
    torsion: tuple[int, ...]
    generators: list[list[int]]
    d_out: Matrix = field(repr=False)
    _in_rank: int = field(repr=False, default=0)
    _in_diag: list[int] = field(repr=False, default_factory=list)
    _U: Optional[Matrix] = field(repr=False, default=None)
    _V2_inv: Optional[Matrix] = field(repr=False, default=None)
    _out_rank: int = field(repr=False, default=0)

    def is_cocycle(self, z: Sequence[int]) -> bool:
        return not any(matvec(self.d_out, z))

    def coordinates(self, z: Sequence[int]) -> tuple[list[int], list[int]]:
        """Coordinates of the class of cocycle ``z``: (free part, torsion residues)."""
        if len(z) != self.dim:
            raise ValueError(f"vector of length {len(z)} in a space of dimension {self.dim}")
        if not self.is_cocycle(z):
            raise ValueError("not a cocycle")
        y = matvec(self._U, z) if self.dim else []
        tors = [y[i] % s for i, s in enumerate(self._in_diag) if s > 1]
        rest = y[self._in_rank:]
        w = matvec(self._V2_inv, rest) if rest else []
        if any(w[: self._out_rank]):
            raise ValueError("not a cocycle")
        return w[self._out_rank:], tors

    def is_coboundary(self, z: Sequence[int]) -> bool:
        free, tors = self.coordinates(z)
        return not any(free) and not any(tors)

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion


def cohomology(d_in: Optional[Matrix], d_out: Optional[Matrix], dim: int,
               in_dim: int = 0) -> CohomologyData:
    """Cohomology at a module of rank ``dim`` between ``d_in`` (dim x in_dim)
    and ``d_out`` (out_dim x dim). Either map may be None for a zero map."""
    if d_in is None or in_dim == 0 or dim == 0:
        d_in, in_dim = zeros(dim, 0), 0
    if d_out is None:
        d_out = []
    s1 = smith_normal_form(d_in, in_dim)
    r = s1.rank
    U, Ui = s1.U, s1.U_inv
    if dim and d_out:
        a1 = matmul(d_out, Ui, inner=dim)
        if any(row[j] for row in a1 for j in range(r)):
            raise ArithmeticError("d_out @ d_in != 0")
        a2 = [row[r:] for row in a1]
    else:
        a2 = []
    s2 = smith_normal_form(a2, dim - r)
    r2 = s2.rank
    gens: list[list[int]] = []
    for j in range(r2, dim - r):
        y = [0] * r + column(s2.V, j)
        gens.append(matvec(Ui, y))
    torsion = []
    for i, s in enumerate(s1.diagonal):
        if s > 1:
            torsion.append(s)
            gens.append(column(Ui, i))
    return CohomologyData(dim, dim - r - r2, tuple(torsion), gens, d_out,
                          r, s1.diagonal, U, s2.V_inv, r2)


def cohomology_invariants(d_in: Optional[Matrix], d_out: Optional[Matrix], dim: int,
                          in_dim: int = 0) -> tuple[int, tuple[int, ...]]:
    """(free rank, torsion) only; no generators, no transforms."""
    if d_in is None or in_dim == 0 or dim == 0:
        diag_in: list[int] = []
    else:
        diag_in = smith_normal_form(d_in, in_dim, transforms=False).diagonal
    out_rank = 0
    if d_out and dim:
        out_rank = smith_normal_form(d_out, dim, transforms=False).rank
    return dim - len(diag_in) - out_rank, tuple(s for s in diag_in if s > 1)


def lattice_membership(target: Sequence[int], vectors: Sequence[Sequence[int]],
                       moduli: Sequence[int] = ()) -> Optional[list[int]]:
    """Integer coefficients ``c`` with ``sum(c_j v_j) == target``, or None.

    The last ``len(moduli)`` coordinates are read modulo the given integers,
    so this decides membership in a subgroup of ``Z^r + Z/t_1 + ... + Z/t_s``.
    """
    n = len(target)
    g = len(vectors)
    free = n - len(moduli)
    a = zeros(n, g + len(moduli))
    for j, v in enumerate(vectors):
        for i in range(n):
            a[i][j] = v[i]
    for k, t in enumerate(moduli):
        a[free + k][g + k] = t
    x = solve_integer(a, list(target), g + len(moduli))
    return None if x is None else x[:g]
