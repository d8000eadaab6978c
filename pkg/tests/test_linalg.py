import pytest
from hypothesis import given, settings, strategies as st

from momentangle import linalg

from helpers import sympy_invariants


def matrices(max_rows=6, max_cols=6, bound=6):
    return st.integers(0, max_rows).flatmap(
        lambda r: st.integers(0, max_cols).flatmap(
            lambda c: st.tuples(
                st.lists(st.lists(st.integers(-bound, bound), min_size=c, max_size=c), min_size=r, max_size=r),
                st.just(c),
            )
        )
    )


@settings(max_examples=300, deadline=None)
@given(matrices())
def test_smith_form_factorization(mc):
    a, cols = mc
    snf = linalg.smith_normal_form(a, cols)
    rows = len(a)
    D = linalg.matmul(linalg.matmul(snf.U, a, rows) if rows else [], snf.V, cols) if rows else []
    for i in range(rows):
        for j in range(cols):
            expected = snf.diagonal[i] if i == j and i < snf.rank else 0
            assert D[i][j] == expected
    assert linalg.matmul(snf.U, snf.U_inv) == linalg.identity(rows)
    assert linalg.matmul(snf.V, snf.V_inv) == linalg.identity(cols)
    assert all(s > 0 for s in snf.diagonal)
    assert all(b % a == 0 for a, b in zip(snf.diagonal, snf.diagonal[1:]))


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_invariant_factors_match_sympy(mc):
    a, cols = mc
    ours = linalg.smith_normal_form(a, cols, transforms=False).diagonal
    assert ours == sympy_invariants(a, len(a), cols)
    assert linalg.smith_normal_form(a, cols).diagonal == ours


@settings(max_examples=200, deadline=None)
@given(matrices(), st.lists(st.integers(-4, 4), min_size=6, max_size=6))
def test_solve_integer_finds_planted_solution(mc, x0):
    a, cols = mc
    x0 = x0[:cols]
    b = linalg.matvec(a, x0)
    x = linalg.solve_integer(a, b, cols)
    assert x is not None
    assert linalg.matvec(a, x) == b


def test_solve_integer_detects_non_integrality():
    assert linalg.solve_integer([[2, 4]], [3]) is None
    assert linalg.solve_integer([[2, 4]], [6]) is not None
    assert linalg.solve_integer([[1], [1]], [1, 2]) is None


def test_kernel_basis_is_saturated():
    # kernel of (2, 2) is spanned by (1, -1), not (2, -2)
    (k,) = linalg.kernel_basis([[2, 2]], 2)
    assert abs(k[0]) == 1 and k[0] == -k[1]


def test_cohomology_with_torsion():
    # 0 -> Z --2--> Z -> 0 has H^1 = Z/2 and H^0 = 0
    h1 = linalg.cohomology([[2]], None, 1, 1)
    assert (h1.free_rank, h1.torsion) == (0, (2,))
    assert h1.coordinates([1]) == ([], [1])
    assert h1.is_coboundary([4])
    assert not h1.is_coboundary([3])
    h0 = linalg.cohomology(None, [[2]], 1)
    assert h0.is_zero


def test_cohomology_rejects_non_cocycle_and_bad_composition():
    data = linalg.cohomology(None, [[1, 0]], 2)
    with pytest.raises(ValueError):
        data.coordinates([1, 0])
    with pytest.raises(ArithmeticError):
        linalg.cohomology([[1], [0]], [[1, 0]], 2, 1)


def test_lattice_membership_with_moduli():
    # in Z + Z/4: is (1, 2) in the span of (1, 0) and (0, 2)?  yes
    assert linalg.lattice_membership([1, 2], [[1, 0], [0, 2]], [4]) is not None
    # (0, 1) is not in the span of (0, 2) modulo 4
    assert linalg.lattice_membership([0, 1], [[0, 2]], [4]) is None
    # (0, 3) = 1*(0, 3) + 0, and also -1*(0,1) modulo 4
    c = linalg.lattice_membership([0, 3], [[0, 1]], [4])
    assert c is not None and (c[0] - 3) % 4 == 0
    assert linalg.lattice_membership([5], [], []) is None
