import random

import pytest

from momentangle import corpus
from momentangle.errors import NotDefinedError, ValidationError
from momentangle.koszul import RElement
from momentangle.massey import (CohomologyClass, in_indeterminacy, is_defined, restrict_indeterminacy_by_multidegree,
                                triple_massey)
from momentangle.obstructions import obstruction_graphs
from momentangle.simplicial import build_complex, chi

from helpers import massey_instances, massey_trivial_oracle, random_complex

SEED = 31337


def deg3(K, i, j):
    return CohomologyClass.from_cochain(K, chi(K.full_subcomplex([i, j]), [i]), f"{i}{j}")


@pytest.fixture(scope="module")
def instances():
    rng = random.Random(SEED)
    complexes = [g.as_complex() for g in obstruction_graphs()]
    complexes += [random_complex(rng, m_max=8, m_min=6) for _ in range(6)]
    return massey_instances(rng, 30, complexes)


def test_cohomology_class_validation():
    K = corpus.complex_("pentagon")
    with pytest.raises(ValidationError):
        CohomologyClass(RElement.monomial(K, u=[1]))  # d u1 = v1 != 0
    with pytest.raises(ValidationError):
        CohomologyClass(RElement(K))
    zero = CohomologyClass(RElement(K), degree=3)
    assert zero.is_zero() and zero.multidegree is None
    assert not deg3(K, 1, 3).is_zero()
    assert deg3(K, 1, 3).degree == 3


def test_not_defined_on_the_square():
    K = build_complex([(1, 2), (2, 3), (3, 4), (1, 4)], 4)
    a, b = deg3(K, 1, 3), deg3(K, 2, 4)
    d = is_defined(a, b, a)
    assert not d and d.obstruction[0] == "a1*a2"
    with pytest.raises(NotDefinedError):
        triple_massey(a, b, a)


def test_zero_factor_gives_trivial_product():
    K = obstruction_graphs()[0].as_complex()
    zero = CohomologyClass(RElement(K), degree=3)
    r = triple_massey(zero, deg3(K, 1, 5), deg3(K, 2, 6))
    assert r.trivial and r.representative.is_zero()


def test_known_nontrivial_product_on_g1():
    K = obstruction_graphs()[0].as_complex()
    r = triple_massey(deg3(K, 1, 5), deg3(K, 2, 6), deg3(K, 3, 4), indeterminacy="full")
    assert not r.trivial
    assert r.degree == 8
    assert r.representative.d().is_zero()


def test_supplied_lifts_are_checked():
    K = obstruction_graphs()[0].as_complex()
    a, b, c = deg3(K, 1, 5), deg3(K, 2, 6), deg3(K, 3, 4)
    with pytest.raises(ValidationError):
        triple_massey(a, b, c, lifts=(RElement.monomial(K, u=[1, 2, 5, 6]), RElement(K)))


def test_engine_agrees_with_cochain_level_oracle(instances):
    assert len(instances) == 30
    verdicts = set()
    for K, a, b, c in instances:
        r = triple_massey(a, b, c, indeterminacy="full")
        assert r.representative.d().is_zero()
        if r.representative.is_zero():
            assert r.trivial
            continue
        oracle = massey_trivial_oracle(a.representative, c.representative, r.representative, *r.degrees)
        assert r.trivial == oracle
        verdicts.add(r.trivial)
    assert verdicts == {True, False}


def test_modes_and_pruning_agree(instances):
    for K, a, b, c in instances:
        full = triple_massey(a, b, c, indeterminacy="full")
        graded = triple_massey(a, b, c, indeterminacy="multigraded")
        assert full.trivial == graded.trivial
        pruned = restrict_indeterminacy_by_multidegree(full)
        assert pruned.trivial == full.trivial
        assert all(g.target == full.target_multidegree for g in pruned.indeterminacy)
        assert triple_massey(a, b, c).mode in ("full", "multigraded")


def test_witness_reproduces_zero(instances):
    for K, a, b, c in instances:
        r = triple_massey(a, b, c, indeterminacy="full")
        if not r.trivial or r.representative.is_zero():
            continue
        total = r.representative
        for coef, g in zip(r.witness, r.indeterminacy):
            total = total + coef * g.product
        assert CohomologyClass(total, degree=r.degree).is_zero()


def test_in_indeterminacy():
    K = obstruction_graphs()[0].as_complex()
    a, b, c = deg3(K, 1, 5), deg3(K, 2, 6), deg3(K, 3, 4)
    r = triple_massey(a, b, c, indeterminacy="full")
    assert not in_indeterminacy(r, r.representative)
    for g in r.indeterminacy:
        assert in_indeterminacy(r, g.product)
    with pytest.raises(ValidationError):
        in_indeterminacy(r, RElement.monomial(K, u=[1]))
