import random

from momentangle import corpus
from momentangle.obstructions import obstruction_graphs, obstruction_scan
from momentangle.polytope import dual_complex
from momentangle.simplicial import build_complex

EXPECTED_EDGES = {
    1: {(1, 2), (1, 3), (1, 4), (1, 6), (2, 3), (2, 4), (3, 5), (3, 6), (4, 5), (5, 6)},
}
EXPECTED_EDGES[2] = EXPECTED_EDGES[1] - {(1, 3)}
EXPECTED_EDGES[3] = EXPECTED_EDGES[1] - {(3, 5)}
EXPECTED_EDGES[4] = EXPECTED_EDGES[1] - {(1, 3), (3, 5)}
EXPECTED_EDGES[5] = EXPECTED_EDGES[1] - {(1, 3), (1, 4), (3, 5)}


def test_stored_graphs():
    graphs = obstruction_graphs()
    assert [g.id for g in graphs] == [1, 2, 3, 4, 5]
    for g in graphs:
        assert set(g.edges) == EXPECTED_EDGES[g.id]


def test_self_match_and_icosahedron():
    for g in obstruction_graphs():
        assert obstruction_scan(g.as_complex()) == [((1, 2, 3, 4, 5, 6), g.id)]
    assert obstruction_scan(corpus.complex_("icosahedron")) == []
    assert obstruction_scan(corpus.complex_("k6")) == []


def test_scan_is_relabelling_invariant():
    rng = random.Random(5)
    for g in obstruction_graphs():
        perm = list(range(3, 9))
        rng.shuffle(perm)
        edges = [(perm[a - 1], perm[b - 1]) for a, b in g.edges] + [(1, 2)]
        hits = obstruction_scan(build_complex(edges, 8))
        assert hits == [(tuple(sorted(perm)), g.id)]


def test_scan_reads_the_one_skeleton_only():
    g = obstruction_graphs()[0]
    # filling the triangle 1-2-3 of G1 leaves the 1-skeleton unchanged
    assert obstruction_scan(build_complex(list(g.edges) + [(1, 2, 3)], 6)) == [((1, 2, 3, 4, 5, 6), 1)]
    # an extra edge breaks the induced match
    assert obstruction_scan(build_complex(list(g.edges) + [(2, 5)], 6)) == []


def test_pogorelov_duals_have_no_hits():
    assert obstruction_scan(dual_complex(corpus.polytope("dodecahedron"))) == []
