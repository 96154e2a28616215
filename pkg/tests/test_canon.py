"""Canonical form: labeling invariance and agreement with a brute-force oracle."""
import itertools
import random

from hypothesis import given, settings, strategies as st

from copsurvey.canon import (
    brute_force_min_g6,
    canonical_form,
    canonical_g6,
    canonical_graph,
    same_orbit,
)
from copsurvey.enumeration import brute_force_enumerate
from copsurvey.graphs import Graph, complete, cycle, path, petersen, to_graph6
from tests.conftest import random_connected_graph


def all_relabelings(g: Graph):
    for perm in itertools.permutations(range(g.n)):
        yield g.permute(perm)


def test_invariant_under_all_relabelings_small():
    for g in [path(4), cycle(5), complete(4), Graph.from_edges(5, [(0, 1), (1, 2), (1, 3), (3, 4)])]:
        forms = {canonical_form(h) for h in all_relabelings(g)}
        assert len(forms) == 1


def test_invariant_under_random_relabelings_petersen():
    g = petersen()
    base = canonical_form(g)
    r = random.Random(7)
    for _ in range(25):
        perm = list(range(10))
        r.shuffle(perm)
        assert canonical_form(g.permute(perm)) == base


def test_canonical_graph_is_isomorphic_fixed_point():
    g = petersen()
    cg = canonical_graph(g)
    assert cg.degrees() == sorted(g.degrees())
    assert canonical_graph(cg) == cg
    assert canonical_form(cg) == canonical_form(g)


def test_canonical_g6_matches_canonical_form():
    for g in [path(6), cycle(7), petersen()]:
        assert canonical_g6(g.n, g.adj) == canonical_form(g).bytes.decode("ascii")


def test_same_partition_as_brute_force_oracle():
    # canonical_form and min-over-all-relabelings must induce the same
    # isomorphism classes, i.e. be equal-as-partitions on labeled graphs
    for n in range(1, 6):
        by_canon = {}
        by_brute = {}
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        for mask in range(1 << len(pairs)):
            g = Graph.from_edges(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])
            by_canon.setdefault(canonical_form(g).bytes, set()).add(mask)
            by_brute.setdefault(brute_force_min_g6(g), set()).add(mask)
        assert sorted(by_canon.values(), key=sorted) == sorted(by_brute.values(), key=sorted)


def test_distinguishes_nonisomorphic_same_degree_sequence():
    # C6 vs. two triangles are both 2-regular on 6 vertices
    two_triangles = Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    assert canonical_form(cycle(6)) != canonical_form(two_triangles)
    # two trees with degree sequence (3,2,2,1,1,1), leaf hangs off a different spot
    g1 = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)])
    g2 = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 5)])
    assert canonical_form(g1) != canonical_form(g2)


def test_same_orbit_vertex_transitive():
    g = petersen()
    assert all(same_orbit(g.n, g.adj, 0, v) for v in range(10))
    p = path(4)
    assert same_orbit(p.n, p.adj, 0, 3)
    assert same_orbit(p.n, p.adj, 1, 2)
    assert not same_orbit(p.n, p.adj, 0, 1)


def test_orbits_of_asymmetric_graph_are_singletons():
    # trivial automorphism group, checked by exhausting all 720 relabelings
    g = Graph.from_edges(6, [(0, 2), (0, 3), (0, 5), (1, 2), (1, 4), (2, 3)])
    hits = [(a, b) for a in range(6) for b in range(a + 1, 6)
            if same_orbit(g.n, g.adj, a, b)]
    assert hits == []


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 8), st.randoms(use_true_random=False))
def test_relabeling_invariance_property(n, r):
    g = random_connected_graph(r, n)
    perm = list(range(n))
    r.shuffle(perm)
    assert canonical_form(g) == canonical_form(g.permute(perm))


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 7), st.randoms(use_true_random=False))
def test_agrees_with_brute_force_on_random_pairs(n, r):
    g = random_connected_graph(r, n)
    h = random_connected_graph(r, n)
    assert (canonical_form(g) == canonical_form(h)) == (
        brute_force_min_g6(g) == brute_force_min_g6(h)
    )
