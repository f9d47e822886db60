import random
from fractions import Fraction
from itertools import permutations
from math import factorial

import pytest

from toggledyn.core import Graph
from toggledyn.dynamics import (
    CensusBoundError,
    full_census,
    divisibility_check,
    homomesy_check,
    indicator_statistic,
    orbit_of,
    orbit_size_by_rank,
    order_of,
    rank_labeling,
    space_permutation,
    unrank_labeling,
)
from toggledyn.operators import (
    cyc_bro_word,
    cyc_word,
    identity_word,
    promotion_word,
    toric_word,
)


def test_rank_unrank_roundtrip():
    for n in range(1, 7):
        for rank, sigma in enumerate(permutations(range(1, n + 1))):
            assert rank_labeling(sigma) == rank
            assert unrank_labeling(rank, n) == sigma


def test_orbit_of():
    G = Graph.path(5)
    assert len(orbit_of((1, 2, 3, 4, 5), G, cyc_word(5))) == 5
    assert orbit_of((1, 2, 3, 4, 5), G, identity_word(5)) == [(1, 2, 3, 4, 5)]
    G4 = Graph.path(4)
    for sigma in permutations(range(1, 5)):
        assert len(orbit_of(sigma, G4, toric_word(4))) == 3


def test_census_path4_toric():
    census = full_census(Graph.path(4), toric_word(4))
    assert dict(census.sizes) == {3: 8}
    assert census.order == 3
    assert census.total == 24
    assert sum(s * m for s, m in census.sizes.items()) == factorial(4)
    # representatives are the lexicographic minima of their orbits
    for rep in census.reps:
        assert rep == min(orbit_of(rep, Graph.path(4), toric_word(4)))


def test_census_total_always_factorial():
    rng = random.Random(9)
    for _ in range(10):
        n = rng.randint(2, 6)
        edges = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)
                 if rng.random() < 0.4]
        G = Graph(n, edges)
        census = full_census(G, toric_word(n))
        assert sum(s * m for s, m in census.sizes.items()) == factorial(n)


def test_promotion_order_path7():
    assert order_of(Graph.path(7), promotion_word(7)) == 3224590642072800


def test_census_bound():
    with pytest.raises(CensusBoundError):
        full_census(Graph.path(12), toric_word(12))
    # explicit override allowed
    census = full_census(Graph.path(4), toric_word(4), max_n=3, force=True)
    assert census.order == 3


def test_census_json_shape(schema):
    import jsonschema
    census = full_census(Graph.path(4), toric_word(4))
    jsonschema.validate(census.to_json(), schema("census.schema.json"))


def test_space_permutation_consistency():
    G = Graph.path(4)
    perm = space_permutation(G, toric_word(4))
    size_of = orbit_size_by_rank(G, toric_word(4))
    assert sorted(perm) == list(range(24))
    assert set(size_of) == {3}


def test_divisibility_check():
    census = full_census(Graph.path(4), toric_word(4))
    assert divisibility_check(census, 3)
    assert divisibility_check(census, 1)
    assert not divisibility_check(census, 2)


def test_homomesy_identity_word_trivial():
    G = Graph.path(3)
    report = homomesy_check(G, identity_word(3), indicator_statistic(1, 1),
                            Fraction(1, 3))
    assert not report.homomesic
    assert {avg for _, _, avg in report.per_orbit} == {0, 1}


def test_homomesy_cyc_bro_small():
    """1_{v,i} has orbit average exactly 1/n for cyc Bro_B on connected G
    with i-1 outside B."""
    rng = random.Random(12)
    for _ in range(40):
        n = rng.randint(2, 6)
        while True:
            edges = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)
                     if rng.random() < 0.5]
            G = Graph(n, edges)
            if G.is_connected():
                break
        i = rng.randint(1, n)
        forbidden = (i - 2) % n + 1
        B = {x for x in range(1, n + 1) if x != forbidden and rng.random() < 0.5}
        v = rng.randint(1, n)
        report = homomesy_check(G, cyc_bro_word(n, B),
                                indicator_statistic(v, i), Fraction(1, n))
        assert report.homomesic, (n, sorted(G.edges), sorted(B), v, i)
