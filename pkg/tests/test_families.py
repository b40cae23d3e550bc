import networkx as nx
import pytest
from networkx.algorithms.isomorphism import GraphMatcher

from lap2.errors import InvalidSpec
from lap2.families import (
    BrokenSun,
    Cycle,
    Join,
    Sun,
    UnicyclicTrees,
    canonical_mask,
    enumerate_broken_suns,
    enumerate_unicyclic,
    free_trees,
    generate,
    join_choices,
    odd_tree_count,
    rooted_trees,
    spec_from_dict,
    vertex_orbits,
)
from lap2.graph import build_graph, classify

from conftest import to_nx

# OEIS: rooted trees A000081, free trees A000055, necklaces up to
# reflection A000029, connected unicyclic graphs A001429
ROOTED = [1, 1, 2, 4, 9, 20, 48, 115, 286, 719]
FREE = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235]
BRACELETS = {3: 4, 4: 6, 5: 8, 6: 13, 7: 18, 8: 30, 9: 46, 10: 78, 11: 126, 12: 224}
UNICYCLIC = {3: 1, 4: 2, 5: 5, 6: 13, 7: 33, 8: 89, 9: 240, 10: 657}


def test_rooted_and_free_tree_counts():
    assert [len(rooted_trees(k)) for k in range(1, 11)] == ROOTED
    assert [len(free_trees(n)) for n in range(1, 12)] == FREE


def test_rooted_tree_parent_arrays_are_trees():
    for t in rooted_trees(7):
        g = build_graph(7, [(p, i) for i, p in enumerate(t) if p >= 0])
        assert classify(g).kind == "Tree"


@pytest.mark.parametrize("g", sorted(BRACELETS))
def test_broken_sun_counts(g):
    assert sum(1 for _ in enumerate_broken_suns(g)) == BRACELETS[g]


def test_broken_suns_pairwise_non_isomorphic():
    for g in (4, 5, 6):
        gs = [to_nx(x) for x in enumerate_broken_suns(g)]
        for i in range(len(gs)):
            for j in range(i + 1, len(gs)):
                assert not nx.is_isomorphic(gs[i], gs[j])


def test_broken_suns_with_perfect_matching_g4():
    # three classes: bare C4, two adjacent pendants, full sun
    found = sorted(x.meta["family"]["mask"] for x in enumerate_broken_suns(4, "perfect_matching"))
    assert found == [[], [0, 1], [0, 1, 2, 3]]
    assert sum(1 for _ in enumerate_broken_suns(4, "no_perfect_matching")) == 3


def test_canonical_mask_is_dihedral_minimum():
    assert canonical_mask(0b0100, 4) == 0b0001
    assert canonical_mask(0b1010, 4) == 0b0101
    assert canonical_mask(0b1001, 4) == 0b0011


def test_unicyclic_counts_match_oeis():
    for n, want in UNICYCLIC.items():
        got = sum(1 for gi in range(3, n + 1) for _ in enumerate_unicyclic(n, gi, n_min=n))
        assert got == want, n


def test_unicyclic_enumeration_non_isomorphic_small():
    gs = [to_nx(x) for gi in range(3, 8) for x in enumerate_unicyclic(7, gi, n_min=7)]
    assert len(gs) == 33
    for i in range(len(gs)):
        for j in range(i + 1, len(gs)):
            assert not nx.is_isomorphic(gs[i], gs[j])


def _nx_orbits(g):
    h = to_nx(g)
    orbit = {v: {v} for v in h}
    for iso in GraphMatcher(h, h).isomorphisms_iter():
        for a, b in iso.items():
            orbit[a].add(b)
    return sorted({tuple(sorted(o)) for o in orbit.values()})


def test_vertex_orbits_match_automorphisms():
    graphs = [g for gi in (3, 4, 5, 6) for g in enumerate_unicyclic(9, gi)]
    for g in graphs[::7]:
        assert sorted(tuple(o) for o in vertex_orbits(g)) == _nx_orbits(g)


def test_vertex_orbits_examples(sun4):
    assert vertex_orbits(sun4) == [[0, 1, 2, 3], [4, 5, 6, 7]]
    fig = build_graph(5, [(0, 1), (1, 2), (2, 4), (1, 3), (3, 4)])
    assert vertex_orbits(fig) == [[0], [1], [2, 3], [4]]


def test_join_choices(sun3, sun4):
    assert join_choices(sun3, sun3, same=True) == [(0, 0), (0, 3), (3, 3)]
    assert len(join_choices(sun3, sun4)) == 4


def test_generate_shapes():
    assert generate(Cycle(5)).m == 5
    s = generate(Sun(4))
    assert s.n == 8 and sorted(s.degrees) == [1] * 4 + [3] * 4
    b = generate(BrokenSun(6, (1, 4)))
    assert b.n == 8 and b.has_edge(1, 6) and b.has_edge(4, 7)
    u = generate(UnicyclicTrees(3, ((-1, 0, 0), (-1,), (-1, 0))))
    assert u.n == 6 and u.degree(0) == 4
    j = generate(Join(Sun(3), Cycle(3), 3, 0))
    assert j.n == 9 and j.has_edge(3, 6)


def test_spec_from_dict_roundtrip_and_errors():
    for spec in (Cycle(4), Sun(3), BrokenSun(5, (0, 2)), UnicyclicTrees(3, ((-1,), (-1, 0), (-1,))),
                 Join(Sun(3), BrokenSun(4, (0,)), 1, 2)):
        assert spec_from_dict(spec.to_dict()) == spec
    assert spec_from_dict({"variant": "BrokenSun", "g": 4, "mask": 5}) == BrokenSun(4, (0, 2))
    bad = [
        {"variant": "Cycle", "g": 2},
        {"variant": "Wheel", "g": 5},
        {"g": 3},
        {"variant": "BrokenSun", "g": 4, "mask": [4]},
        {"variant": "BrokenSun", "g": 4, "mask": [1, 1]},
        {"variant": "UnicyclicTrees", "g": 3, "trees": [[-1], [-1]]},
        {"variant": "UnicyclicTrees", "g": 3, "trees": [[-1], [-1], [0, 0]]},
        {"variant": "UnicyclicTrees", "g": 3, "trees": [[-1], [-1], [-1, 2, 1]]},
        {"variant": "Sun", "g": "x"},
    ]
    for d in bad:
        with pytest.raises(InvalidSpec):
            spec_from_dict(d)


def test_odd_tree_count(sun3):
    assert odd_tree_count(sun3) == 0
    assert odd_tree_count(generate(Cycle(4))) == 4
    assert odd_tree_count(generate(BrokenSun(4, (0, 2)))) == 2
