import itertools
from collections import Counter

import pytest

from strongembed import fixtures as F
from strongembed.graph import (GraphError, build_graph, components, connectivity_report,
                               decompose_eulerian, find_short_cycles)


def brute_cuts(g, k):
    """Minimal edge cuts of size k by plain subset enumeration."""
    out = []
    for cut in itertools.combinations(g.edge_ids, k):
        if len(components(g, removed_edges=set(cut))) < 2:
            continue
        if any(len(components(g, removed_edges=set(sub))) > 1
               for r in range(1, k) for sub in itertools.combinations(cut, r)):
            continue
        out.append(cut)
    return out


def brute_nontrivial_three(g):
    res = []
    for cut in brute_cuts(g, 3):
        sides = components(g, removed_edges=set(cut))
        if min(len(s) for s in sides) > 1:
            res.append(cut)
    return res


def test_build_graph_examples():
    t = build_graph([(0, 1), (1, 2), (2, 0)])
    assert len(t.vertices) == 3 and len(t.edges) == 3
    th = build_graph([(0, 1)] * 3)
    assert th.is_cubic() and not th.is_simple()
    with pytest.raises(GraphError):
        build_graph([(0, 0)])


def two_triangles():
    return build_graph([(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (2, 5)])


@pytest.mark.parametrize("name,g", [
    ("petersen", F.petersen_graph()),
    ("k4", F.complete_graph(4)),
    ("k33", F.k33_graph()),
    ("cube", F.cube_graph()),
    ("two_triangles", two_triangles()),
    ("k4_two_cut", F.k4_two_cut().graph),
    ("petersen_three_cut", F.petersen_three_cut().graph),
    ("prism", F.prism().graph),
])
def test_connectivity_report_matches_subset_enumeration(name, g):
    rep = connectivity_report(g)
    assert sorted(c.edges for c in rep.two_edge_cuts) == sorted(brute_cuts(g, 2))
    assert sorted(c.edges for c in rep.nontrivial_three_edge_cuts) == sorted(brute_nontrivial_three(g))


def test_connectivity_examples():
    pet = connectivity_report(F.petersen_graph())
    assert pet.is_cyclically_4_edge_connected
    assert not pet.two_edge_cuts and not pet.nontrivial_three_edge_cuts
    assert connectivity_report(F.complete_graph(4)).is_cyclically_4_edge_connected
    tt = connectivity_report(two_triangles())
    assert (6, 7) in [c.edges for c in tt.two_edge_cuts]


def brute_cycles(g, k):
    found = set()
    for vs in itertools.permutations(g.vertices, k):
        if all(vs[(i + 1) % k] in g.neighbors(vs[i]) for i in range(k)):
            found.add(frozenset(vs) if k == 3 else min(
                tuple(vs[(s + d * i) % k] for i in range(k)) for s in range(k) for d in (1, -1)))
    return found


def test_short_cycles():
    assert len(find_short_cycles(F.complete_graph(4), 3)) == 4
    assert find_short_cycles(F.petersen_graph(), 4) == []
    k33 = find_short_cycles(F.k33_graph(), 4)
    assert len(k33) == 9 and all(len(c) == 4 for c in k33)
    cube = F.cube_graph()
    assert {c for c in find_short_cycles(cube, 4)} == brute_cycles(cube, 4)


def test_short_cycles_rejects_long():
    with pytest.raises(GraphError):
        find_short_cycles(F.cube_graph(), 5)


def test_decompose_eulerian_examples():
    tri = [(0, 1, 0), (1, 2, 1), (2, 0, 2)]
    assert decompose_eulerian(tri) == [tri]
    eight = tri + [(0, 3, 3), (3, 4, 4), (4, 0, 5)]
    cycles = decompose_eulerian(eight)
    assert len(cycles) == 2
    assert Counter(a for c in cycles for a in c) == Counter(eight)
    for c in cycles:
        assert len({t for t, _, _ in c}) == len(c)


def test_decompose_eulerian_k5_both_directions():
    g = F.complete_graph(5)
    arcs = [(u, v, e) for e, (u, v) in g.edges.items()] + [(v, u, e) for e, (u, v) in g.edges.items()]
    cycles = decompose_eulerian(arcs)
    assert Counter(a for c in cycles for a in c) == Counter(arcs)
    for c in cycles:
        assert all(c[i][1] == c[(i + 1) % len(c)][0] for i in range(len(c)))
        assert len({t for t, _, _ in c}) == len(c)


def test_decompose_eulerian_unbalanced():
    with pytest.raises(GraphError):
        decompose_eulerian([(0, 1, 0), (1, 2, 1)])
