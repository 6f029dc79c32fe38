import random
from collections import Counter

import pytest

from strongembed import fixtures as F
from strongembed.embedding import (EmbeddingError, EmbeddingScheme, NonPlanarError, canonical_edge_cycle,
                                   contract_edge, cycle_homology_class, delete_edge,
                                   euler_characteristic, is_closed_2cell, is_orientable,
                                   normalize, orientable_double_cover, planar_embed, reflect,
                                   representativity, scheme_from_faces, shortest_noncontractible_curve,
                                   subdivide_edge, suppress_vertex, surface_id, switch_vertices,
                                   trace_faces)
from strongembed.graph import Graph, build_graph, is_connected

from support import brute_representativity

PROJECTIVE = ["petersen", "k33_projective", "k5_projective", "k6_projective", "digon_projective",
              "petersen_two_cut", "petersen_three_cut", "petersen_truncated"]


def projective(name):
    return getattr(F, name)()


# --- oracles ---------------------------------------------------------------


def cover_class(s, walk):
    """Class of a closed walk read off its lift to the orientable double cover."""
    dc = orientable_double_cover(s)
    g = dc.scheme.graph
    start = 2 * walk[0][0]
    x = start
    for _, e in walk:
        lifted = [c for c in g.incident(x) if dc.edge_projection[c] == e]
        assert len(lifted) == 1
        x = g.other(lifted[0], x)
    assert dc.vertex_projection[x] == walk[0][0]
    return 1 if x == start else -1


# --- face tracing ------------------------------------------------------------


def test_k4_faces():
    s = F.k4()
    walks = trace_faces(s)
    assert len(walks) == 4 and all(len(w) == 3 and w.is_cycle() for w in walks)
    assert surface_id(s).euler_characteristic == 2 and surface_id(s).orientable


def test_petersen_faces():
    s = F.petersen()
    walks = trace_faces(s)
    assert sorted(len(w) for w in walks) == [5] * 6
    assert euler_characteristic(s) == 1
    sid = surface_id(s)
    assert not sid.orientable and sid.genus == 1 and sid.name() == "projective plane"
    assert is_closed_2cell(s)


def test_theta_faces():
    g = build_graph([(0, 1)] * 3)
    s = EmbeddingScheme(g, {0: (0, 1, 2), 1: (0, 2, 1)})
    walks = trace_faces(s)
    assert len(walks) == 3 and all(len(w) == 2 for w in walks)
    assert euler_characteristic(s) == 2


@pytest.mark.parametrize("name", PROJECTIVE + ["k4", "cube", "k33_toroidal", "theta", "prism"])
def test_each_edge_twice(name):
    s = getattr(F, name)()
    arcs = [a for w in trace_faces(s) for a in w.arcs]
    assert Counter(e for _, e in arcs) == Counter({e: 2 for e in s.graph.edges})
    if is_orientable(s):
        # in an orientable scheme normalised to all +, each direction once
        arcs = [a for w in trace_faces(normalize(s)) for a in w.arcs]
        assert len(set(arcs)) == len(arcs)


def test_petersen_flip_merges_two_faces():
    s = F.petersen()
    e = next(iter(s.graph.edges))
    sig = dict(s.signature)
    sig[e] = -sig[e]
    t = EmbeddingScheme(s.graph, s.rotation, sig)
    assert len(trace_faces(t)) == 5 and euler_characteristic(t) == 0


# --- orientability -----------------------------------------------------------


def test_orientability_certificates():
    o = is_orientable(F.k4())
    assert o and not o.switches
    tri = build_graph([(0, 1), (1, 2), (2, 0)])
    s = EmbeddingScheme(tri, {0: (0, 2), 1: (0, 1), 2: (1, 2)}, {0: -1})
    assert not is_orientable(s)
    assert not is_orientable(F.petersen())
    # switching certificate normalises every edge to +
    t = switch_vertices(F.k4(), [0, 2])
    cert = is_orientable(t)
    assert cert
    fixed = switch_vertices(t, cert.switches)
    assert all(x == 1 for x in fixed.signature.values())


@pytest.mark.parametrize("name", PROJECTIVE + ["k33_toroidal", "cube"])
def test_switching_invariance(name):
    s = getattr(F, name)()
    rng = random.Random(7)
    for _ in range(5):
        vs = rng.sample(list(s.graph.vertices), rng.randint(1, len(s.graph.vertices)))
        t = switch_vertices(s, vs)
        assert t.face_keys() == s.face_keys()
        assert surface_id(t) == surface_id(s)
        assert bool(is_orientable(t)) == bool(is_orientable(s))


def test_closed_2cell():
    assert is_closed_2cell(F.petersen()) and is_closed_2cell(F.k4())
    bowtie = build_graph([(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
    assert not is_closed_2cell(planar_embed(bowtie))


# --- homology and double cover ---------------------------------------------


def test_homology_of_petersen_cycles():
    s = F.petersen()
    faces = {w.key() for w in trace_faces(s)}
    for w in trace_faces(s):
        assert cycle_homology_class(s, w.arcs) == 1
    others = [c for c in F.simple_cycles(s.graph, 5) if len(c) == 5]
    assert len(others) == 12
    nonfacial = 0
    for c in others:
        if canonical_edge_cycle([e for _, e in c]) in faces:
            continue
        nonfacial += 1
        assert cycle_homology_class(s, c) == -1 == cover_class(s, c)
    assert nonfacial == 6


@pytest.mark.parametrize("name", PROJECTIVE)
def test_homology_matches_cover(name):
    s = projective(name)
    for c in F.simple_cycles(s.graph, 6)[:60]:
        assert cycle_homology_class(s, c) == cover_class(s, c)


def test_homology_additive():
    s = F.petersen()
    odd = [c for c in F.simple_cycles(s.graph, 5) if cycle_homology_class(s, c) == -1]
    a = odd[0]
    v = a[0][0]
    b = next(c for c in odd[1:] if any(t == v for t, _ in c))
    k = [t for t, _ in b].index(v)
    joined = list(a) + list(b[k:]) + list(b[:k])
    assert cycle_homology_class(s, joined) == 1


def test_double_cover():
    dc = orientable_double_cover(F.petersen())
    c = dc.scheme
    assert len(c.graph.vertices) == 20 and euler_characteristic(c) == 2 and is_orientable(c)
    d = orientable_double_cover(F.digon_projective()).scheme
    assert len(d.graph.vertices) == 4 and len(d.graph.edges) == 4
    assert euler_characteristic(d) == 2 and is_connected(d.graph)


@pytest.mark.parametrize("name", PROJECTIVE)
def test_double_cover_deck_and_connectivity(name):
    s = projective(name)
    dc = orientable_double_cover(s)
    assert all(dc.deck[dc.deck[x]] == x and dc.deck[x] != x for x in dc.deck)
    assert all(dc.vertex_projection[dc.deck[x]] == dc.vertex_projection[x] for x in dc.deck)
    # nonorientable base: the cover is connected
    assert is_connected(dc.scheme.graph)
    assert euler_characteristic(dc.scheme) == 2 * euler_characteristic(s)


def test_double_cover_rejects_orientable():
    with pytest.raises(EmbeddingError):
        orientable_double_cover(F.k4())


# --- representativity --------------------------------------------------------


def test_representativity_examples():
    assert representativity(F.petersen()) == 3
    assert representativity(F.digon_projective()) == 1
    assert representativity(F.k6_projective()) == 3


@pytest.mark.parametrize("name", PROJECTIVE)
def test_representativity_matches_brute_force(name):
    s = projective(name)
    rho = representativity(s)
    assert brute_representativity(s, rho) == rho


@pytest.mark.parametrize("name", PROJECTIVE)
def test_curve_is_consistent(name):
    s = projective(name)
    curve = shortest_noncontractible_curve(s)
    faces = trace_faces(s)
    for i, (v, f) in enumerate(curve):
        nxt = curve[(i + 1) % len(curve)][0]
        assert v in faces[f].vertices and nxt in faces[f].vertices


def test_representativity_rejects_other_surfaces():
    with pytest.raises(EmbeddingError, match="undefined on sphere"):
        representativity(F.k4())
    with pytest.raises(EmbeddingError, match="unsupported surface"):
        representativity(F.k33_toroidal())


# --- planar embedding and minors ---------------------------------------------


def test_planar_embed():
    s = planar_embed(F.complete_graph(4))
    assert euler_characteristic(s) == 2 and all(len(w) == 3 for w in trace_faces(s))
    t = planar_embed(build_graph([(0, 1)] * 3))
    assert [len(w) for w in trace_faces(t)] == [2, 2, 2]
    for g in (F.complete_graph(5), F.k33_graph(), F.petersen_graph()):
        with pytest.raises(NonPlanarError):
            planar_embed(g)


@pytest.mark.parametrize("name", ["cube", "dodecahedron", "prism", "k4_two_cut"])
def test_planar_embed_fixtures(name):
    g = getattr(F, name)().graph
    s = planar_embed(g)
    assert euler_characteristic(s) == 2 and all(x == 1 for x in s.signature.values())


def test_minor_operations_keep_surface():
    s = F.petersen()
    e = 0
    d = delete_edge(s, e)
    assert euler_characteristic(d) == 1
    c = contract_edge(s, e)
    assert euler_characteristic(c) == 1 and len(c.graph.vertices) == 9
    sub, x, (e1, e2) = subdivide_edge(s, e)
    assert sub.graph.degree(x) == 2 and euler_characteristic(sub) == 1
    back, n = suppress_vertex(sub, x, new_id=e)
    assert back.face_keys() == s.face_keys()


def test_scheme_from_faces_round_trip():
    for name in ["petersen", "k6_projective", "k33_toroidal", "cube"]:
        s = getattr(F, name)()
        t = scheme_from_faces(s.graph, [w.arcs for w in trace_faces(s)])
        assert t.face_keys() == s.face_keys()
        assert surface_id(t) == surface_id(s)


def test_relabel_invariance():
    s = F.petersen()
    rng = random.Random(3)
    perm = list(s.graph.vertices)
    rng.shuffle(perm)
    m = dict(zip(s.graph.vertices, perm))
    g = Graph.make(perm, {e: (m[u], m[v]) for e, (u, v) in s.graph.edges.items()})
    t = EmbeddingScheme(g, {m[v]: r for v, r in s.rotation.items()}, s.signature)
    assert t.face_keys() == s.face_keys()
    assert reflect(t).face_keys() == t.face_keys()
