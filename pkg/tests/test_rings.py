import itertools

import pytest

from strongembed import fixtures as F
from strongembed.embedding import cycle_homology_class, trace_faces
from strongembed.rings import (ChainReport, FaceRing, RingError, boundary_paths, disk_region,
                               elementary_rings, face_chains_through_disk, find_odd_ring,
                               is_elementary, is_noncontractible_ring, minimal_curve_ring,
                               ring_curve_walk, ring_from_faces, touch_table, touchings,
                               validate_ring)


def k4_projective():
    """K4 on the projective plane with three quadrilateral faces."""
    g = F.complete_graph(4)
    return F.complete_rotations(g, {}, {0: -1, 5: -1}, 1)


def edge_regions(s, count=None):
    """Faces avoiding both ends of an edge: a disk with four legs in a cyclically 4-connected graph."""
    ft = s.face_table.faces
    out = []
    for e, (u, v) in sorted(s.graph.edges.items())[:count]:
        out.append([i for i, f in enumerate(ft) if u not in f.vertices and v not in f.vertices])
    return out


def brute_chains(s, faces, b1, b3):
    verts = {f: set(s.face_table.faces[f].vertices) for f in faces}
    table = touch_table(s)
    B1, B3 = set(b1), set(b3)

    def touch(f, g):
        return (min(f, g), max(f, g)) in table

    out = []
    for n in range(1, len(faces) + 1):
        for seq in itertools.permutations(sorted(faces), n):
            if not verts[seq[0]] & B1 or not verts[seq[-1]] & B3:
                continue
            if any(verts[f] & B1 for f in seq[1:]) or any(verts[f] & B3 for f in seq[:-1]):
                continue
            if all(touch(seq[i], seq[j]) == (j == i + 1) for i, j in itertools.combinations(range(n), 2)):
                out.append(seq)
    return sorted(out, key=lambda c: (len(c), c))


# --- touchings -----------------------------------------------------------------


def test_petersen_touchings_single_edges():
    s = F.petersen()
    ts = touchings(s)
    assert len(ts) == 15  # any two of the six pentagons are adjacent
    for t in ts:
        assert len(t.components) == 1
        c = t.components[0]
        assert len(c.edges) == 1 and len(c.vertices) == 2


def test_k4_touchings():
    for t in touchings(F.k4()):
        assert len(t.components) == 1 and len(t.components[0].edges) == 1


def test_theta_touchings():
    # two digons share one edge together with both of its ends: one component
    ts = touchings(F.theta())
    assert len(ts) == 3
    assert all(len(t.components) == 1 and len(t.components[0].edges) == 1 for t in ts)


# --- rings ---------------------------------------------------------------------


def test_petersen_ring_noncontractible():
    s = F.petersen()
    ring = find_odd_ring(s)
    assert len(ring) == 3 and is_elementary(s, ring) and is_noncontractible_ring(s, ring)
    assert cycle_homology_class(s, ring_curve_walk(s, ring)) == -1


def test_sphere_ring_rejected():
    s = F.k4()
    ring = FaceRing((0, 1), touch_table(s)[(0, 1)] * 2)
    with pytest.raises(RingError, match="sphere"):
        is_noncontractible_ring(s, ring)


def test_contractible_ring_exists():
    s = F.petersen_truncated()
    flat = [r for r in elementary_rings(s, 3) if not is_noncontractible_ring(s, r)]
    assert flat
    # the three faces around the triangle
    tri = next(i for i, w in enumerate(trace_faces(s)) if len(w) == 3)
    tri_v = set(trace_faces(s)[tri].vertices)
    around = [r for r in flat if all(tri_v & set(trace_faces(s)[f].vertices) for f in r.faces)]
    assert around


def test_minimal_curve_ring():
    s = F.petersen()
    ring = minimal_curve_ring(s)
    assert len(ring) == 3 and is_elementary(s, ring) and is_noncontractible_ring(s, ring)
    t = F.k33_projective()
    r2 = minimal_curve_ring(t)
    assert len(r2) == 2
    assert len(touch_table(t)[tuple(sorted(r2.faces))]) == 2


def test_find_odd_ring_examples():
    assert len(find_odd_ring(F.petersen())) == 3
    with pytest.raises(RingError):
        find_odd_ring(F.cube())


def test_no_odd_ring_on_quadrilateral_k4():
    s = k4_projective()
    assert sorted(len(w) for w in trace_faces(s)) == [4, 4, 4]
    assert find_odd_ring(s) is None
    # exhaustive: no elementary ring of odd length is noncontractible
    odd = [r for r in elementary_rings(s) if len(r) % 2 and is_noncontractible_ring(s, r)]
    assert odd == []


@pytest.mark.parametrize("name", ["petersen", "k33_projective", "petersen_two_cut",
                                  "petersen_three_cut", "petersen_truncated"])
def test_odd_ring_is_least(name):
    s = getattr(F, name)()
    ring = find_odd_ring(s)
    validate_ring(s, ring)
    good = [r for r in elementary_rings(s) if len(r) % 2 and is_noncontractible_ring(s, r)]
    best = min(good, key=lambda r: (len(r), r.faces))
    assert len(ring) == len(best)


def test_ring_validation_errors():
    s = F.petersen()
    with pytest.raises(RingError):
        ring_from_faces(s, [0, 0, 1])
    with pytest.raises(RingError):
        ring_from_faces(s, [0, 1])  # adjacent pentagons touch once only


def test_ring_from_faces_matches_search():
    s = F.petersen()
    r = find_odd_ring(s)
    assert ring_from_faces(s, r.faces) == r


# --- chains through a disk ---------------------------------------------------


def test_single_face_region():
    s = F.cube()
    for f in range(6):
        region = disk_region(s, [f])
        b = boundary_paths(s, region)
        rep = face_chains_through_disk(s, [f], b[0], b[2])
        assert rep.chains == ((f,),)
        # one interior face: chain length two
        assert ChainReport.length(rep.chains[0]) == 2 and rep.parity == "all even"


def test_two_faces_in_a_row():
    s = F.cube()
    region = edge_regions(s, 1)[0]
    assert len(region) == 2
    b = boundary_paths(s, disk_region(s, region))
    parities = set()
    for i in (0, 1):
        rep = face_chains_through_disk(s, region, b[i], b[i + 2])
        parities.add(rep.parity)
        assert rep.chains == tuple(brute_chains(s, region, b[i], b[i + 2]))
    assert parities == {"all even", "all odd"}


@pytest.mark.parametrize("name", ["cube", "dodecahedron"])
def test_chains_match_brute_force(name):
    s = getattr(F, name)()
    for region in edge_regions(s, 6):
        b = boundary_paths(s, disk_region(s, region))
        for i in (0, 1):
            rep = face_chains_through_disk(s, region, b[i], b[i + 2])
            assert rep.chains == tuple(brute_chains(s, region, b[i], b[i + 2]))
            lens = {ChainReport.length(c) % 2 for c in rep.chains}
            assert rep.parity == ("mixed" if len(lens) == 2 else "all even" if lens == {0} else "all odd")


def test_uniform_parity_forces_quadrilateral():
    # if every chain through the disk has the same parity, some face inside is a 4-cycle
    for name in ["cube", "dodecahedron"]:
        s = getattr(F, name)()
        for region in edge_regions(s):
            b = boundary_paths(s, disk_region(s, region))
            for i in (0, 1):
                rep = face_chains_through_disk(s, region, b[i], b[i + 2])
                if rep.parity != "mixed":
                    assert any(len(s.face_table.faces[f]) == 4 for f in region)


def test_region_errors():
    s = F.cube()
    with pytest.raises(RingError):
        disk_region(s, range(6))  # whole sphere: no boundary
    region = disk_region(s, [0])
    b = boundary_paths(s, region)
    with pytest.raises(RingError):
        face_chains_through_disk(s, [0], b[0], b[1])
