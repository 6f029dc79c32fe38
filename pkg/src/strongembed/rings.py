"""Touchings, face rings and face chains in closed 2-cell schemes."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .embedding import (Arc, EmbeddingScheme, cycle_homology_class,
                        is_closed_2cell, representativity, surface_id)
from .graph import connectivity_report


class RingError(ValueError):
    pass


class InternalError(RuntimeError):
    """A search that is guaranteed to succeed did not."""


@dataclass(frozen=True)
class TouchComponent:
    vertices: frozenset
    edges: frozenset

    def anchor(self) -> int:
        return min(self.vertices)


@dataclass(frozen=True)
class Touching:
    faces: tuple[int, int]
    components: tuple[TouchComponent, ...]


@dataclass(frozen=True)
class FaceRing:
    faces: tuple[int, ...]
    # touch_points[i] lies between faces[i] and faces[i + 1]
    touch_points: tuple[TouchComponent, ...]

    def __len__(self):
        return len(self.faces)


def _require_closed(s: EmbeddingScheme):
    if not is_closed_2cell(s):
        raise RingError("scheme is not closed 2-cell")


def _touch_components(s: EmbeddingScheme, f: int, g: int) -> tuple[TouchComponent, ...]:
    fw, gw = s.face_table.faces[f], s.face_table.faces[g]
    shared_v = set(fw.vertices) & set(gw.vertices)
    shared_e = set(fw.edges) & set(gw.edges)
    parent = {v: v for v in shared_v}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in shared_e:
        a, b = s.graph.ends(e)
        parent[find(a)] = find(b)
    groups: dict[int, set] = {}
    for v in shared_v:
        groups.setdefault(find(v), set()).add(v)
    comps = []
    for vs in groups.values():
        es = frozenset(e for e in shared_e if s.graph.ends(e)[0] in vs)
        comps.append(TouchComponent(frozenset(vs), es))
    comps.sort(key=TouchComponent.anchor)
    return tuple(comps)


def touch_table(s: EmbeddingScheme) -> dict[tuple[int, int], tuple[TouchComponent, ...]]:
    """Components for every pair of touching faces, keyed by ``(i, j)`` with i < j."""
    cached = getattr(s, "_touch_cache", None)
    if cached is not None:
        return cached
    _require_closed(s)
    faces = s.face_table.faces
    by_vertex: dict[int, set[int]] = {}
    for i, f in enumerate(faces):
        for v in f.vertices:
            by_vertex.setdefault(v, set()).add(i)
    pairs = set()
    for fs in by_vertex.values():
        pairs.update(itertools.combinations(sorted(fs), 2))
    table = {p: _touch_components(s, *p) for p in sorted(pairs)}
    object.__setattr__(s, "_touch_cache", table)
    return table


def touchings(s: EmbeddingScheme) -> list[Touching]:
    return [Touching(p, c) for p, c in touch_table(s).items()]


def _touch(table, f: int, g: int) -> tuple[TouchComponent, ...]:
    return table.get((min(f, g), max(f, g)), ())


# ---------------------------------------------------------------------------
# rings


def validate_ring(s: EmbeddingScheme, ring: FaceRing) -> None:
    table = touch_table(s)
    n = len(ring.faces)
    nf = len(s.face_table.faces)
    if n < 2 or len(ring.touch_points) != n:
        raise RingError("a ring needs at least two faces and one touch point per pair")
    if len(set(ring.faces)) != n or not all(0 <= f < nf for f in ring.faces):
        raise RingError("ring faces must be distinct face indices")
    for i in range(n):
        comps = _touch(table, ring.faces[i], ring.faces[(i + 1) % n])
        if ring.touch_points[i] not in comps:
            raise RingError(f"touch point {i} is not a component of the two faces' intersection")
    if n == 2:
        if ring.touch_points[0] == ring.touch_points[1]:
            raise RingError("a ring of length 2 needs two distinct touch points")
        return
    for i, j in itertools.combinations(range(n), 2):
        if (j - i) % n not in (1, n - 1) and _touch(table, ring.faces[i], ring.faces[j]):
            raise RingError(f"nonconsecutive faces {ring.faces[i]} and {ring.faces[j]} touch")
    meets = []
    for i in range(n):
        fi = s.face_table.faces[ring.faces[i]].vertices
        fj = s.face_table.faces[ring.faces[(i + 1) % n]].vertices
        meets.append(set(fi) & set(fj))
    for a, b in itertools.combinations(meets, 2):
        if a & b:
            raise RingError("intersections of consecutive faces are not disjoint")


def is_elementary(s: EmbeddingScheme, ring: FaceRing) -> bool:
    validate_ring(s, ring)
    table = touch_table(s)
    n = len(ring.faces)
    if n == 2:
        return len(_touch(table, *ring.faces)) == 2
    return all(len(_touch(table, ring.faces[i], ring.faces[(i + 1) % n])) == 1 for i in range(n))


def _face_segment(s: EmbeddingScheme, face: int, a: int, b: int) -> list[Arc]:
    arcs = s.face_table.faces[face].arcs
    verts = [t for t, _ in arcs]
    i, j = verts.index(a), verts.index(b)
    k = len(arcs)
    return [arcs[(i + t) % k] for t in range((j - i) % k)]


def ring_curve_walk(s: EmbeddingScheme, ring: FaceRing) -> list[Arc]:
    """Closed graph walk homotopic to the curve through the ring's touch points.

    Inside face ``f_i`` the curve runs from the previous touch point to the
    next; since the face is a disk this segment may be pushed onto either
    boundary arc of the face without changing the homotopy class.
    """
    validate_ring(s, ring)
    n = len(ring.faces)
    pts = [c.anchor() for c in ring.touch_points]
    walk: list[Arc] = []
    for i in range(n):
        walk += _face_segment(s, ring.faces[i], pts[i - 1], pts[i])
    return walk


def _require_projective(s: EmbeddingScheme):
    sid = surface_id(s)
    if sid.euler_characteristic == 2:
        raise RingError("no noncontractible curves on the sphere")
    if sid.orientable or sid.euler_characteristic != 1:
        raise RingError(f"unsupported surface: {sid.name()}")


def is_noncontractible_ring(s: EmbeddingScheme, ring: FaceRing) -> bool:
    _require_projective(s)
    return cycle_homology_class(s, ring_curve_walk(s, ring)) == -1


def _is_3_connected_cubic(s: EmbeddingScheme) -> bool:
    g = s.graph
    if not g.is_cubic() or len(g.vertices) < 4:
        return False
    rep = connectivity_report(g)
    return rep.is_2_edge_connected and not rep.two_edge_cuts


def minimal_curve_ring(s: EmbeddingScheme) -> FaceRing:
    """Faces met by a shortest noncontractible curve."""
    _require_projective(s)
    _require_closed(s)
    if not _is_3_connected_cubic(s):
        raise RingError("graph must be 3-connected and cubic")
    from .embedding import shortest_noncontractible_curve

    curve = shortest_noncontractible_curve(s)
    if len(curve) < 2:
        raise RingError("representativity must be at least 2")
    table = touch_table(s)
    n = len(curve)
    faces = tuple(f for _, f in curve)
    pts = []
    for i in range(n):
        v = curve[(i + 1) % n][0]
        comp = next(c for c in _touch(table, faces[i], faces[(i + 1) % n]) if v in c.vertices)
        pts.append(comp)
    ring = FaceRing(faces, tuple(pts))
    if not (is_elementary(s, ring) and is_noncontractible_ring(s, ring)):
        raise InternalError("shortest curve did not give an elementary noncontractible ring")
    return ring


def has_four_cycle_face(s: EmbeddingScheme) -> bool:
    return any(len(f) == 4 for f in s.face_table.faces)


def find_odd_ring(s: EmbeddingScheme) -> FaceRing | None:
    """Least odd noncontractible elementary ring, by length then face indices."""
    _require_projective(s)
    _require_closed(s)
    if not s.graph.is_cubic():
        raise RingError("graph must be cubic")
    table = touch_table(s)
    nf = len(s.face_table.faces)
    verts = [set(f.vertices) for f in s.face_table.faces]
    single = {p: c[0] for p, c in table.items() if len(c) == 1}

    def once(f, g):
        return single.get((min(f, g), max(f, g)))

    def touches(f, g):
        return (min(f, g), max(f, g)) in table

    for length in range(3, nf + 1, 2):
        for f0 in range(nf):
            path = [f0]

            def extend():
                k = len(path)
                last = path[-1]
                for g in range(f0 + 1, nf):
                    if g in path or once(last, g) is None:
                        continue
                    if any(touches(g, h) for h in path[1:-1]):
                        continue
                    closing = k == length - 1
                    if k > 1 and closing != touches(g, f0):
                        continue
                    if closing:
                        if once(g, f0) is None or g < path[1]:
                            continue
                        if length == 3 and verts[f0] & verts[path[1]] & verts[g]:
                            continue
                    path.append(g)
                    if closing:
                        faces = tuple(path)
                        pts = tuple(once(faces[i], faces[(i + 1) % length]) for i in range(length))
                        ring = FaceRing(faces, pts)
                        if cycle_homology_class(s, ring_curve_walk(s, ring)) == -1:
                            return ring
                    else:
                        found = extend()
                        if found:
                            return found
                    path.pop()
                return None

            found = extend()
            if found:
                return found
    if _odd_ring_guaranteed(s):
        raise InternalError("no odd ring although the existence hypotheses hold")
    return None


def elementary_rings(s: EmbeddingScheme, max_len: int | None = None):
    """Every elementary ring, shortest first, each cyclic sequence once."""
    _require_closed(s)
    table = touch_table(s)
    nf = len(s.face_table.faces)
    verts = [set(f.vertices) for f in s.face_table.faces]
    single = {p: c[0] for p, c in table.items() if len(c) == 1}
    top = nf if max_len is None else min(max_len, nf)
    if top >= 2:
        for (f, g), comps in sorted(table.items()):
            if len(comps) == 2:
                yield FaceRing((f, g), comps)

    def touches(f, g):
        return (min(f, g), max(f, g)) in table

    def once(f, g):
        return single.get((min(f, g), max(f, g)))

    for length in range(3, top + 1):
        for f0 in range(nf):
            path = [f0]

            def extend():
                k = len(path)
                closing = k == length - 1
                for g in range(f0 + 1, nf):
                    if g in path or once(path[-1], g) is None:
                        continue
                    if any(touches(g, h) for h in path[1:-1]):
                        continue
                    if k > 1 and closing != touches(g, f0):
                        continue
                    if closing:
                        if once(g, f0) is None or g < path[1]:
                            continue
                        if length == 3 and verts[f0] & verts[path[1]] & verts[g]:
                            continue
                        faces = tuple(path) + (g,)
                        yield FaceRing(faces, tuple(once(faces[i], faces[(i + 1) % length])
                                                    for i in range(length)))
                    else:
                        path.append(g)
                        yield from extend()
                        path.pop()

            yield from extend()


def ring_from_faces(s: EmbeddingScheme, faces: Sequence[int]) -> FaceRing:
    """The ring through ``faces``; each consecutive pair must touch once (twice for two faces)."""
    table = touch_table(s)
    faces = tuple(faces)
    n = len(faces)
    if n == 2:
        comps = _touch(table, *faces)
        if len(comps) != 2:
            raise RingError("two faces form a ring only if they touch exactly twice")
        ring = FaceRing(faces, comps)
    else:
        pts = []
        for i in range(n):
            comps = _touch(table, faces[i], faces[(i + 1) % n])
            if len(comps) != 1:
                raise RingError(f"faces {faces[i]} and {faces[(i + 1) % n]} touch {len(comps)} times")
            pts.append(comps[0])
        ring = FaceRing(faces, tuple(pts))
    validate_ring(s, ring)
    return ring


def _odd_ring_guaranteed(s: EmbeddingScheme) -> bool:
    if has_four_cycle_face(s):
        return False
    rep = connectivity_report(s.graph)
    return rep.is_cyclically_4_edge_connected and representativity(s) >= 2


# ---------------------------------------------------------------------------
# face chains through a disk


@dataclass(frozen=True)
class DiskRegion:
    faces: frozenset
    boundary: tuple[int, ...]  # the bounding cycle C as a vertex cycle
    legs: tuple[int, ...]  # edges meeting C from outside


@dataclass(frozen=True)
class ChainReport:
    parity: str  # "all even", "all odd" or "mixed"
    chains: tuple[tuple[int, ...], ...]  # interior face sequences
    shortest: tuple[int, ...]

    @staticmethod
    def length(chain: Sequence[int]) -> int:
        """Chain length: number of interior faces plus one."""
        return len(chain) + 1


def disk_region(s: EmbeddingScheme, faces: Iterable[int]) -> DiskRegion:
    _require_closed(s)
    g = s.graph
    fs = frozenset(faces)
    walks = s.face_table.faces
    if not fs or not all(0 <= f < len(walks) for f in fs):
        raise RingError("region must be a nonempty set of face indices")
    count: dict[int, int] = {}
    for f in fs:
        for e in walks[f].edges:
            count[e] = count.get(e, 0) + 1
    rim = [e for e, c in count.items() if c == 1]
    if not rim:
        raise RingError("region has no boundary")
    adj: dict[int, list[int]] = {}
    for e in rim:
        for v in g.ends(e):
            adj.setdefault(v, []).append(e)
    if any(len(es) != 2 for es in adj.values()):
        raise RingError("region boundary is not a cycle")
    start = min(adj)
    cyc, prev_e, v = [start], None, start
    while True:
        e = adj[v][0] if adj[v][0] != prev_e else adj[v][1]
        v = g.other(e, v)
        prev_e = e
        if v == start:
            break
        cyc.append(v)
    if len(cyc) != len(adj):
        raise RingError("region boundary is not a single cycle")
    inside = {x for f in fs for x in walks[f].vertices}
    if inside != set(cyc) and not _interior_ok(g, inside, set(cyc), count):
        raise RingError("region is not a disk")
    legs = tuple(sorted(e for v in cyc for e in g.incident(v) if e not in count))
    euler = len(inside) - len(count) + len(fs)
    if euler != 1:
        raise RingError("region is not a disk")
    return DiskRegion(fs, tuple(cyc), legs)


def _interior_ok(g, inside, rim, count) -> bool:
    return all(e in count for v in inside - rim for e in g.incident(v))


def boundary_paths(s: EmbeddingScheme, region: DiskRegion) -> list[tuple[int, ...]]:
    """B1..B4 between consecutive leg attachments, following the boundary cycle."""
    g = s.graph
    if len(region.legs) != 4:
        raise RingError(f"region has {len(region.legs)} legs, expected 4")
    feet = {v for e in region.legs for v in g.ends(e) if v in region.boundary}
    if len(feet) != 4:
        raise RingError("legs must attach at four distinct boundary vertices")
    cyc = region.boundary
    k = len(cyc)
    idx = sorted(cyc.index(v) for v in feet)
    out = []
    for a, b in zip(idx, idx[1:] + [idx[0] + k]):
        out.append(tuple(cyc[t % k] for t in range(a, b + 1)))
    return out


def face_chains_through_disk(s: EmbeddingScheme, faces: Iterable[int],
                             b1: Sequence[int], b3: Sequence[int]) -> ChainReport:
    """All B1B3 face chains whose interior faces lie in the region.

    A face touches a boundary path when they share a vertex; faces touch as
    usual. Chains are induced paths in this touch graph.
    """
    region = disk_region(s, faces)
    paths = boundary_paths(s, region)
    if tuple(b1) not in paths or tuple(b3) not in paths:
        raise RingError("B1 and B3 must be boundary paths of the region")
    if paths.index(tuple(b3)) != (paths.index(tuple(b1)) + 2) % 4:
        raise RingError("B1 and B3 must be opposite boundary paths")
    table = touch_table(s)
    verts = {f: set(s.face_table.faces[f].vertices) for f in region.faces}
    B1, B3 = set(b1), set(b3)
    if B1 & B3:
        raise RingError("opposite boundary paths share a vertex")

    def touch(f, g):
        return (min(f, g), max(f, g)) in table

    chains = []
    order = sorted(region.faces)

    def rec(path):
        last = path[-1]
        if verts[last] & B3:
            # a face touching B3 must be the final interior face
            chains.append(tuple(path))
            return
        for g in order:
            if g in path or not touch(last, g) or verts[g] & B1:
                continue
            if any(touch(g, h) for h in path[:-1]):
                continue
            rec(path + [g])

    for f in order:
        if verts[f] & B1:
            rec([f])
    parities = {ChainReport.length(c) % 2 for c in chains}
    parity = "mixed" if len(parities) > 1 else ("all even" if parities == {0} else "all odd")
    shortest = min(chains, key=lambda c: (len(c), c)) if chains else ()
    return ChainReport(parity, tuple(sorted(chains, key=lambda c: (len(c), c))), shortest)
