"""Crosscap insertion, compatible CDC orientation and the odd-ring surgery."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .embedding import (Arc, EmbeddingScheme, canonical_edge_cycle,
                        is_closed_2cell, is_orientable, surface_id, trace_faces)
from .graph import Graph
from .rings import (FaceRing, InternalError, RingError, is_elementary, is_noncontractible_ring,
                    touch_table)


class SurgeryError(ValueError):
    pass


class InfeasibleOrientation(SurgeryError):
    """No compatible orientation exists; ``witness`` is an odd constraint cycle.

    ``witness`` lists ``(cycle_a, cycle_b, edge)`` constraints whose parities
    sum to an odd number.
    """

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


# ---------------------------------------------------------------------------
# crosscaps


def insert_crosscap_on_edge(s: EmbeddingScheme, e: int) -> EmbeddingScheme:
    if e not in s.graph.edges:
        raise SurgeryError(f"unknown edge {e}")
    sig = dict(s.signature)
    sig[e] = -sig[e]
    return EmbeddingScheme(s.graph, s.rotation, sig)


def corners_of_face(s: EmbeddingScheme, face: int, v: int) -> list[int]:
    """Corner indices of ``face`` at ``v``; corner i sits between rotation[v][i] and rotation[v][i+1]."""
    out = []
    pos = {e: i for i, e in enumerate(s.rotation[v])}
    states = s.face_table.states[face]
    for k, (x, e, sg) in enumerate(states):
        if x != v:
            continue
        p = states[k - 1][1]
        out.append(pos[p] if sg > 0 else pos[e])
    return sorted(out)


def insert_crosscap_at_vertex(s: EmbeddingScheme, v: int, a: int, b: int) -> EmbeddingScheme:
    """Crosscap through ``v`` between corners ``a`` and ``b``.

    The edges strictly between the two corners (rotation positions a+1..b)
    have their order reversed and their signatures negated.
    """
    r = s.rotation[v]
    d = len(r)
    if not (0 <= a < d and 0 <= b < d) or a == b:
        raise SurgeryError("corners must be two distinct corner indices at the vertex")
    idx = [(a + 1 + t) % d for t in range((b - a) % d)]
    block = [r[i] for i in idx]
    new = list(r)
    for i, e in zip(idx, reversed(block)):
        new[i] = e
    rot = dict(s.rotation)
    rot[v] = tuple(new)
    sig = dict(s.signature)
    for e in block:
        sig[e] = -sig[e]
    return EmbeddingScheme(s.graph, rot, sig)


def insert_crosscap_between_faces(s: EmbeddingScheme, f1: int, f2: int, side: int = 1) -> EmbeddingScheme:
    """Crosscap between two faces that touch exactly once.

    A shared edge takes the crosscap directly. A single shared vertex uses
    the vertex form; ``side`` picks which of the two rotation intervals is
    reversed (the results are equivalent).
    """
    if f1 == f2:
        raise SurgeryError("use insert_crosscap_at_vertex for a face meeting itself")
    comps = touch_table(s).get((min(f1, f2), max(f1, f2)), ())
    if not comps:
        raise SurgeryError(f"faces {f1} and {f2} do not touch")
    if len(comps) > 1:
        raise SurgeryError(f"faces {f1} and {f2} touch {len(comps)} times")
    comp = comps[0]
    if comp.edges:
        return insert_crosscap_on_edge(s, min(comp.edges))
    (v,) = comp.vertices
    (a,) = corners_of_face(s, f1, v)
    (b,) = corners_of_face(s, f2, v)
    return insert_crosscap_at_vertex(s, v, a, b) if side > 0 else insert_crosscap_at_vertex(s, v, b, a)


def insert_crosscaps_along_ring(s: EmbeddingScheme, ring: FaceRing) -> EmbeddingScheme:
    if len(ring.faces) < 3:
        raise SurgeryError("ring must have length at least 3")
    if not is_elementary(s, ring):
        raise SurgeryError("ring is not elementary")
    n = len(ring.faces)
    out = s
    # corners are read from ``s``; touch points are disjoint so the edits commute
    for i, comp in enumerate(ring.touch_points):
        if comp.edges:
            out = insert_crosscap_on_edge(out, min(comp.edges))
            continue
        (v,) = comp.vertices
        (a,) = corners_of_face(s, ring.faces[i], v)
        (b,) = corners_of_face(s, ring.faces[(i + 1) % n], v)
        out = insert_crosscap_at_vertex(out, v, a, b)
    return out


def ring_crossed_edges(ring: FaceRing) -> list[int]:
    if any(not c.edges for c in ring.touch_points):
        raise SurgeryError("ring has a vertex touch point; no crossed edge")
    return [min(c.edges) for c in ring.touch_points]


# ---------------------------------------------------------------------------
# oriented cycle double covers


def reverse_walk(walk: Sequence[Arc]) -> tuple[Arc, ...]:
    n = len(walk)
    return tuple((walk[(i + 1) % n][0], walk[i][1]) for i in reversed(range(n)))


@dataclass(frozen=True)
class OrientedCDC:
    cycles: tuple[tuple[Arc, ...], ...]
    incidence: dict = field(default=None, compare=False)  # edge -> ((cycle, position), ...)

    def __post_init__(self):
        inc: dict[int, list[tuple[int, int]]] = {}
        for i, c in enumerate(self.cycles):
            for k, (_, e) in enumerate(c):
                inc.setdefault(e, []).append((i, k))
        object.__setattr__(self, "incidence", {e: tuple(v) for e, v in sorted(inc.items())})

    def vertex_cycles(self) -> list[tuple[int, ...]]:
        return [tuple(t for t, _ in c) for c in self.cycles]


def _uses(cycles: Sequence[Sequence[Arc]]) -> dict[int, list[tuple[int, int]]]:
    """edge -> [(cycle index, tail)] over all uses."""
    uses: dict[int, list[tuple[int, int]]] = {}
    for i, c in enumerate(cycles):
        for t, e in c:
            uses.setdefault(e, []).append((i, t))
    return uses


def orient_ccdc(cycles: Sequence[Sequence[Arc]], edges: Sequence[int] | None = None) -> OrientedCDC:
    """Choose a direction per cycle so every edge is traversed once each way.

    Variables are per-cycle flip bits; an edge used by cycles a and b in
    the same direction forces exactly one of them to flip, otherwise both
    or neither. Solved by union-find with parity.
    """
    cycles = [tuple(c) for c in cycles]
    uses = _uses(cycles)
    for e in sorted(set(uses) | set(edges or ())):
        k = len(uses.get(e, ()))
        if k != 2:
            raise SurgeryError(f"edge {e} lies in {k} cycles, not 2")
    parent = list(range(len(cycles)))
    parity = [0] * len(cycles)  # parity relative to parent
    tree: dict[int, list[tuple[int, int, int]]] = {i: [] for i in range(len(cycles))}

    def find(x):
        p = 0
        while parent[x] != x:
            p ^= parity[x]
            x = parent[x]
        return x, p

    for e, ((a, ta), (b, tb)) in sorted(uses.items()):
        need = 1 if ta == tb else 0
        ra, pa = find(a)
        rb, pb = find(b)
        if ra == rb:
            if pa ^ pb != need:
                raise InfeasibleOrientation("cycles cannot be oriented compatibly",
                                            _witness(tree, a, b, e, need))
            continue
        parent[ra] = rb
        parity[ra] = pa ^ pb ^ need
        tree[a].append((b, e, need))
        tree[b].append((a, e, need))
    flips = [find(i)[1] for i in range(len(cycles))]
    out = tuple(reverse_walk(c) if f else c for c, f in zip(cycles, flips))
    return OrientedCDC(out)


def _witness(tree, a, b, e, need):
    """Tree path from a to b plus the closing constraint."""
    prev = {a: None}
    stack = [a]
    while stack:
        x = stack.pop()
        for y, f, p in tree[x]:
            if y not in prev:
                prev[y] = (x, f, p)
                stack.append(y)
    path = []
    x = b
    while prev[x] is not None:
        px, f, p = prev[x]
        path.append((px, x, f, p))
        x = px
    path.reverse()
    return [(x, y, f) for x, y, f, _ in path] + [(b, a, e)]


def check_compatible(cdc: OrientedCDC) -> bool:
    uses = _uses(cdc.cycles)
    return all(len(u) == 2 and u[0][1] != u[1][1] for u in uses.values())


def scheme_from_oriented_cdc(g: Graph, cdc: OrientedCDC) -> EmbeddingScheme:
    """All-positive scheme whose faces are the given directed cycles."""
    if not check_compatible(cdc) or set(cdc.incidence) != set(g.edges):
        raise SurgeryError("cycles are not a compatibly oriented double cover of the graph")
    succ: dict[int, dict[int, int]] = {v: {} for v in g.vertices}
    for c in cdc.cycles:
        n = len(c)
        for i in range(n):
            (_, p), (v, e) = c[i - 1], c[i]
            if p in succ[v]:
                raise SurgeryError(f"two transitions leave edge {p} at vertex {v}")
            succ[v][p] = e
    rot = {}
    for v in g.vertices:
        inc = g.incident(v)
        if set(succ[v]) != set(inc):
            raise SurgeryError(f"transitions at vertex {v} do not cover its edges")
        order = [inc[0]]
        while len(order) < len(inc):
            order.append(succ[v][order[-1]])
        if succ[v][order[-1]] != order[0] or len(set(order)) != len(inc):
            raise SurgeryError(f"transitions at vertex {v} do not form a single rotation")
        rot[v] = tuple(order)
    out = EmbeddingScheme(g, rot, {})
    want = sorted(canonical_edge_cycle([e for _, e in c]) for c in cdc.cycles)
    assert out.face_keys() == want
    return out


# ---------------------------------------------------------------------------
# cut systems


@dataclass(frozen=True)
class CutSystem:
    """Curve H on ``base`` crossing the crosscap edges.

    ``curve[i] = (face, edge)``: the curve runs inside ``face`` of ``base``
    and then crosses ``edge``.
    """

    base: EmbeddingScheme
    curve: tuple[tuple[int, int], ...]
    crossed: frozenset


@dataclass(frozen=True)
class CutVerdict:
    feasible: bool
    coloring: tuple[int, ...] | None  # per face of the post-insertion scheme, 0 keeps traced direction
    witness: list | None = None


def cut_system_for_ring(s: EmbeddingScheme, ring: FaceRing) -> CutSystem:
    crossed = ring_crossed_edges(ring)
    n = len(ring.faces)
    curve = tuple((ring.faces[i], crossed[i]) for i in range(n))
    return CutSystem(s, curve, frozenset(crossed))


def verify_cut_system(s_after: EmbeddingScheme, cs: CutSystem) -> CutVerdict:
    base = cs.base
    if s_after.graph != base.graph or dict(s_after.rotation) != dict(base.rotation):
        raise SurgeryError("scheme does not come from edge crosscaps on the cut system's base")
    flipped = {e for e in base.graph.edges if s_after.signature[e] != base.signature[e]}
    crossings = [e for _, e in cs.curve]
    if flipped != set(cs.crossed) or sorted(crossings) != sorted(cs.crossed):
        raise SurgeryError("each crosscap must be crossed exactly once by the curve")
    faces = base.face_table.faces
    n = len(cs.curve)
    for i, (f, e) in enumerate(cs.curve):
        prev_e = cs.curve[i - 1][1]
        if n > 1 and not (e in faces[f].edges and prev_e in faces[f].edges):
            raise SurgeryError(f"curve step {i} does not run inside face {f}")
    walks = [w.arcs for w in trace_faces(s_after)]
    try:
        oriented = orient_ccdc(walks)
    except InfeasibleOrientation as exc:
        return CutVerdict(False, None, exc.witness)
    coloring = tuple(0 if o == w else 1 for o, w in zip(oriented.cycles, walks))
    return CutVerdict(True, coloring)


# ---------------------------------------------------------------------------
# the odd-ring surgery


def orient_via_odd_ring(s: EmbeddingScheme, ring: FaceRing) -> EmbeddingScheme:
    """Orientable closed 2-cell scheme of the same cubic graph."""
    sid = surface_id(s)
    if sid.orientable or sid.euler_characteristic != 1:
        raise SurgeryError("input must be a projective-plane scheme")
    if not is_closed_2cell(s) or not s.graph.is_cubic():
        raise SurgeryError("input must be a closed 2-cell scheme of a cubic graph")
    if len(ring.faces) % 2 == 0:
        raise SurgeryError("ring length must be odd")
    try:
        ok = is_elementary(s, ring) and is_noncontractible_ring(s, ring)
    except RingError as exc:
        raise SurgeryError(str(exc)) from exc
    if not ok:
        raise SurgeryError("ring must be elementary and noncontractible")
    merged = insert_crosscaps_along_ring(s, ring)
    walks = [w for w in trace_faces(merged)]
    bad = [w.vertices for w in walks if not w.is_cycle()]
    if bad:
        raise InternalError(f"surgery stage 'trace': boundary walk {bad[0]} is not a cycle")
    try:
        cdc = orient_ccdc([w.arcs for w in walks], s.graph.edge_ids)
    except InfeasibleOrientation as exc:
        raise InternalError(f"surgery stage 'orient': infeasible, witness {exc.witness}") from exc
    out = scheme_from_oriented_cdc(s.graph, cdc)
    if not (is_orientable(out) and is_closed_2cell(out)):
        raise InternalError("surgery stage 'verify': output is not an orientable closed 2-cell scheme")
    kept = {w.key() for i, w in enumerate(s.face_table.faces) if i not in ring.faces}
    if not kept <= set(out.face_keys()):
        raise InternalError("surgery stage 'verify': a face outside the ring was lost")
    return out
