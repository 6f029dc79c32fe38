"""Reductions of cubic embedded graphs and lifts of orientable embeddings.

Children are derived from the parent scheme by deletion, contraction and
suppression, so their Euler characteristic can only go up. Every vertex
and edge id of a child that exists in the parent means the same element
there; new edges get fresh ids above the parent's largest.

Lifts operate on oriented cycle double covers: the faces of a normalized
child scheme, traced in the positive direction, use every edge once in
each direction. The parent's faces are spliced from these and turned back
into a scheme with ``scheme_from_oriented_cdc``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .embedding import (Arc, EmbeddingScheme, contract_edge, delete_edge, is_closed_2cell,
                        is_orientable, normalize, suppress_vertex)
from .graph import EdgeCut, Graph, connectivity_report, find_short_cycles, is_2_connected
from .rings import InternalError
from .surgery import OrientedCDC, reverse_walk, scheme_from_oriented_cdc

TWO_EDGE_CUT = "TwoEdgeCut"
THREE_EDGE_CUT = "ThreeEdgeCut"
FOUR_CYCLE = "FourCycle"


class ReductionError(ValueError):
    pass


@dataclass(frozen=True)
class ReductionStep:
    kind: str
    graph: Graph  # the parent graph
    witness: tuple  # cut edges, or the 4-cycle (v1, v2, v3, v4)
    children: tuple[EmbeddingScheme, ...]
    data: dict = field(default_factory=dict, compare=False)


def is_base_case(g: Graph) -> bool:
    """K4 or the three-edge theta graph."""
    n = len(g.vertices)
    if n == 2:
        return len(g.edges) == 3
    return n == 4 and g.is_cubic() and g.is_simple()


def _require_cubic(s: EmbeddingScheme):
    g = s.graph
    if not g.is_cubic():
        raise ReductionError("graph is not cubic")
    if not is_2_connected(g):
        raise ReductionError("graph is not 2-connected")


def detect_reduction(s: EmbeddingScheme) -> ReductionStep | None:
    _require_cubic(s)
    g = s.graph
    if is_base_case(g):
        return None
    rep = connectivity_report(g)
    if rep.two_edge_cuts:
        return _two_cut_step(s, rep.two_edge_cuts[0])
    if rep.nontrivial_three_edge_cuts:
        return _three_cut_step(s, rep.nontrivial_three_edge_cuts[0])
    for cyc in find_short_cycles(g, 4):
        if len(cyc) != 4:
            continue
        step = _four_cycle_step(s, cyc)
        if step is not None:
            return step
    return None


def apply_reduction(step: ReductionStep, s: EmbeddingScheme | None = None) -> tuple[EmbeddingScheme, ...]:
    if s is not None and s.graph != step.graph:
        raise ReductionError("reduction step is stale: the graph has changed")
    for child in step.children:
        if len(child.graph.edges) >= len(step.graph.edges):
            raise InternalError("reduction did not decrease the edge count")
    return step.children


# ---------------------------------------------------------------------------
# cuts


def contract_side(s: EmbeddingScheme, side: frozenset) -> tuple[EmbeddingScheme, int]:
    """Contract an induced connected vertex set to a single vertex."""
    g = s.graph
    root = min(side)
    tree, seen = [], {root}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for e in g.incident(x):
            y = g.other(e, x)
            if y in side and y not in seen:
                seen.add(y)
                tree.append(e)
                queue.append(y)
    if seen != set(side):
        raise ReductionError("cut side is not connected")
    inner = {e for e, (a, b) in g.edges.items() if a in side and b in side}
    for e in sorted(inner - set(tree)):
        s = delete_edge(s, e)
    for e in tree:
        s = contract_edge(s, e)
    (x,) = [v for v in s.graph.vertices if v in side]
    return s, x


def _orient_cut(g: Graph, cut: EdgeCut):
    a_side, b_side = cut.sides
    ends = []
    for e in cut.edges:
        u, w = g.ends(e)
        ends.append((u, w) if u in a_side else (w, u))
    return a_side, b_side, ends


def _two_cut_step(s: EmbeddingScheme, cut: EdgeCut) -> ReductionStep:
    g = s.graph
    a_side, b_side, ((a1, b1), (a2, b2)) = _orient_cut(g, cut)
    e, f = cut.edges
    n = g.next_edge_id()
    children = []
    for side, new_id in ((b_side, n), (a_side, n + 1)):
        child, x = contract_side(s, side)
        child, _ = suppress_vertex(child, x, new_id)
        children.append(child)
    data = dict(a1=a1, a2=a2, b1=b1, b2=b2, e=e, f=f, nA=n, nB=n + 1)
    return ReductionStep(TWO_EDGE_CUT, g, cut.edges, tuple(children), data)


def _three_cut_step(s: EmbeddingScheme, cut: EdgeCut) -> ReductionStep:
    g = s.graph
    a_side, b_side, ends = _orient_cut(g, cut)
    child_a, x_b = contract_side(s, b_side)
    child_b, x_a = contract_side(s, a_side)
    data = dict(xB=x_b, xA=x_a, cut=cut.edges)
    return ReductionStep(THREE_EDGE_CUT, g, cut.edges, (child_a, child_b), data)


# ---------------------------------------------------------------------------
# four cycles


def _four_cycle_labelings(cyc: Sequence[int]):
    for k in range(4):
        yield tuple(cyc[(k + i) % 4] for i in range(4))
    rev = tuple(reversed(cyc))
    for k in range(4):
        yield tuple(rev[(k + i) % 4] for i in range(4))


def four_cycle_data(g: Graph, vs: Sequence[int]) -> dict | None:
    """Edge ids around the labeled 4-cycle, or None if it is not induced."""
    v1, v2, v3, v4 = vs
    cyc_edges = {}
    for x, y, name in ((v1, v2, "c12"), (v2, v3, "c23"), (v3, v4, "c34"), (v4, v1, "c41")):
        es = g.edges_between(x, y)
        if len(es) != 1:
            return None
        cyc_edges[name] = es[0]
    u, eu = [], []
    for v in vs:
        rest = [e for e in g.incident(v) if e not in cyc_edges.values()]
        if len(rest) != 1:
            return None
        w = g.other(rest[0], v)
        if w in vs:
            return None
        u.append(w)
        eu.append(rest[0])
    return dict(v=tuple(vs), u=tuple(u), eu=tuple(eu), **cyc_edges)


def reduce_four_cycle(s: EmbeddingScheme, d: dict, n12: int, n34: int) -> EmbeddingScheme:
    v1, v2, v3, v4 = d["v"]
    child = delete_edge(delete_edge(s, d["c23"]), d["c41"])
    child, _ = suppress_vertex(child, v1, n12)
    child, _ = suppress_vertex(child, v2, n12)
    child, _ = suppress_vertex(child, v3, n34)
    child, _ = suppress_vertex(child, v4, n34)
    return child


def _four_cycle_step(s: EmbeddingScheme, cyc) -> ReductionStep | None:
    g = s.graph
    n = g.next_edge_id()
    for vs in _four_cycle_labelings(cyc):
        d = four_cycle_data(g, vs)
        if d is None:
            continue
        u1, u2, u3, u4 = d["u"]
        if u1 == u2 or u3 == u4:
            continue
        child = reduce_four_cycle(s, d, n, n + 1)
        if not is_2_connected(child.graph):
            continue
        d.update(n12=n, n34=n + 1)
        return ReductionStep(FOUR_CYCLE, g, tuple(vs), (child,), d)
    return None


# ---------------------------------------------------------------------------
# lifts


def oriented_faces(s: EmbeddingScheme) -> list[tuple[Arc, ...]]:
    """Faces of an orientable closed 2-cell scheme as a compatibly oriented CDC."""
    if not is_orientable(s) or not is_closed_2cell(s):
        raise ReductionError("child embedding is not an orientable closed 2-cell embedding")
    return [w.arcs for w in normalize(s).face_table.faces]


def _rotate_to(walk: Sequence[Arc], arc: Arc) -> tuple[Arc, ...]:
    i = list(walk).index(arc)
    return tuple(walk[i:]) + tuple(walk[:i])


def _face_with(faces, arc: Arc) -> int:
    for i, f in enumerate(faces):
        if arc in f:
            return i
    raise InternalError(f"no face uses arc {arc}")


def _finish(step: ReductionStep, cycles) -> EmbeddingScheme:
    try:
        out = scheme_from_oriented_cdc(step.graph, OrientedCDC(tuple(cycles)))
    except ValueError as exc:
        raise InternalError(f"{step.kind} lift produced an invalid double cover: {exc}") from exc
    if not (is_orientable(out) and is_closed_2cell(out)):
        raise InternalError(f"{step.kind} lift is not an orientable closed 2-cell embedding")
    return out


def lift_two_edge_cut(children: Sequence[EmbeddingScheme], step: ReductionStep) -> EmbeddingScheme:
    d = step.data
    fa, fb = oriented_faces(children[0]), oriented_faces(children[1])
    a1, a2, b1, b2, e, f = d["a1"], d["a2"], d["b1"], d["b2"], d["e"], d["f"]
    ip, iq = _face_with(fa, (a1, d["nA"])), _face_with(fa, (a2, d["nA"]))
    ir, i_s = _face_with(fb, (b1, d["nB"])), _face_with(fb, (b2, d["nB"]))
    p_rest = _rotate_to(fa[ip], (a1, d["nA"]))[1:]  # a2 .. a1
    q_rest = _rotate_to(fa[iq], (a2, d["nA"]))[1:]  # a1 .. a2
    r_rest = _rotate_to(fb[ir], (b1, d["nB"]))[1:]  # b2 .. b1
    s_rest = _rotate_to(fb[i_s], (b2, d["nB"]))[1:]  # b1 .. b2
    cycles = [c for i, c in enumerate(fa) if i not in (ip, iq)]
    cycles += [c for i, c in enumerate(fb) if i not in (ir, i_s)]
    cycles.append(p_rest + ((a1, e),) + s_rest + ((b2, f),))
    cycles.append(q_rest + ((a2, f),) + r_rest + ((b1, e),))
    return _finish(step, cycles)


def _transitions(faces, x: int) -> dict[int, tuple[int, tuple[Arc, ...]]]:
    """For faces through ``x``: incoming edge -> (outgoing edge, face rotated to leave x)."""
    out = {}
    for c in faces:
        for k, (t, e) in enumerate(c):
            if t == x:
                rot = tuple(c[k:]) + tuple(c[:k])
                out[rot[-1][1]] = (e, rot)
    return out


def lift_three_edge_cut(children: Sequence[EmbeddingScheme], step: ReductionStep) -> EmbeddingScheme:
    d = step.data
    fa, fb = oriented_faces(children[0]), oriented_faces(children[1])
    ta = _transitions(fa, d["xB"])
    tb = _transitions(fb, d["xA"])
    # a parent face enters B along the edge it leaves x_B by and returns along
    # the edge it entered x_B by; reflect B when its rotation agrees with A's
    if any(tb[j][0] != i for i, (j, _) in ta.items()):
        fb = [reverse_walk(c) for c in fb]
        tb = _transitions(fb, d["xA"])
    if any(tb[j][0] != i for i, (j, _) in ta.items()):
        raise InternalError("3-edge-cut rotations cannot be aligned")
    cycles = [c for c in fa if all(t != d["xB"] for t, _ in c)]
    cycles += [c for c in fb if all(t != d["xA"] for t, _ in c)]
    for i, (j, arcs_a) in sorted(ta.items()):
        arcs_b = tb[j][1]
        cycles.append(arcs_a[1:] + arcs_b[1:])
    return _finish(step, cycles)


def _replace(walk: Sequence[Arc], arc: Arc, new: Sequence[Arc]) -> tuple[Arc, ...]:
    i = list(walk).index(arc)
    return tuple(walk[:i]) + tuple(new) + tuple(walk[i + 1:])


def _segment(walk: Sequence[Arc], x: int, y: int) -> tuple[Arc, ...]:
    """Arcs of a cyclic walk from vertex x up to (not including the arc leaving) y."""
    verts = [t for t, _ in walk]
    i, j = verts.index(x), verts.index(y)
    k = len(walk)
    return tuple(walk[(i + t) % k] for t in range((j - i) % k))


def four_cycle_case(faces, d: dict) -> str:
    """Which case of the 4-cycle lift applies to the child faces."""
    u1, u2, u3, u4 = d["u"]
    f1 = _face_with(faces, (u2, d["n12"]))
    f2 = _face_with(faces, (u1, d["n12"]))
    g1 = _face_with(faces, (u3, d["n34"]))
    g2 = _face_with(faces, (u4, d["n34"]))
    if f1 == g2:
        return "i"
    if f2 == g1:
        return "i'"
    if f1 != g1:
        return "ii"
    if f2 != g2:
        return "ii'"
    return "iii"


def lift_four_cycle(child: EmbeddingScheme, step: ReductionStep) -> EmbeddingScheme:
    out, _ = lift_four_cycle_with_case(child, step)
    return out


def lift_four_cycle_with_case(child: EmbeddingScheme, step: ReductionStep) -> tuple[EmbeddingScheme, str]:
    d = step.data
    faces = [tuple(c) for c in oriented_faces(child)]
    v1, v2, v3, v4 = d["v"]
    u1, u2, u3, u4 = d["u"]
    e1, e2, e3, e4 = d["eu"]
    c12, c23, c34, c41 = d["c12"], d["c23"], d["c34"], d["c41"]
    n12, n34 = d["n12"], d["n34"]
    # subdivide: u1 v1 v2 u2 and u3 v3 v4 u4
    sub = {
        (u1, n12): ((u1, e1), (v1, c12), (v2, e2)),
        (u2, n12): ((u2, e2), (v2, c12), (v1, e1)),
        (u3, n34): ((u3, e3), (v3, c34), (v4, e4)),
        (u4, n34): ((u4, e4), (v4, c34), (v3, e3)),
    }
    case = four_cycle_case(faces, d)
    f1 = _face_with(faces, (u2, n12))
    f2 = _face_with(faces, (u1, n12))
    g1 = _face_with(faces, (u3, n34))
    g2 = _face_with(faces, (u4, n34))
    expanded = []
    for c in faces:
        new = []
        for arc in c:
            new.extend(sub.get(arc, (arc,)))
        expanded.append(tuple(new))
    touched = set()
    added = []
    if case == "i":
        F = expanded[f1]
        touched.add(f1)
        added += [_segment(F, v1, v4) + ((v4, c41),),
                  _segment(F, v3, v2) + ((v2, c23),),
                  ((v2, c12), (v1, c41), (v4, c34), (v3, c23))]
    elif case == "i'":
        F = expanded[f2]
        touched.add(f2)
        added += [_segment(F, v2, v3) + ((v3, c23),),
                  _segment(F, v4, v1) + ((v1, c41),),
                  ((v1, c12), (v2, c23), (v3, c34), (v4, c41))]
    elif case == "ii":
        touched.update((f1, g1))
        added.append(_replace(expanded[f1], (v2, c12), ((v2, c23), (v3, c34), (v4, c41))))
        added.append(_replace(expanded[g1], (v3, c34), ((v3, c23), (v2, c12), (v1, c41))))
    elif case == "ii'":
        touched.update((f2, g2))
        added.append(_replace(expanded[f2], (v1, c12), ((v1, c41), (v4, c34), (v3, c23))))
        added.append(_replace(expanded[g2], (v4, c34), ((v4, c41), (v1, c12), (v2, c23))))
    else:
        touched.update((f1, f2))
        F, G = expanded[f1], expanded[f2]
        added += [_segment(F, v1, v4) + ((v4, c41),), _segment(F, v4, v1) + ((v1, c41),),
                  _segment(G, v2, v3) + ((v3, c23),), _segment(G, v3, v2) + ((v2, c23),)]
    cycles = [c for i, c in enumerate(expanded) if i not in touched] + added
    for c in added:
        if len({t for t, _ in c}) != len(c):
            raise InternalError(f"4-cycle lift case {case}: new face is not a cycle")
    return _finish(step, cycles), case


def lift(step: ReductionStep, children: Sequence[EmbeddingScheme]) -> EmbeddingScheme:
    if step.kind == TWO_EDGE_CUT:
        return lift_two_edge_cut(children, step)
    if step.kind == THREE_EDGE_CUT:
        return lift_three_edge_cut(children, step)
    return lift_four_cycle(children[0], step)


def expand_four_cycle(child: EmbeddingScheme, e12: int, e34: int, flip12: bool = False,
                      flip34: bool = False) -> ReductionStep:
    """Inverse of the 4-cycle reduction on a bare child: build the parent graph and step.

    Used to drive the lift through chosen cases on constructed children.
    """
    g = child.graph
    u1, u2 = g.ends(e12)[::-1] if flip12 else g.ends(e12)
    u3, u4 = g.ends(e34)[::-1] if flip34 else g.ends(e34)
    if len({e12, e34}) != 2:
        raise ReductionError("need two distinct edges")
    v1, v2, v3, v4 = range(g.next_vertex_id(), g.next_vertex_id() + 4)
    m = max(g.next_edge_id(), e12 + 1, e34 + 1)
    names = ["e1", "e2", "e3", "e4", "c12", "c23", "c34", "c41"]
    ids = dict(zip(names, range(m, m + 8)))
    edges = {k: val for k, val in g.edges.items() if k not in (e12, e34)}
    edges.update({ids["e1"]: (u1, v1), ids["e2"]: (u2, v2), ids["e3"]: (u3, v3), ids["e4"]: (u4, v4),
                  ids["c12"]: (v1, v2), ids["c23"]: (v2, v3), ids["c34"]: (v3, v4), ids["c41"]: (v4, v1)})
    parent = Graph.make(list(g.vertices) + [v1, v2, v3, v4], edges)
    d = dict(v=(v1, v2, v3, v4), u=(u1, u2, u3, u4),
             eu=(ids["e1"], ids["e2"], ids["e3"], ids["e4"]),
             c12=ids["c12"], c23=ids["c23"], c34=ids["c34"], c41=ids["c41"], n12=e12, n34=e34)
    return ReductionStep(FOUR_CYCLE, parent, (v1, v2, v3, v4), (child,), d)
