"""End-to-end drivers: orientable closed 2-cell embeddings and oriented CDCs."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Sequence

from .embedding import (Arc, EmbeddingScheme, NonPlanarError, euler_characteristic,
                        is_closed_2cell, is_orientable, normalize, planar_embed,
                        representativity, surface_id, trace_faces)
from .graph import Graph, bridges, decompose_eulerian, is_2_connected
from .reductions import (THREE_EDGE_CUT, TWO_EDGE_CUT, ReductionStep, apply_reduction,
                         detect_reduction, is_base_case, lift_four_cycle_with_case,
                         lift_three_edge_cut, lift_two_edge_cut)
from .rings import InternalError, find_odd_ring
from .surgery import OrientedCDC, orient_via_odd_ring


class PipelineError(ValueError):
    pass


@dataclass
class StepRecord:
    kind: str  # reduction kind, "lift", "planar_base" or "odd_ring_surgery"
    depth: int
    vertices: int
    edges: int
    detail: dict = field(default_factory=dict)


@dataclass
class Verification:
    orientable: bool
    closed_2cell: bool
    euler_characteristic: int
    cdc: bool
    same_graph: bool

    @property
    def ok(self) -> bool:
        return self.orientable and self.closed_2cell and self.cdc and self.same_graph


@dataclass
class PipelineReport:
    steps: list[StepRecord]
    scheme: EmbeddingScheme
    verification: Verification

    def kinds(self) -> set[str]:
        return {s.kind for s in self.steps}

    def lift_cases(self) -> set[str]:
        return {s.detail["case"] for s in self.steps if "case" in s.detail}


def verify_ocze(g: Graph, s: EmbeddingScheme) -> Verification:
    same = s.graph == g
    walks = [w.arcs for w in trace_faces(s)]
    if is_orientable(s):
        walks = [w.arcs for w in trace_faces(normalize(s))]
    rep = verify_ocdc(g, OrientedCDC(tuple(walks)))
    return Verification(bool(is_orientable(s)), is_closed_2cell(s), euler_characteristic(s),
                        rep.ok, same)


def _check_input(s: EmbeddingScheme):
    g = s.graph
    if not g.is_cubic():
        raise PipelineError("graph is not cubic")
    if not is_2_connected(g):
        raise PipelineError("graph is not 2-connected")
    sid = surface_id(s)
    if sid.euler_characteristic == 2:
        return
    if sid.euler_characteristic != 1 or sid.orientable:
        raise PipelineError(f"scheme must be on the sphere or projective plane, got {sid.name()}")


def ocze(s: EmbeddingScheme) -> PipelineReport:
    _check_input(s)
    steps: list[StepRecord] = []
    out = _solve(s, steps, 0)
    ver = verify_ocze(s.graph, out)
    if not ver.ok:
        raise InternalError(f"final verification failed: {ver}")
    return PipelineReport(steps, out, ver)


def _solve(s: EmbeddingScheme, steps: list[StepRecord], depth: int) -> EmbeddingScheme:
    g = s.graph
    try:
        _check_input(s)
    except PipelineError as exc:
        raise InternalError(f"reduction produced an invalid child at depth {depth}: {exc}") from exc
    size = (len(g.vertices), len(g.edges))
    step = detect_reduction(s)
    if step is not None:
        detail = {"witness": list(step.witness)}
        steps.append(StepRecord(step.kind, depth, *size, detail))
        children = apply_reduction(step, s)
        outs = [_solve(c, steps, depth + 1) for c in children]
        out, lift_detail = _lift(step, outs)
        _verify_step(g, out, step.kind)
        steps.append(StepRecord("lift", depth, *size, {"of": step.kind, **lift_detail,
                                                       "euler_characteristic": euler_characteristic(out)}))
        return out
    if is_base_case(g) or euler_characteristic(s) == 2 or representativity(s) <= 1:
        try:
            out = planar_embed(g)
        except NonPlanarError as exc:
            raise InternalError(f"planar base case at depth {depth} is not planar") from exc
        steps.append(StepRecord("planar_base", depth, *size, {}))
        return out
    ring = find_odd_ring(s)
    if ring is None:
        raise InternalError(f"no odd ring at depth {depth} although no reduction applies")
    out = orient_via_odd_ring(s, ring)
    _verify_step(g, out, "odd_ring_surgery")
    steps.append(StepRecord("odd_ring_surgery", depth, *size,
                            {"ring": list(ring.faces), "euler_characteristic": euler_characteristic(out)}))
    return out


def _lift(step: ReductionStep, outs: Sequence[EmbeddingScheme]):
    if step.kind == TWO_EDGE_CUT:
        return lift_two_edge_cut(outs, step), {}
    if step.kind == THREE_EDGE_CUT:
        return lift_three_edge_cut(outs, step), {}
    out, case = lift_four_cycle_with_case(outs[0], step)
    return out, {"case": case}


def _verify_step(g: Graph, out: EmbeddingScheme, what: str):
    ver = verify_ocze(g, out)
    if not ver.ok:
        raise InternalError(f"{what} output failed verification: {ver}")


# ---------------------------------------------------------------------------
# general graphs


@dataclass(frozen=True)
class Expansion:
    scheme: EmbeddingScheme
    vertex_of: dict  # expanded vertex -> original vertex
    cycle_edges: frozenset


def expand_vertices(s: EmbeddingScheme) -> Expansion:
    """Replace each vertex of degree d >= 4 by a d-cycle following its rotation."""
    g = s.graph
    low = [v for v in g.vertices if g.degree(v) < 3]
    if low:
        raise PipelineError(f"vertex {low[0]} has degree {g.degree(low[0])} < 3")
    next_v = g.next_vertex_id()
    next_e = g.next_edge_id()
    edges = dict(g.edges)
    rot: dict[int, tuple[int, ...]] = {}
    sig = dict(s.signature)
    vertex_of = {}
    cyc_edges = set()
    ends = {e: list(p) for e, p in g.edges.items()}
    for v in g.vertices:
        r = s.rotation[v]
        d = len(r)
        if d == 3:
            rot[v] = r
            vertex_of[v] = v
            continue
        ids = [v] + list(range(next_v, next_v + d - 1))
        next_v += d - 1
        cs = list(range(next_e, next_e + d))
        next_e += d
        for i in range(d):
            vi = ids[i]
            vertex_of[vi] = v
            e = r[i]
            pair = ends[e]
            # a parallel edge may meet v twice only if it were a loop, which is excluded
            pair[pair.index(v)] = vi
            edges[cs[i]] = (vi, ids[(i + 1) % d])
            sig[cs[i]] = 1
            cyc_edges.add(cs[i])
            rot[vi] = (cs[i - 1], e, cs[i])
    for e, pair in ends.items():
        edges[e] = tuple(pair)
    ng = Graph.make(vertex_of, edges)
    out = EmbeddingScheme(ng, rot, sig)
    assert euler_characteristic(out) == euler_characteristic(s)
    return Expansion(out, vertex_of, frozenset(cyc_edges))


@dataclass
class OcdcReport:
    ok: bool
    problems: list[str]


def verify_ocdc(g: Graph, cdc: OrientedCDC) -> OcdcReport:
    problems = []
    count = {e: [] for e in g.edges}
    for i, c in enumerate(cdc.cycles):
        if not c:
            problems.append(f"cycle {i} is empty")
            continue
        tails = [t for t, _ in c]
        for k, (t, e) in enumerate(c):
            if e not in g.edges or t not in g.edges[e]:
                problems.append(f"cycle {i} arc {k} is not an arc of the graph")
                break
            nt = c[(k + 1) % len(c)][0]
            if g.other(e, t) != nt:
                problems.append(f"cycle {i} is not closed at arc {k}")
                break
            count[e].append(t)
        if len(set(tails)) != len(tails):
            problems.append(f"cycle {i} repeats a vertex")
    for e, ts in count.items():
        if len(ts) != 2:
            problems.append(f"edge {e} lies in {len(ts)} cycles")
        elif ts[0] == ts[1]:
            problems.append(f"edge {e} is traversed twice in the same direction")
    return OcdcReport(not problems, problems)


def ocdc(s: EmbeddingScheme) -> tuple[OrientedCDC, PipelineReport]:
    g = s.graph
    if bridges(g):
        raise PipelineError("graph is not 2-edge-connected")
    ex = expand_vertices(s)
    report = ocze(ex.scheme)
    faces = [w.arcs for w in trace_faces(normalize(report.scheme))]
    cycles: list[tuple[Arc, ...]] = []
    for f in faces:
        arcs = [(ex.vertex_of[t], g.other(e, ex.vertex_of[t]), e) for t, e in f if e not in ex.cycle_edges]
        if not arcs:
            continue
        for cyc in decompose_eulerian(arcs):
            cycles.append(tuple((t, e) for t, _, e in cyc))
    cdc = OrientedCDC(tuple(cycles))
    rep = verify_ocdc(g, cdc)
    if not rep.ok:
        raise InternalError(f"oriented CDC failed verification: {rep.problems[:3]}")
    return cdc, report


def report_dict(report: PipelineReport) -> dict:
    return {
        "steps": [asdict(s) for s in report.steps],
        "verification": asdict(report.verification) | {"ok": report.verification.ok},
    }
