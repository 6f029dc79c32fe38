"""Loopless multigraphs with stable integer vertex and edge ids.

Edges keep their ids through every derived graph, so reductions and lifts
can match edges between a parent and its children without isomorphism
search.
"""
from __future__ import annotations

import itertools
from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence


class GraphError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Graph:
    """A finite multigraph without loops.

    ``edges`` maps an edge id to its endpoint pair. The stored order of the
    pair is only used as the reference direction of the edge.
    """

    vertices: tuple[int, ...]
    edges: Mapping[int, tuple[int, int]] = field(default_factory=dict)

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise GraphError("duplicate vertex ids")
        for eid, (u, v) in self.edges.items():
            if u == v:
                raise GraphError(f"edge {eid} is a loop at vertex {u}")
            if u not in vs or v not in vs:
                raise GraphError(f"edge {eid} has an endpoint outside the vertex set")

    @classmethod
    def make(cls, vertices: Iterable[int], edges: Mapping[int, tuple[int, int]]) -> "Graph":
        return cls(tuple(sorted(set(vertices))), dict(sorted(edges.items())))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertices == other.vertices and dict(self.edges) == dict(other.edges)

    def __hash__(self):
        return hash((self.vertices, tuple(sorted(self.edges.items()))))

    def __repr__(self):
        return f"Graph(|V|={len(self.vertices)}, |E|={len(self.edges)})"

    @cached_property
    def _incidence(self) -> dict[int, tuple[int, ...]]:
        inc = {v: [] for v in self.vertices}
        for eid, (u, v) in self.edges.items():
            inc[u].append(eid)
            inc[v].append(eid)
        return {v: tuple(sorted(es)) for v, es in inc.items()}

    @property
    def edge_ids(self) -> list[int]:
        return sorted(self.edges)

    def incident(self, v: int) -> tuple[int, ...]:
        return self._incidence[v]

    def degree(self, v: int) -> int:
        return len(self._incidence[v])

    def ends(self, e: int) -> tuple[int, int]:
        return self.edges[e]

    def other(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        if v == a:
            return b
        if v == b:
            return a
        raise GraphError(f"vertex {v} is not an end of edge {e}")

    def neighbors(self, v: int) -> set[int]:
        return {self.other(e, v) for e in self._incidence[v]}

    def edges_between(self, u: int, v: int) -> list[int]:
        return [e for e in self._incidence[u] if self.other(e, u) == v]

    def is_cubic(self) -> bool:
        return all(len(es) == 3 for es in self._incidence.values())

    def is_simple(self) -> bool:
        seen = set()
        for u, v in self.edges.values():
            key = (min(u, v), max(u, v))
            if key in seen:
                return False
            seen.add(key)
        return True

    def next_edge_id(self) -> int:
        return max(self.edges, default=-1) + 1

    def next_vertex_id(self) -> int:
        return max(self.vertices, default=-1) + 1


def build_graph(edge_list: Sequence[tuple[int, int]]) -> Graph:
    """Build a graph whose edge ids are the positions in ``edge_list``."""
    edges = {}
    for i, pair in enumerate(edge_list):
        u, v = pair
        if u < 0 or v < 0:
            raise GraphError(f"edge {i} has a negative endpoint")
        if u == v:
            raise GraphError(f"edge {i} is a loop at vertex {u}")
        edges[i] = (u, v)
    verts = {x for pair in edges.values() for x in pair}
    return Graph.make(verts, edges)


# ---------------------------------------------------------------------------
# connectivity


def components(g: Graph, removed_edges=frozenset(), removed_vertices=frozenset()) -> list[frozenset]:
    seen = set(removed_vertices)
    comps = []
    for s in g.vertices:
        if s in seen:
            continue
        comp = {s}
        seen.add(s)
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for e in g.incident(x):
                if e in removed_edges:
                    continue
                y = g.other(e, x)
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    queue.append(y)
        comps.append(frozenset(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return len(components(g)) <= 1


def bridges(g: Graph, removed_edges=frozenset()) -> set[int]:
    """Bridges of ``g`` minus ``removed_edges`` (iterative lowpoint search)."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    found = set()
    counter = itertools.count()
    for root in g.vertices:
        if root in disc:
            continue
        disc[root] = low[root] = next(counter)
        stack = [(root, None, iter(g.incident(root)))]
        while stack:
            v, via, it = stack[-1]
            advanced = False
            for e in it:
                if e == via or e in removed_edges:
                    continue
                w = g.other(e, v)
                if w not in disc:
                    disc[w] = low[w] = next(counter)
                    stack.append((w, e, iter(g.incident(w))))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                parent = stack[-1][0]
                low[parent] = min(low[parent], low[v])
                if low[v] > disc[parent]:
                    found.add(via)
    return found


def is_2_connected(g: Graph) -> bool:
    n = len(g.vertices)
    if n < 2 or not is_connected(g):
        return False
    if n == 2:
        return len(g.edges) >= 2
    return all(len(components(g, removed_vertices={v})) == 1 for v in g.vertices)


@dataclass(frozen=True)
class EdgeCut:
    edges: tuple[int, ...]
    sides: tuple[frozenset, frozenset]

    @property
    def is_trivial(self) -> bool:
        return min(len(s) for s in self.sides) == 1


@dataclass
class ConnectivityReport:
    is_2_connected: bool
    is_2_edge_connected: bool
    two_edge_cuts: list[EdgeCut]
    nontrivial_three_edge_cuts: list[EdgeCut]
    is_cyclically_4_edge_connected: bool


def _cut(g: Graph, cut: tuple[int, ...]) -> EdgeCut:
    comps = components(g, removed_edges=set(cut))
    assert len(comps) == 2, (cut, comps)
    a, b = sorted(comps, key=min)
    return EdgeCut(tuple(sorted(cut)), (a, b))


def connectivity_report(g: Graph) -> ConnectivityReport:
    """Exhaustive minimal 2- and 3-edge-cuts.

    Every pair and triple is covered: a minimal cut {e, f} appears as a
    bridge of g - e, and a minimal cut {e, f, h} as a bridge of g - e - f.
    """
    if not is_connected(g):
        raise GraphError("graph is disconnected")
    base = bridges(g)
    eids = g.edge_ids
    two = set()
    for e in eids:
        if e in base:
            continue
        for f in bridges(g, {e}):
            if f not in base:
                two.add(tuple(sorted((e, f))))
    three = set()
    for e, f in itertools.combinations(eids, 2):
        if e in base or f in base or (e, f) in two:
            continue
        for h in bridges(g, {e, f}):
            if h in base:
                continue
            if tuple(sorted((e, h))) in two or tuple(sorted((f, h))) in two:
                continue
            three.add(tuple(sorted((e, f, h))))
    two_cuts = [_cut(g, c) for c in sorted(two)]
    three_cuts = [c for c in (_cut(g, t) for t in sorted(three)) if not c.is_trivial]
    two_conn = is_2_connected(g)
    c4 = g.is_cubic() and two_conn and not base and not two_cuts and not three_cuts
    return ConnectivityReport(two_conn, not base, two_cuts, three_cuts, c4)


# ---------------------------------------------------------------------------
# cycles


def _canonical_cycle(vs: Sequence[int]) -> tuple[int, ...]:
    n = len(vs)
    i = vs.index(min(vs))
    fwd = tuple(vs[(i + k) % n] for k in range(n))
    bwd = tuple(vs[(i - k) % n] for k in range(n))
    return min(fwd, bwd)


def find_short_cycles(g: Graph, max_len: int = 4) -> list[tuple[int, ...]]:
    """All 3- and 4-cycles as vertex tuples, one per rotation/reflection class."""
    if max_len > 4:
        raise GraphError("max_len must be at most 4")
    found = set()
    for start in g.vertices:
        # cycles whose smallest vertex is ``start``
        stack = [(start,)]
        while stack:
            path = stack.pop()
            last = path[-1]
            for w in g.neighbors(last):
                if w == start and len(path) >= 3:
                    found.add(_canonical_cycle(path))
                elif w > start and w not in path and len(path) < max_len:
                    stack.append(path + (w,))
    return sorted(found, key=lambda c: (len(c), c))


def decompose_eulerian(arcs: Sequence[tuple[int, int, int]]) -> list[list[tuple[int, int, int]]]:
    """Split a balanced multiset of arcs ``(tail, head, eid)`` into directed cycles.

    At every vertex the smallest unused outgoing arc (by edge id) is taken
    next, and closed trails are split wherever a vertex repeats.
    """
    balance = defaultdict(int)
    out = defaultdict(list)
    for idx, (t, h, e) in enumerate(arcs):
        if t == h:
            raise GraphError(f"arc {idx} is a loop")
        balance[t] += 1
        balance[h] -= 1
        out[t].append((e, idx))
    bad = sorted(v for v, b in balance.items() if b)
    if bad:
        raise GraphError(f"vertex {bad[0]} has in-degree != out-degree")
    for v in out:
        out[v].sort(reverse=True)
    used = [False] * len(arcs)
    order = sorted(range(len(arcs)), key=lambda i: (arcs[i][2], i))
    cycles = []
    for first in order:
        if used[first]:
            continue
        # greedy closed trail from ``first``
        used[first] = True
        trail = [arcs[first]]
        start, cur = arcs[first][0], arcs[first][1]
        while cur != start:
            while used[out[cur][-1][1]]:
                out[cur].pop()
            _, idx = out[cur].pop()
            used[idx] = True
            trail.append(arcs[idx])
            cur = arcs[idx][1]
        # split at repeated vertices
        stack: list[tuple[int, int, int]] = []
        pos = {start: 0}
        for arc in trail:
            stack.append(arc)
            h = arc[1]
            if h in pos:
                k = pos[h]
                cyc = stack[k:]
                del stack[k:]
                for a in cyc:
                    pos.pop(a[1], None)
                pos[h] = k
                cycles.append(cyc)
            else:
                pos[h] = len(stack)
    return cycles
