"""Signed rotation systems.

A scheme stores, for each vertex, the clockwise cyclic order of its edges
and, for each edge, a signature of +1 or -1. Face tracing convention:
a walk that arrives at vertex ``w`` along edge ``e`` with local orientation
``s`` (the product of signatures seen so far) leaves along the rotation
successor of ``e`` at ``w`` when ``s = +1`` and along the predecessor when
``s = -1``.

Worked example, the theta graph with rotations ``0: (0 1 2)`` and
``1: (0 2 1)``, all signs +1. Leaving 0 along edge 0 we arrive at 1 with
s = +1, the successor of 0 at vertex 1 is 2, so the walk returns to 0 along
edge 2. At 0 the successor of 2 is 0, which closes the walk ``(0,e0)(1,e2)``,
a digon. The other two faces are also digons and chi = 2 - 3 + 3 = 2.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .graph import Graph, is_connected

Arc = tuple[int, int]  # (tail vertex, edge id)
State = tuple[int, int, int]  # (vertex, edge leaving it, local orientation)


class EmbeddingError(ValueError):
    pass


class NonPlanarError(EmbeddingError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class FacialWalk:
    arcs: tuple[Arc, ...]

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(t for t, _ in self.arcs)

    @property
    def edges(self) -> tuple[int, ...]:
        return tuple(e for _, e in self.arcs)

    def __len__(self):
        return len(self.arcs)

    def is_cycle(self) -> bool:
        return len(set(self.vertices)) == len(self.arcs)

    def key(self) -> tuple[int, ...]:
        """Edge cycle up to rotation and reflection."""
        return canonical_edge_cycle(self.edges)


def canonical_edge_cycle(edges: Sequence[int]) -> tuple[int, ...]:
    n = len(edges)
    best = None
    for seq in (tuple(edges), tuple(reversed(edges))):
        for i in range(n):
            cand = seq[i:] + seq[:i]
            if best is None or cand < best:
                best = cand
    return best


def _canonical_rotation(arcs: Sequence[Arc]) -> tuple[Arc, ...]:
    n = len(arcs)
    return min(tuple(arcs[i:]) + tuple(arcs[:i]) for i in range(n))


@dataclass(frozen=True)
class SurfaceId:
    euler_characteristic: int
    orientable: bool

    @property
    def genus(self) -> int:
        chi = self.euler_characteristic
        return (2 - chi) // 2 if self.orientable else 2 - chi

    def name(self) -> str:
        chi = self.euler_characteristic
        if self.orientable:
            return "sphere" if chi == 2 else f"orientable genus {self.genus}"
        return "projective plane" if chi == 1 else f"nonorientable genus {self.genus}"


@dataclass(frozen=True)
class FaceTable:
    faces: tuple[FacialWalk, ...]
    face_of_state: Mapping[State, int]
    # per face, the states of the traced orbit in walk order
    states: tuple[tuple[State, ...], ...]


@dataclass(frozen=True, eq=False)
class EmbeddingScheme:
    graph: Graph
    rotation: Mapping[int, tuple[int, ...]]
    signature: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        g = self.graph
        sig = {e: self.signature.get(e, 1) for e in g.edges}
        object.__setattr__(self, "signature", sig)
        rot = {v: tuple(self.rotation.get(v, ())) for v in g.vertices}
        object.__setattr__(self, "rotation", rot)
        for e, s in sig.items():
            if s not in (1, -1):
                raise EmbeddingError(f"signature of edge {e} must be +1 or -1")
        for v in g.vertices:
            if sorted(rot[v]) != list(g.incident(v)):
                raise EmbeddingError(f"rotation at vertex {v} is not a permutation of its edges")

    def __eq__(self, other):
        if not isinstance(other, EmbeddingScheme):
            return NotImplemented
        return (self.graph == other.graph and self.rotation == other.rotation
                and self.signature == other.signature)

    __hash__ = None

    def __repr__(self):
        neg = sum(1 for s in self.signature.values() if s < 0)
        return f"EmbeddingScheme({self.graph!r}, negative_edges={neg})"

    @cached_property
    def _pos(self) -> dict[int, dict[int, int]]:
        return {v: {e: i for i, e in enumerate(r)} for v, r in self.rotation.items()}

    def succ(self, v: int, e: int) -> int:
        r = self.rotation[v]
        return r[(self._pos[v][e] + 1) % len(r)]

    def pred(self, v: int, e: int) -> int:
        r = self.rotation[v]
        return r[(self._pos[v][e] - 1) % len(r)]

    def step(self, state: State) -> State:
        v, e, s = state
        w = self.graph.other(e, v)
        s2 = s * self.signature[e]
        return (w, self.succ(w, e) if s2 > 0 else self.pred(w, e), s2)

    def reverse_state(self, state: State) -> State:
        v, e, s = state
        return (self.graph.other(e, v), e, -s * self.signature[e])

    @cached_property
    def face_table(self) -> FaceTable:
        g = self.graph
        used: set[State] = set()
        raw = []
        for s0 in (1, -1):
            for v in g.vertices:
                for e in self.rotation[v]:
                    st = (v, e, s0)
                    if st in used:
                        continue
                    orbit = []
                    while st not in used:
                        used.add(st)
                        used.add(self.reverse_state(st))
                        orbit.append(st)
                        st = self.step(st)
                    raw.append(orbit)
        walks = [FacialWalk(_canonical_rotation([(v, e) for v, e, _ in o])) for o in raw]
        order = sorted(range(len(raw)), key=lambda i: walks[i].arcs)
        face_of_state = {}
        for idx, i in enumerate(order):
            for st in raw[i]:
                face_of_state[st] = idx
                face_of_state[self.reverse_state(st)] = idx
        return FaceTable(tuple(walks[i] for i in order), face_of_state,
                         tuple(tuple(raw[i]) for i in order))

    def face_keys(self) -> list[tuple[int, ...]]:
        """Sorted multiset of faces as edge cycles up to rotation and reflection."""
        return sorted(f.key() for f in self.face_table.faces)


def trace_faces(s: EmbeddingScheme) -> list[FacialWalk]:
    if not is_connected(s.graph):
        raise EmbeddingError("graph is disconnected")
    faces = list(s.face_table.faces)
    assert sum(len(f) for f in faces) == 2 * len(s.graph.edges)
    return faces


def euler_characteristic(s: EmbeddingScheme) -> int:
    g = s.graph
    return len(g.vertices) - len(g.edges) + len(s.face_table.faces)


@dataclass(frozen=True)
class Orientability:
    orientable: bool
    switches: frozenset  # vertices to switch so that every signature becomes +1
    bad_edge: int | None = None  # cotree edge that stays negative

    def __bool__(self):
        return self.orientable


def is_orientable(s: EmbeddingScheme) -> Orientability:
    """Spanning-tree potentials; orientable iff every edge agrees with them."""
    g = s.graph
    pot: dict[int, int] = {}
    for root in g.vertices:
        if root in pot:
            continue
        pot[root] = 1
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for e in g.incident(x):
                y = g.other(e, x)
                if y not in pot:
                    pot[y] = pot[x] * s.signature[e]
                    queue.append(y)
    switches = frozenset(v for v, p in pot.items() if p < 0)
    for e in g.edge_ids:
        u, v = g.ends(e)
        if s.signature[e] * pot[u] * pot[v] < 0:
            return Orientability(False, switches, e)
    return Orientability(True, switches)


def surface_id(s: EmbeddingScheme) -> SurfaceId:
    return SurfaceId(euler_characteristic(s), is_orientable(s).orientable)


def is_closed_2cell(s: EmbeddingScheme) -> bool:
    return all(f.is_cycle() for f in s.face_table.faces)


def switch_vertices(s: EmbeddingScheme, vertices: Iterable[int]) -> EmbeddingScheme:
    """Reverse the rotation and negate the incident signatures at each vertex."""
    vs = set(vertices)
    rot = dict(s.rotation)
    sig = dict(s.signature)
    g = s.graph
    for v in vs:
        rot[v] = tuple(reversed(rot[v]))
        for e in g.incident(v):
            sig[e] = -sig[e]
    return EmbeddingScheme(g, rot, sig)


def normalize(s: EmbeddingScheme) -> EmbeddingScheme:
    """Equivalent scheme with every signature +1; requires orientability."""
    cert = is_orientable(s)
    if not cert:
        raise EmbeddingError("scheme is nonorientable")
    out = switch_vertices(s, cert.switches)
    assert all(x == 1 for x in out.signature.values())
    return out


def reflect(s: EmbeddingScheme) -> EmbeddingScheme:
    """Mirror image: every rotation reversed."""
    return EmbeddingScheme(s.graph, {v: tuple(reversed(r)) for v, r in s.rotation.items()},
                           s.signature)


def walk_heads(g: Graph, walk: Sequence[Arc]) -> list[int]:
    return [g.other(e, t) for t, e in walk]


def check_closed_walk(g: Graph, walk: Sequence[Arc]):
    if not walk:
        raise EmbeddingError("empty walk")
    heads = walk_heads(g, walk)
    for i, (t, e) in enumerate(walk):
        if e not in g.edges or t not in g.ends(e):
            raise EmbeddingError(f"arc {i} ({t}, {e}) is not an arc of the graph")
        if heads[i - 1] != t:
            raise EmbeddingError(f"walk is not closed at arc {i}")


def cycle_homology_class(s: EmbeddingScheme, walk: Sequence[Arc]) -> int:
    """Product of signatures along a closed walk (its Z2 orientation class)."""
    check_closed_walk(s.graph, walk)
    prod = 1
    for _, e in walk:
        prod *= s.signature[e]
    return prod


@dataclass(frozen=True)
class DoubleCover:
    scheme: EmbeddingScheme
    deck: Mapping[int, int]
    vertex_projection: Mapping[int, int]
    edge_projection: Mapping[int, int]


def _lift(v: int, sheet: int) -> int:
    return 2 * v + (0 if sheet > 0 else 1)


def orientable_double_cover(s: EmbeddingScheme) -> DoubleCover:
    if is_orientable(s):
        raise EmbeddingError("scheme is orientable; its double cover is disconnected")
    g = s.graph
    edges = {}
    for e, (u, w) in g.edges.items():
        for sheet in (1, -1):
            edges[_lift(e, sheet)] = (_lift(u, sheet), _lift(w, sheet * s.signature[e]))
    verts = [_lift(v, sh) for v in g.vertices for sh in (1, -1)]
    cover_graph = Graph.make(verts, edges)
    rot = {}
    for v in g.vertices:
        for sheet in (1, -1):
            r = s.rotation[v] if sheet > 0 else tuple(reversed(s.rotation[v]))
            lifted = []
            for e in r:
                u = g.ends(e)[0]
                lifted.append(_lift(e, sheet if v == u else sheet * s.signature[e]))
            rot[_lift(v, sheet)] = tuple(lifted)
    cover = EmbeddingScheme(cover_graph, rot, {})
    deck = {x: x ^ 1 for x in verts}
    return DoubleCover(cover, deck, {x: x >> 1 for x in verts}, {x: x >> 1 for x in edges})


# ---------------------------------------------------------------------------
# representativity


def _require_projective(s: EmbeddingScheme):
    sid = surface_id(s)
    if sid.euler_characteristic == 2:
        raise EmbeddingError("representativity undefined on sphere")
    if sid.orientable or sid.euler_characteristic != 1:
        raise EmbeddingError(f"unsupported surface: {sid.name()}")


def _orbits(s: EmbeddingScheme) -> dict[State, int]:
    """Orbit index of every state; orbits are the faces of the orientable double cover."""
    orbit_of: dict[State, int] = {}
    n = 0
    for v in s.graph.vertices:
        for e in s.rotation[v]:
            for sg in (1, -1):
                st = (v, e, sg)
                if st in orbit_of:
                    continue
                while st not in orbit_of:
                    orbit_of[st] = n
                    st = s.step(st)
                n += 1
    return orbit_of


def shortest_noncontractible_curve(s: EmbeddingScheme) -> list[tuple[int, int]]:
    """A shortest noncontractible closed curve as ``[(vertex, face), ...]``.

    The curve leaves each listed vertex through the listed face and enters
    the next vertex; the last face leads back to the first vertex. Found by
    BFS from ``(v, +)`` to ``(v, -)`` in the radial graph of the double cover.
    """
    _require_projective(s)
    orbit_of = _orbits(s)
    orbit_states: dict[int, list[State]] = {}
    for st, o in orbit_of.items():
        orbit_states.setdefault(o, []).append(st)
    for o in orbit_states:
        orbit_states[o].sort()
    best = None
    for v0 in s.graph.vertices:
        start, goal = ("v", v0, 1), ("v", v0, -1)
        parent = {start: None}
        queue = deque([start])
        while queue and goal not in parent:
            node = queue.popleft()
            if node[0] == "v":
                _, v, sg = node
                nbrs = [("o", orbit_of[(v, e, sg)]) for e in s.rotation[v]]
            else:
                nbrs = [("v", v, sg) for v, _, sg in orbit_states[node[1]]]
            for nb in nbrs:
                if nb not in parent:
                    parent[nb] = node
                    queue.append(nb)
        path = [goal]
        while parent[path[-1]] is not None:
            path.append(parent[path[-1]])
        path.reverse()
        if best is None or len(path) < len(best):
            best = path
    face_of_state = s.face_table.face_of_state
    curve = []
    for i in range(0, len(best) - 1, 2):
        _, v, _ = best[i]
        o = best[i + 1][1]
        curve.append((v, face_of_state[orbit_states[o][0]]))
    return curve


def representativity(s: EmbeddingScheme) -> int:
    return len(shortest_noncontractible_curve(s))


# ---------------------------------------------------------------------------
# planar embedding


def planar_embed(g: Graph) -> EmbeddingScheme:
    """A sphere scheme for a connected planar multigraph, all signatures +1."""
    if not is_connected(g):
        raise EmbeddingError("graph is disconnected")
    simple = nx.Graph()
    simple.add_nodes_from(g.vertices)
    simple.add_edges_from(g.edges.values())
    planar, emb = nx.check_planarity(simple, counterexample=True)
    if not planar:
        raise NonPlanarError("graph is not planar", sorted(tuple(sorted(e)) for e in emb.edges))
    for reverse in (True, False):
        rot = {}
        for v in g.vertices:
            order = list(emb.neighbors_cw_order(v)) if len(g.vertices) > 1 else []
            r = []
            for w in order:
                par = g.edges_between(v, w)
                if reverse and v > w:
                    par = par[::-1]
                r.extend(par)
            rot[v] = tuple(r)
        s = EmbeddingScheme(g, rot, {})
        if euler_characteristic(s) == 2:
            return s
    raise AssertionError("parallel edge placement failed")  # pragma: no cover


# ---------------------------------------------------------------------------
# minor operations; each returns a new scheme and never raises the Euler genus


def delete_edge(s: EmbeddingScheme, e: int) -> EmbeddingScheme:
    g = s.graph
    edges = {k: v for k, v in g.edges.items() if k != e}
    rot = {v: tuple(x for x in r if x != e) for v, r in s.rotation.items()}
    sig = {k: v for k, v in s.signature.items() if k != e}
    return EmbeddingScheme(Graph.make(g.vertices, edges), rot, sig)


def delete_vertex(s: EmbeddingScheme, v: int) -> EmbeddingScheme:
    for e in s.graph.incident(v):
        s = delete_edge(s, e)
    g = s.graph
    rot = {x: r for x, r in s.rotation.items() if x != v}
    return EmbeddingScheme(Graph.make([x for x in g.vertices if x != v], g.edges), rot, s.signature)


def contract_edge(s: EmbeddingScheme, e: int) -> EmbeddingScheme:
    """Contract ``e = uw`` into ``u``; parallel edges to ``e`` must be deleted first."""
    g = s.graph
    u, w = g.ends(e)
    if len(g.edges_between(u, w)) > 1:
        raise EmbeddingError(f"contracting edge {e} would create a loop")
    if s.signature[e] < 0:
        s = switch_vertices(s, [w])
    ru, rw = s.rotation[u], s.rotation[w]
    iu, iw = ru.index(e), rw.index(e)
    merged = ru[iu + 1:] + ru[:iu] + rw[iw + 1:] + rw[:iw]
    edges = {}
    for k, (a, b) in g.edges.items():
        if k == e:
            continue
        edges[k] = (u if a == w else a, u if b == w else b)
    rot = {x: r for x, r in s.rotation.items() if x not in (u, w)}
    rot[u] = merged
    sig = {k: v for k, v in s.signature.items() if k != e}
    return EmbeddingScheme(Graph.make([x for x in g.vertices if x != w], edges), rot, sig)


def suppress_vertex(s: EmbeddingScheme, v: int, new_id: int | None = None) -> tuple[EmbeddingScheme, int]:
    """Replace a degree-2 vertex and its two edges by one edge; returns the new edge id."""
    g = s.graph
    if g.degree(v) != 2:
        raise EmbeddingError(f"vertex {v} has degree {g.degree(v)}, not 2")
    a, b = s.rotation[v]
    x, y = g.other(a, v), g.other(b, v)
    if x == y:
        raise EmbeddingError(f"suppressing vertex {v} would create a loop")
    n = g.next_edge_id() if new_id is None else new_id
    edges = {k: val for k, val in g.edges.items() if k not in (a, b)}
    edges[n] = (x, y)
    rot = {}
    for z, r in s.rotation.items():
        if z == v:
            continue
        if z == x:
            r = tuple(n if k == a else k for k in r)
        if z == y:
            r = tuple(n if k == b else k for k in r)
        rot[z] = r
    sig = {k: val for k, val in s.signature.items() if k not in (a, b)}
    sig[n] = s.signature[a] * s.signature[b]
    return EmbeddingScheme(Graph.make([z for z in g.vertices if z != v], edges), rot, sig), n


def subdivide_edge(s: EmbeddingScheme, e: int, vertex: int | None = None) -> tuple[EmbeddingScheme, int, tuple[int, int]]:
    """Insert a vertex on ``e = uw``; returns the scheme, the vertex and the edges (u side, w side)."""
    g = s.graph
    u, w = g.ends(e)
    x = g.next_vertex_id() if vertex is None else vertex
    e1, e2 = g.next_edge_id(), g.next_edge_id() + 1
    edges = {k: v for k, v in g.edges.items() if k != e}
    edges[e1] = (u, x)
    edges[e2] = (x, w)
    rot = dict(s.rotation)
    rot[u] = tuple(e1 if k == e else k for k in rot[u])
    rot[w] = tuple(e2 if k == e else k for k in rot[w])
    rot[x] = (e1, e2)
    sig = {k: v for k, v in s.signature.items() if k != e}
    sig[e1] = s.signature[e]
    sig[e2] = 1
    return EmbeddingScheme(Graph.make(list(g.vertices) + [x], edges), rot, sig), x, (e1, e2)


def scheme_from_faces(g: Graph, faces: Sequence[Sequence[Arc]]) -> EmbeddingScheme:
    """Signed scheme whose facial walks are the given closed walks.

    Every edge must be used twice in total and the corners at each vertex
    must link up into a single cycle. Rotations follow the corner order and
    signatures are then forced face by face.
    """
    corners: dict[int, list[tuple[int, int]]] = {v: [] for v in g.vertices}
    uses: dict[int, int] = {e: 0 for e in g.edges}
    for walk in faces:
        check_closed_walk(g, walk)
        for i, (v, e) in enumerate(walk):
            corners[v].append((walk[i - 1][1], e))
            uses[e] += 1
    for e, k in uses.items():
        if k != 2:
            raise EmbeddingError(f"edge {e} is used {k} times by the faces")
    rot = {}
    for v in g.vertices:
        link: dict[int, list[int]] = {e: [] for e in g.incident(v)}
        for p, e in corners[v]:
            link[p].append(e)
            link[e].append(p)
        if any(len(x) != 2 for x in link.values()):
            raise EmbeddingError(f"corners at vertex {v} do not form a rotation")
        order, prev = [g.incident(v)[0]], None
        for _ in range(g.degree(v) - 1):
            cand = list(link[order[-1]])
            if prev is not None:
                cand.remove(prev)
            prev = order[-1]
            order.append(cand[0])
        if len(set(order)) != g.degree(v):
            raise EmbeddingError(f"corners at vertex {v} do not form a single cycle")
        rot[v] = tuple(order)
    pre = EmbeddingScheme(g, rot, {})
    # local orientation with which each face leaves each of its corners
    first_in: dict[int, int] = {}
    sig: dict[int, int] = {}
    for walk in faces:
        n = len(walk)
        eps = []
        for i, (v, e) in enumerate(walk):
            p = walk[i - 1][1]
            if g.degree(v) == 2:
                # the only freedom is a switch at v, fixed by the first visit
                if v not in first_in:
                    first_in[v] = p
                    eps.append(1)
                else:
                    eps.append(1 if e == first_in[v] else -1)
            else:
                eps.append(1 if pre.succ(v, p) == e else -1)
        for i, (_, e) in enumerate(walk):
            val = eps[i] * eps[(i + 1) % n]
            if sig.setdefault(e, val) != val:
                raise EmbeddingError(f"faces force conflicting signatures on edge {e}")
    out = EmbeddingScheme(g, rot, sig)
    want = sorted(canonical_edge_cycle([e for _, e in w]) for w in faces)
    if out.face_keys() != want:
        raise EmbeddingError("faces are not realisable by a signed rotation system")
    return normalize(out) if is_orientable(out) else out
