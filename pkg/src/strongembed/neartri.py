"""Near-triangulations with an outer 4-cycle.

Such a graph H plus one extra vertex joined to the outer cycle is a
triangulation T of the sphere. H has no separating triangle and no chord
of its outer cycle exactly when T has no separating triangle, that is,
when T is 4-connected. Enumeration therefore runs over 4-connected
triangulations and deletes a degree-4 vertex.

Triangulations are stored as sets of oriented triangles ``(a, b, c)``
rotated so that the smallest vertex comes first.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import networkx as nx

from .embedding import EmbeddingScheme, planar_embed, trace_faces
from .graph import Graph
from .rings import RingError, boundary_paths, disk_region, touch_table

Tri = tuple[int, int, int]


class NearTriError(ValueError):
    pass


def _norm(t: Sequence[int]) -> Tri:
    i = t.index(min(t))
    return tuple(t[i:]) + tuple(t[:i])


# ---------------------------------------------------------------------------
# triangulations as oriented face sets


def rotation_of(faces: Iterable[Tri]) -> dict[int, list[int]]:
    """Cyclic neighbour order at each vertex, read off the oriented faces."""
    succ: dict[int, dict[int, int]] = {}
    for f in faces:
        k = len(f)
        for i in range(k):
            succ.setdefault(f[i], {})[f[(i + 1) % k]] = f[i - 1]
    rot = {}
    for v, nxt in succ.items():
        start = min(nxt)
        order = [start]
        while nxt[order[-1]] != start:
            order.append(nxt[order[-1]])
            if len(order) > len(nxt):
                raise NearTriError(f"faces at vertex {v} do not close up")
        if len(order) != len(nxt):
            raise NearTriError(f"faces at vertex {v} do not form a disk")
        rot[v] = order
    return rot


def canonical_code(faces: Iterable[Tri]) -> tuple:
    """Isomorphism invariant of a triangulation, mirror images identified."""
    rot = rotation_of(faces)
    best = None
    for mirror in (False, True):
        r = {v: (ns[::-1] if mirror else ns) for v, ns in rot.items()}
        pos = {v: {w: i for i, w in enumerate(ns)} for v, ns in r.items()}
        low = min(len(ns) for ns in r.values())
        for u in r:
            if len(r[u]) != low:
                continue
            for v in r[u]:
                code = _bfs_code(r, pos, u, v, best)
                if code is not None and (best is None or code < best):
                    best = code
    return best


def _bfs_code(r, pos, u, v, bound):
    num = {u: 0}
    ref = {u: v}
    queue = deque([u])
    code = []
    while queue:
        x = queue.popleft()
        ns = r[x]
        k = pos[x][ref[x]]
        for t in range(len(ns)):
            w = ns[(k + t) % len(ns)]
            if w not in num:
                num[w] = len(num)
                ref[w] = x
                queue.append(w)
            code.append(num[w])
        code.append(-1)
        if bound is not None and tuple(code) > bound[:len(code)]:
            return None
    return tuple(code)


def has_separating_triangle(faces: Iterable[Tri]) -> bool:
    faces = set(faces)
    rot = rotation_of(faces)
    adj = {v: set(ns) for v, ns in rot.items()}
    facial = {frozenset(f) for f in faces}
    for a in adj:
        for b in adj[a]:
            if b <= a:
                continue
            for c in adj[a] & adj[b]:
                if c > b and frozenset((a, b, c)) not in facial:
                    return True
    return False


def is_four_connected(faces: Iterable[Tri]) -> bool:
    faces = set(faces)
    rot = rotation_of(faces)
    if len(rot) < 6 or min(len(ns) for ns in rot.values()) < 4:
        return False
    return not has_separating_triangle(faces)


def octahedron() -> frozenset:
    # vertices 0 and 5 are the poles, 1..4 the equator
    faces = []
    for i in range(4):
        a, b = 1 + i, 1 + (i + 1) % 4
        faces.append((0, a, b))
        faces.append((5, b, a))
    return frozenset(_norm(f) for f in faces)


def _faces_at(faces, v):
    return [f for f in faces if v in f]


def vertex_splits(faces: frozenset) -> Iterator[frozenset]:
    """All splits of a vertex into two adjacent vertices of degree >= 4."""
    rot = rotation_of(faces)
    n = max(rot) + 1
    for v, ns in rot.items():
        d = len(ns)
        for i in range(d):
            for j in range(d):
                if (j - i) % d < 2 or (i - j) % d < 2:
                    continue
                b_arc = {ns[(j + t) % d] for t in range((i - j) % d)}  # w_j .. w_{i-1}
                out = set()
                for f in faces:
                    if v not in f:
                        out.add(f)
                        continue
                    k = f.index(v)
                    a, b = f[(k + 1) % 3], f[(k + 2) % 3]
                    out.add(_norm((n, a, b)) if a in b_arc else f)
                out.add(_norm((v, ns[j], n)))
                out.add(_norm((n, ns[i], v)))
                yield frozenset(out)


def edge_flips(faces: frozenset) -> Iterator[frozenset]:
    rot = rotation_of(faces)
    adj = {v: set(ns) for v, ns in rot.items()}
    for f in faces:
        for k in range(3):
            u, v, x = f[k], f[(k + 1) % 3], f[(k + 2) % 3]
            if u > v:
                continue
            # the other face on uv is (v, u, y)
            y = next(g[(g.index(u) + 1) % 3] for g in faces if v in g and u in g and g != f)
            if y in adj[x]:
                continue
            out = set(faces) - {f, _norm((v, u, y))}
            out.add(_norm((x, u, y)))
            out.add(_norm((y, v, x)))
            yield frozenset(out)


def edge_contractions(faces: frozenset) -> Iterator[frozenset]:
    rot = rotation_of(faces)
    for u, ns in rot.items():
        for v in ns:
            if v < u:
                continue
            out = set()
            for f in faces:
                if u in f and v in f:
                    continue
                out.add(_norm(tuple(u if x == v else x for x in f)))
            if len(out) == len(faces) - 2:
                yield frozenset(out)


def four_connected_triangulations(max_vertices: int) -> dict[int, list[frozenset]]:
    """All 4-connected triangulations with 6..max_vertices vertices, one per class.

    Closure of the octahedron under vertex splits, edge contractions and
    edge flips that stay inside the class.
    """
    seen: dict[tuple, frozenset] = {}
    start = octahedron()
    if max_vertices < 6:
        return {}
    seen[canonical_code(start)] = start
    queue = deque([start])
    while queue:
        t = queue.popleft()
        n = len({x for f in t for x in f})
        moves = []
        if n < max_vertices:
            moves.append(vertex_splits(t))
        if n > 6:
            moves.append(edge_contractions(t))
        moves.append(edge_flips(t))
        for cand in itertools.chain(*moves):
            try:
                ok = is_four_connected(cand)
            except NearTriError:
                continue
            if not ok:
                continue
            code = canonical_code(cand)
            if code not in seen:
                seen[code] = _relabel(cand)
                queue.append(seen[code])
    out: dict[int, list[frozenset]] = {}
    for code, t in sorted(seen.items()):
        out.setdefault(len({x for f in t for x in f}), []).append(t)
    return out


def _relabel(faces: frozenset) -> frozenset:
    vs = sorted({x for f in faces for x in f})
    m = {v: i for i, v in enumerate(vs)}
    return frozenset(_norm(tuple(m[x] for x in f)) for f in faces)


# ---------------------------------------------------------------------------
# near-triangulations


@dataclass(frozen=True)
class NearTriangulation:
    faces: frozenset  # inner triangles, oriented
    outer: tuple[int, ...]  # outer cycle, in order

    @property
    def vertices(self) -> frozenset:
        return frozenset(x for f in self.faces for x in f) | frozenset(self.outer)

    @property
    def interior(self) -> frozenset:
        return self.vertices - frozenset(self.outer)

    def adjacency(self) -> dict[int, set[int]]:
        adj = {v: set() for v in self.vertices}
        for f in self.faces:
            for a, b in itertools.combinations(f, 2):
                adj[a].add(b)
                adj[b].add(a)
        return adj

    def degree(self, v: int) -> int:
        return len(self.adjacency()[v])

    def graph(self) -> Graph:
        adj = self.adjacency()
        pairs = sorted({(min(a, b), max(a, b)) for a in adj for b in adj[a]})
        return Graph.make(self.vertices, dict(enumerate(pairs)))

    def scheme(self) -> EmbeddingScheme:
        """Planar scheme; the outer face is the outer cycle."""
        g = self.graph()
        rot = rotation_of(self._closed_faces())
        eid = {frozenset(p): e for e, p in g.edges.items()}
        return EmbeddingScheme(g, {v: tuple(eid[frozenset((v, w))] for w in ns) for v, ns in rot.items()}, {})

    def _closed_faces(self) -> set:
        # close the disk with the outer cycle, oriented against the inner triangles
        succ = {}
        for a, b, c in self.faces:
            succ[(a, b)] = succ[(b, c)] = succ[(c, a)] = True
        o = list(self.outer)
        if any((o[i], o[(i + 1) % len(o)]) in succ for i in range(len(o))):
            o.reverse()
        return set(self.faces) | {tuple(o)}


def from_triangulation(t: frozenset, apex: int) -> NearTriangulation:
    rot = rotation_of(t)
    outer = tuple(rot[apex])
    faces = frozenset(f for f in t if apex not in f)
    return NearTriangulation(faces, outer)


def from_scheme(s: EmbeddingScheme, outer: Sequence[int]) -> NearTriangulation:
    g = s.graph
    if not g.is_simple():
        raise NearTriError("graph is not simple")
    walks = trace_faces(s)
    if len(g.vertices) - len(g.edges) + len(walks) != 2:
        raise NearTriError("scheme is not planar")
    outer = tuple(outer)
    tris, found = [], False
    for w in walks:
        vs = w.vertices
        if len(vs) == len(outer) and set(vs) == set(outer) and not found:
            found = True
            continue
        if len(vs) != 3 or len(set(vs)) != 3:
            raise NearTriError(f"inner face {vs} is not a triangle")
        tris.append(vs)
    if not found:
        raise NearTriError("outer cycle is not a face")
    # orient every triangle consistently by walking the dual
    faces = _orient(tris)
    h = NearTriangulation(frozenset(faces), outer)
    _check_outer(h)
    return h


def _orient(tris: list[tuple[int, ...]]) -> list[Tri]:
    by_edge: dict[frozenset, list[int]] = {}
    for i, t in enumerate(tris):
        for a, b in ((t[0], t[1]), (t[1], t[2]), (t[2], t[0])):
            by_edge.setdefault(frozenset((a, b)), []).append(i)
    out: dict[int, tuple] = {}
    for root in range(len(tris)):
        if root in out:
            continue
        out[root] = tuple(tris[root])
        queue = deque([root])
        while queue:
            i = queue.popleft()
            t = out[i]
            for a, b in ((t[0], t[1]), (t[1], t[2]), (t[2], t[0])):
                for j in by_edge[frozenset((a, b))]:
                    if j in out:
                        continue
                    u = tris[j]
                    # neighbour must traverse the shared edge as b -> a
                    k = u.index(b)
                    out[j] = tuple(u) if u[(k + 1) % 3] == a else tuple(reversed(u))
                    queue.append(j)
    return [_norm(out[i]) for i in range(len(tris))]


def _check_outer(h: NearTriangulation):
    adj = h.adjacency()
    o = h.outer
    for i in range(len(o)):
        if o[(i + 1) % len(o)] not in adj[o[i]]:
            raise NearTriError("outer cycle is not a cycle of the graph")


def check_class(h: NearTriangulation) -> list[str]:
    """Violated hypotheses of the parity proposition (empty if all hold)."""
    problems = []
    if len(h.outer) != 4 or len(set(h.outer)) != 4:
        problems.append("outer face is not a 4-cycle")
    if not h.interior:
        problems.append("no interior vertex")
    adj = h.adjacency()
    facial = {frozenset(f) for f in h.faces}
    for a, b, c in itertools.combinations(sorted(h.vertices), 3):
        if b in adj[a] and c in adj[a] and c in adj[b] and frozenset((a, b, c)) not in facial:
            problems.append(f"separating triangle {(a, b, c)}")
            break
    v = len(h.vertices)
    e = sum(len(x) for x in adj.values()) // 2
    if v - e + len(h.faces) + 1 != 2:
        problems.append("Euler formula fails")
    return problems


def chordless_interior_paths(h: NearTriangulation, x: int, y: int) -> list[tuple[int, ...]]:
    """Induced xy-paths whose internal vertices are all interior."""
    adj = h.adjacency()
    if y in adj[x]:
        raise NearTriError(f"{x} and {y} are adjacent")
    inner = h.interior
    out = []

    def rec(path):
        last = path[-1]
        if y in adj[last]:
            if all(y not in adj[p] for p in path[:-1]):
                out.append(tuple(path) + (y,))
            return
        for w in sorted(adj[last]):
            if w not in inner or w in path:
                continue
            if any(w in adj[p] for p in path[:-1]):
                continue
            rec(path + [w])

    rec([x])
    return sorted(out, key=lambda p: (len(p), p))


@dataclass(frozen=True)
class Prop45Verdict:
    kind: str  # "mixed_parity", "uniform_parity_with_deg4_witness", or a counterexample kind
    paths: tuple[tuple[int, ...], ...] = ()
    witness_vertex: int | None = None

    @property
    def counterexample(self) -> bool:
        return self.kind.startswith("counterexample")


def check_prop45(h: NearTriangulation) -> Prop45Verdict:
    problems = check_class(h)
    if problems:
        raise NearTriError("; ".join(problems))
    v1, _, v3, _ = h.outer
    paths = chordless_interior_paths(h, v1, v3)
    if not paths:
        return Prop45Verdict("counterexample_i")
    by_parity = {}
    for p in paths:
        by_parity.setdefault((len(p) - 1) % 2, p)
    if len(by_parity) == 2:
        return Prop45Verdict("mixed_parity", (by_parity[0], by_parity[1]))
    deg4 = sorted(v for v in h.interior if h.degree(v) == 4)
    if not deg4:
        return Prop45Verdict("counterexample_ii", tuple(paths))
    return Prop45Verdict("uniform_parity_with_deg4_witness", (paths[0],), deg4[0])


def class_members(max_vertices: int) -> Iterator[tuple[frozenset, NearTriangulation]]:
    """Every member up to ``max_vertices`` vertices, once per labelling of v1/v3.

    Isomorphic copies may repeat; each (triangulation, apex, v1) choice is
    produced once.
    """
    tris = four_connected_triangulations(max_vertices + 1)
    for n in sorted(tris):
        for t in tris[n]:
            rot = rotation_of(t)
            for apex in sorted(v for v, ns in rot.items() if len(ns) == 4):
                h = from_triangulation(t, apex)
                for k in range(2):
                    o = h.outer[k:] + h.outer[:k]
                    yield t, NearTriangulation(h.faces, o)


@dataclass
class SweepReport:
    max_vertices: int
    triangulations: int
    instances: int
    mixed: int
    uniform: int
    counterexamples: list


def sweep(max_vertices: int) -> SweepReport:
    tris = set()
    instances = mixed = uniform = 0
    bad = []
    for t, h in class_members(max_vertices):
        tris.add(t)
        instances += 1
        problems = check_class(h)
        if problems:
            bad.append((h, "generator produced a non-member: " + problems[0]))
            continue
        verdict = check_prop45(h)
        if verdict.counterexample:
            bad.append((h, verdict.kind))
        elif verdict.kind == "mixed_parity":
            mixed += 1
        else:
            uniform += 1
    return SweepReport(max_vertices, len(tris), instances, mixed, uniform, bad)


# ---------------------------------------------------------------------------
# cutsets


@dataclass(frozen=True)
class CutsetShape:
    cutset: frozenset
    shape: str  # "chordless separating cycle", "chordless interior path" or "other"
    order: tuple[int, ...]


def _separates(adj, x, y, cut) -> bool:
    seen = {x}
    stack = [x]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w == y:
                return False
            if w not in cut and w not in seen:
                seen.add(w)
                stack.append(w)
    return True


def minimal_cutset_shape(h: NearTriangulation, x: int, y: int) -> CutsetShape:
    """Smallest xy-separating vertex set (brute force) and its induced shape."""
    adj = h.adjacency()
    if y in adj[x]:
        raise NearTriError(f"{x} and {y} are adjacent")
    others = sorted(h.vertices - {x, y})
    for k in range(1, len(others) + 1):
        for cut in itertools.combinations(others, k):
            if _separates(adj, x, y, set(cut)):
                return classify_cutset(h, frozenset(cut))
    raise NearTriError("no separating set")  # pragma: no cover


def classify_cutset(h: NearTriangulation, cut: frozenset) -> CutsetShape:
    adj = h.adjacency()
    sub = {v: adj[v] & cut for v in cut}
    g = nx.Graph()
    g.add_nodes_from(cut)
    g.add_edges_from((a, b) for a in sub for b in sub[a])
    degs = [len(sub[v]) for v in cut]
    outer = set(h.outer)
    if len(cut) >= 3 and nx.is_connected(g) and all(d == 2 for d in degs):
        cyc = [e[0] for e in nx.find_cycle(g)]
        return CutsetShape(cut, "chordless separating cycle", tuple(cyc))
    if nx.is_connected(g) and nx.is_forest(g) and max(degs, default=0) <= 2:
        ends = [v for v in cut if len(sub[v]) <= 1]
        order = _path_order(sub, min(ends))
        internal_ok = all(v not in outer for v in order[1:-1])
        if set((order[0], order[-1])) <= outer and internal_ok:
            return CutsetShape(cut, "chordless interior path", order)
    return CutsetShape(cut, "other", tuple(sorted(cut)))


def _path_order(sub, start):
    order = [start]
    while True:
        nxt = [w for w in sub[order[-1]] if w not in order]
        if not nxt:
            return tuple(order)
        order.append(nxt[0])


def observation_c0(h: NearTriangulation, x: int, y: int):
    """An interior xy-path, else an x-jumping chord of the outer cycle minus y."""
    o = list(h.outer)
    if x not in o or y not in o:
        raise NearTriError("x and y must be on the outer cycle")
    i, j = o.index(x), o.index(y)
    if (i - j) % len(o) in (1, len(o) - 1):
        raise NearTriError("xy is an edge of the outer cycle")
    adj = h.adjacency()
    inner = h.interior
    prev = {x: None}
    queue = deque([x])
    while queue:
        v = queue.popleft()
        for w in sorted(adj[v]):
            if w == y:
                path = [y, v]
                while prev[path[-1]] is not None:
                    path.append(prev[path[-1]])
                return ("interior_path", tuple(reversed(path)))
            if w in inner and w not in prev:
                prev[w] = v
                queue.append(w)
    # outer cycle minus y is a path; x splits it in two
    k = len(o)
    line = [o[(j + 1 + t) % k] for t in range(k - 1)]
    cut_at = line.index(x)
    left, right = set(line[:cut_at]), set(line[cut_at + 1:])
    for a in left:
        for b in adj[a] & right:
            return ("jumping_chord", (a, b))
    raise NearTriError("neither alternative holds")


# ---------------------------------------------------------------------------
# the dual of a disk region


@dataclass(frozen=True)
class DualDisk:
    neartri: NearTriangulation
    # H vertices 0..3 are B1..B4, vertex 4 + f is face f of the cubic scheme
    boundary_paths: tuple[tuple[int, ...], ...]


def build_dual_neartri(s: EmbeddingScheme, faces: Iterable[int]) -> DualDisk:
    """Intersection graph of B1..B4 and the face closures inside a 4-leg disk."""
    if not s.graph.is_cubic():
        raise NearTriError("graph must be cubic")
    try:
        region = disk_region(s, faces)
        paths = boundary_paths(s, region)
    except RingError as exc:
        raise NearTriError(str(exc)) from exc
    table = touch_table(s)
    sets = [set(p) for p in paths]
    fverts = {f: set(s.face_table.faces[f].vertices) for f in region.faces}
    nodes = [0, 1, 2, 3] + [4 + f for f in sorted(region.faces)]
    edges = set()
    for i, j in itertools.combinations(range(4), 2):
        if sets[i] & sets[j]:
            edges.add((i, j))
    for f in region.faces:
        for i in range(4):
            if fverts[f] & sets[i]:
                edges.add((i, 4 + f))
        for g in region.faces:
            if f < g and (f, g) in table:
                edges.add((4 + f, 4 + g))
    apex = max(nodes) + 1
    allp = sorted(edges) + [(i, apex) for i in range(4)]
    g = Graph.make(nodes + [apex], dict(enumerate(allp)))
    planar = planar_embed(g)
    tris = [w.vertices for w in trace_faces(planar)]
    if any(len(t) != 3 for t in tris):
        raise NearTriError("intersection graph is not a near-triangulation")
    t = frozenset(_norm(x) for x in _orient([tuple(x) for x in tris]))
    h = from_triangulation(t, apex)
    k = h.outer.index(0)
    outer = h.outer[k:] + h.outer[:k]
    if outer[1] != 1:
        outer = (outer[0],) + tuple(reversed(outer[1:]))
    h = NearTriangulation(h.faces, outer)
    problems = check_class(h)
    if problems:
        raise NearTriError("; ".join(problems))
    return DualDisk(h, tuple(paths))
