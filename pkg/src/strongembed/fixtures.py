"""Fixture corpus.

Every scheme here is produced by a search or a checked construction, and
the properties the tests rely on are re-verified there, not assumed.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Sequence

from .embedding import (Arc, EmbeddingError, EmbeddingScheme, canonical_edge_cycle,
                        euler_characteristic, is_closed_2cell, is_orientable, planar_embed,
                        scheme_from_faces)
from .graph import Graph, build_graph


def walk_from_vertices(g: Graph, vs: Sequence[int]) -> list[Arc]:
    """Arcs of the closed walk through ``vs`` in a simple graph."""
    out = []
    for i, v in enumerate(vs):
        w = vs[(i + 1) % len(vs)]
        (e,) = g.edges_between(v, w)
        out.append((v, e))
    return out


def simple_cycles(g: Graph, max_len: int | None = None) -> list[tuple[Arc, ...]]:
    """All simple cycles (multigraph aware), one directed copy each."""
    limit = max_len or len(g.vertices)
    seen = set()
    out = []
    for start in g.vertices:
        stack = [(start, (), frozenset([start]))]
        while stack:
            v, arcs, used = stack.pop()
            for e in g.incident(v):
                w = g.other(e, v)
                if arcs and e == arcs[-1][1]:
                    continue
                if w == start and len(arcs) >= 1:
                    cyc = arcs + ((v, e),)
                    key = canonical_edge_cycle([x for _, x in cyc])
                    if key not in seen:
                        seen.add(key)
                        out.append(cyc)
                elif w > start and w not in used and len(arcs) + 1 < limit:
                    stack.append((w, arcs + ((v, e),), used | {w}))
    out.sort(key=lambda c: (len(c), canonical_edge_cycle([x for _, x in c])))
    return out


def search_cdc_embedding(g: Graph, n_faces: int, orientable: bool | None = None,
                         max_len: int | None = None) -> EmbeddingScheme | None:
    """First closed 2-cell scheme whose faces are ``n_faces`` simple cycles."""
    cycles = simple_cycles(g, max_len)
    by_edge: dict[int, list[int]] = {e: [] for e in g.edges}
    for i, c in enumerate(cycles):
        for _, e in c:
            by_edge[e].append(i)
    cover = {e: 0 for e in g.edges}
    chosen: list[int] = []

    def rec():
        pivot = next((e for e in g.edge_ids if cover[e] < 2), None)
        if pivot is None:
            if len(chosen) != n_faces:
                return None
            try:
                s = scheme_from_faces(g, [cycles[i] for i in chosen])
            except EmbeddingError:
                return None
            if orientable is not None and bool(is_orientable(s)) != orientable:
                return None
            return s
        if len(chosen) >= n_faces:
            return None
        for i in by_edge[pivot]:
            if i in chosen:
                continue
            es = _edges(cycles[i])
            if any(cover[e] >= 2 for e in es):
                continue
            for e in es:
                cover[e] += 1
            chosen.append(i)
            found = rec()
            chosen.pop()
            for e in es:
                cover[e] -= 1
            if found is not None:
                return found
        return None

    return rec()


def _edges(cycle) -> list[int]:
    return [e for _, e in cycle]


def complete_rotations(g: Graph, fixed: dict[int, tuple[int, ...]], signature: dict[int, int],
                       target_chi: int) -> EmbeddingScheme | None:
    """Try every rotation at the non-fixed vertices until chi hits the target."""
    free = [v for v in g.vertices if v not in fixed]
    options = []
    for v in free:
        first, *rest = g.incident(v)
        options.append([(first,) + p for p in itertools.permutations(rest)])
    for combo in itertools.product(*options):
        rot = dict(fixed)
        rot.update(zip(free, combo))
        s = EmbeddingScheme(g, rot, signature)
        if euler_characteristic(s) == target_chi and is_closed_2cell(s):
            return s
    return None


# ---------------------------------------------------------------------------
# graphs


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(outer + spokes + inner)


def complete_graph(n: int) -> Graph:
    return build_graph(list(itertools.combinations(range(n), 2)))


def k33_graph() -> Graph:
    return build_graph([(a, b) for a in range(3) for b in range(3, 6)])


def theta_graph() -> Graph:
    return build_graph([(0, 1), (0, 1), (0, 1)])


def cube_graph() -> Graph:
    return build_graph([(a, b) for a in range(8) for b in range(a + 1, 8) if bin(a ^ b).count("1") == 1])


def dodecahedron_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    up = [(i, i + 5) for i in range(5)]
    mid = [(5 + i, 10 + i) for i in range(5)] + [(10 + i, 5 + (i + 1) % 5) for i in range(5)]
    down = [(10 + i, 15 + i) for i in range(5)]
    inner = [(15 + i, 15 + (i + 1) % 5) for i in range(5)]
    return build_graph(outer + up + mid + down + inner)


# ---------------------------------------------------------------------------
# schemes


@lru_cache(maxsize=None)
def petersen() -> EmbeddingScheme:
    """Hemi-dodecahedron: six pentagons on the projective plane."""
    s = search_cdc_embedding(petersen_graph(), 6, orientable=False, max_len=5)
    assert s is not None
    return s


@lru_cache(maxsize=None)
def k33_toroidal() -> EmbeddingScheme:
    """Three hamilton faces on the torus."""
    s = search_cdc_embedding(k33_graph(), 3, orientable=True)
    assert s is not None
    return s


@lru_cache(maxsize=None)
def k33_projective() -> EmbeddingScheme:
    s = search_cdc_embedding(k33_graph(), 4, orientable=False)
    assert s is not None
    return s


@lru_cache(maxsize=None)
def k4() -> EmbeddingScheme:
    return planar_embed(complete_graph(4))


@lru_cache(maxsize=None)
def theta() -> EmbeddingScheme:
    return planar_embed(theta_graph())


@lru_cache(maxsize=None)
def cube() -> EmbeddingScheme:
    return planar_embed(cube_graph())


@lru_cache(maxsize=None)
def dodecahedron() -> EmbeddingScheme:
    return planar_embed(dodecahedron_graph())


def _from_triangles(g: Graph, faces) -> EmbeddingScheme:
    return scheme_from_faces(g, [walk_from_vertices(g, f) for f in faces])


@lru_cache(maxsize=None)
def k6_projective() -> EmbeddingScheme:
    """Hemi-icosahedron: ten triangles."""
    tris = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
            (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)]
    return _from_triangles(complete_graph(6), tris)


@lru_cache(maxsize=None)
def k5_projective() -> EmbeddingScheme:
    faces = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (1, 2, 4), (3, 4, 1), (0, 4, 2, 3, 1)]
    return _from_triangles(complete_graph(5), faces)


@lru_cache(maxsize=None)
def digon_projective() -> EmbeddingScheme:
    """Two parallel edges, one of them negative."""
    return EmbeddingScheme(build_graph([(0, 1), (0, 1)]), {0: (0, 1), 1: (0, 1)}, {1: -1})


# ---------------------------------------------------------------------------
# composite constructions


def replace_edge_with_gadget(s: EmbeddingScheme, e: int) -> EmbeddingScheme:
    """Swap edge ``uw`` for ``u - (K4 minus an edge) - w``; creates a 2-edge-cut."""
    g = s.graph
    u, w = g.ends(e)
    a, b, c, d = range(g.next_vertex_id(), g.next_vertex_id() + 4)
    n = g.next_edge_id()
    edges = {k: v for k, v in g.edges.items() if k != e}
    edges[e] = (u, a)
    new = [(a, c), (a, d), (b, c), (b, d), (c, d), (b, w)]
    for i, pair in enumerate(new):
        edges[n + i] = pair
    ng = Graph.make(list(g.vertices) + [a, b, c, d], edges)
    fixed = dict(s.rotation)
    fixed[w] = tuple(n + 5 if k == e else k for k in s.rotation[w])
    out = complete_rotations(ng, fixed, dict(s.signature), euler_characteristic(s))
    assert out is not None
    return out


def replace_vertex_with_gadget(s: EmbeddingScheme, v: int, gadget: Graph, port: int) -> EmbeddingScheme:
    """Swap cubic vertex ``v`` for ``gadget - port``; creates a 3-edge-cut."""
    g = s.graph
    if g.degree(v) != 3 or gadget.degree(port) != 3:
        raise ValueError("vertex and port must have degree 3")
    offset = g.next_vertex_id()
    vmap = {x: offset + i for i, x in enumerate(y for y in gadget.vertices if y != port)}
    n = g.next_edge_id()
    inner = [k for k in gadget.edge_ids if port not in gadget.ends(k)]
    port_edges = list(gadget.incident(port))
    for perm in itertools.permutations(port_edges):
        edges = {k: val for k, val in g.edges.items() if k not in g.incident(v)}
        for i, k in enumerate(inner):
            a, b = gadget.ends(k)
            edges[n + i] = (vmap[a], vmap[b])
        for outer, pe in zip(s.rotation[v], perm):
            x = g.other(outer, v)
            edges[outer] = (x, vmap[gadget.other(pe, port)])
        ng = Graph.make([x for x in g.vertices if x != v] + list(vmap.values()), edges)
        fixed = {x: r for x, r in s.rotation.items() if x != v}
        out = complete_rotations(ng, fixed, dict(s.signature), euler_characteristic(s))
        if out is not None:
            return out
    raise AssertionError("no gadget placement preserves the surface")


@lru_cache(maxsize=None)
def petersen_two_cut() -> EmbeddingScheme:
    return replace_edge_with_gadget(petersen(), 0)


@lru_cache(maxsize=None)
def petersen_three_cut() -> EmbeddingScheme:
    return replace_vertex_with_gadget(petersen(), 0, cube_graph(), 0)


@lru_cache(maxsize=None)
def petersen_truncated() -> EmbeddingScheme:
    return replace_vertex_with_gadget(petersen(), 0, complete_graph(4), 0)


@lru_cache(maxsize=None)
def k4_two_cut() -> EmbeddingScheme:
    return replace_edge_with_gadget(k4(), 0)


@lru_cache(maxsize=None)
def prism() -> EmbeddingScheme:
    return replace_vertex_with_gadget(k4(), 0, complete_graph(4), 0)


def corpus() -> dict[str, EmbeddingScheme]:
    """Named cubic fixtures used by the end-to-end runs."""
    return {
        "petersen": petersen(),
        "k33_projective": k33_projective(),
        "k4": k4(),
        "theta": theta(),
        "cube": cube(),
        "prism": prism(),
        "k4_two_cut": k4_two_cut(),
        "petersen_two_cut": petersen_two_cut(),
        "petersen_three_cut": petersen_three_cut(),
        "petersen_truncated": petersen_truncated(),
    }
