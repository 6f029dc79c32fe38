"""Plain-text graph and embedding files.

::

    # comment
    e <id> <u> <v>          one per edge
    v <id> : <eid> ...      rotation at a vertex, cyclic
    sig <eid> -1            negative edges (others are +1)
    outer <v> <v> ...       optional outer cycle for near-triangulations
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .embedding import EmbeddingError, EmbeddingScheme
from .graph import Graph, GraphError


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass
class Document:
    graph: Graph
    rotation: dict[int, tuple[int, ...]] | None
    signature: dict[int, int]
    outer: tuple[int, ...] | None = None

    def scheme(self) -> EmbeddingScheme:
        if self.rotation is None:
            raise FormatError("file has no rotation lines")
        try:
            return EmbeddingScheme(self.graph, self.rotation, self.signature)
        except (EmbeddingError, ValueError) as exc:
            raise FormatError(f"inconsistent rotation: {exc}") from exc


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"expected an integer, got {tok!r}", lineno) from None


def parse(text: str) -> Document:
    edges: dict[int, tuple[int, int]] = {}
    rotation: dict[int, tuple[int, ...]] = {}
    signature: dict[int, int] = {}
    outer = None
    vertices: set[int] = set()
    sig_lines: dict[int, int] = {}
    rot_lines: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        kind = tok[0]
        if kind == "e":
            if len(tok) != 4:
                raise FormatError("edge line needs: e <id> <u> <v>", lineno)
            eid, u, v = (_int(t, lineno) for t in tok[1:])
            if eid in edges:
                raise FormatError(f"duplicate edge id {eid}", lineno)
            if u == v:
                raise FormatError(f"edge {eid} is a loop", lineno)
            edges[eid] = (u, v)
            vertices.update((u, v))
        elif kind == "v":
            if len(tok) < 3 or tok[2] != ":":
                raise FormatError("rotation line needs: v <id> : <eid> ...", lineno)
            vid = _int(tok[1], lineno)
            if vid in rotation:
                raise FormatError(f"duplicate rotation for vertex {vid}", lineno)
            rotation[vid] = tuple(_int(t, lineno) for t in tok[3:])
            rot_lines[vid] = lineno
            vertices.add(vid)
        elif kind == "sig":
            if len(tok) != 3 or tok[2] not in ("-1", "1", "+1"):
                raise FormatError("signature line needs: sig <eid> -1", lineno)
            eid = _int(tok[1], lineno)
            signature[eid] = int(tok[2])
            sig_lines[eid] = lineno
        elif kind == "outer":
            if outer is not None:
                raise FormatError("duplicate outer line", lineno)
            outer = tuple(_int(t, lineno) for t in tok[1:])
            if len(outer) < 3:
                raise FormatError("outer cycle needs at least 3 vertices", lineno)
        else:
            raise FormatError(f"unknown line type {kind!r}", lineno)
    if not edges and not vertices:
        raise FormatError("empty input")
    for eid, lineno in sig_lines.items():
        if eid not in edges:
            raise FormatError(f"signature for unknown edge {eid}", lineno)
    if rotation:
        inc: dict[int, list[int]] = {v: [] for v in vertices}
        for eid, (u, v) in edges.items():
            inc[u].append(eid)
            inc[v].append(eid)
        for v in vertices:
            if v not in rotation:
                raise FormatError(f"vertex {v} has no rotation line")
            if sorted(rotation[v]) != sorted(inc[v]):
                raise FormatError(f"rotation at {v} does not list its incident edges", rot_lines[v])
    try:
        g = Graph.make(vertices, edges)
    except GraphError as exc:
        raise FormatError(str(exc)) from exc
    return Document(g, rotation or None, signature, outer)


def read(path: str | Path) -> Document:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from exc
    return parse(text)


def read_scheme(path: str | Path) -> EmbeddingScheme:
    return read(path).scheme()


def format_graph(g: Graph) -> str:
    return "".join(f"e {e} {u} {v}\n" for e, (u, v) in sorted(g.edges.items()))


def format_scheme(s: EmbeddingScheme, outer=None) -> str:
    lines = [format_graph(s.graph)]
    for v in s.graph.vertices:
        lines.append(f"v {v} : {' '.join(map(str, s.rotation[v]))}\n")
    for e in sorted(s.graph.edges):
        if s.signature.get(e, 1) < 0:
            lines.append(f"sig {e} -1\n")
    if outer is not None:
        lines.append(f"outer {' '.join(map(str, outer))}\n")
    return "".join(lines)
