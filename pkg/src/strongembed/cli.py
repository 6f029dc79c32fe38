"""Command line entry point ``strongembed``.

Exit status: 0 when the requested property holds, 2 when it fails (or the
input does not meet the command's preconditions), 1 for malformed input,
3 for an internal consistency failure.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import io
from .embedding import (EmbeddingError, is_closed_2cell,
                        normalize, shortest_noncontractible_curve, surface_id, trace_faces)
from .neartri import NearTriError, check_class, check_prop45, from_scheme, sweep
from .pipeline import PipelineError, ocdc, ocze, report_dict, verify_ocze
from .reductions import ReductionError
from .rings import (InternalError, RingError, elementary_rings, find_odd_ring, is_noncontractible_ring,
                    ring_from_faces)
from .surgery import SurgeryError, orient_via_odd_ring

OK, FAIL, BAD_INPUT, INTERNAL = 0, 2, 1, 3


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _surface(s) -> dict:
    sid = surface_id(s)
    return {"euler_characteristic": sid.euler_characteristic, "orientable": sid.orientable,
            "surface": sid.name(), "faces": len(trace_faces(s))}


def _scheme_json(s) -> dict:
    return {"edges": [[e, u, v] for e, (u, v) in sorted(s.graph.edges.items())],
            "rotation": [[v, list(r)] for v, r in sorted(s.rotation.items())],
            "negative_edges": sorted(e for e, x in s.signature.items() if x < 0)}


def cmd_faces(args) -> int:
    s = io.read_scheme(args.file)
    walks = trace_faces(s)
    if args.json:
        print(_dump({"surface": _surface(s),
                     "faces": [{"vertices": list(w.vertices), "edges": list(w.edges)} for w in walks]}))
        return OK
    info = _surface(s)
    print(f"# {info['surface']}: chi={info['euler_characteristic']} faces={info['faces']}")
    for i, w in enumerate(walks):
        print(f"{i}: {' '.join(map(str, w.vertices))} | {' '.join(map(str, w.edges))}")
    return OK


def cmd_rep(args) -> int:
    s = io.read_scheme(args.file)
    try:
        curve = shortest_noncontractible_curve(s)
    except EmbeddingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAIL
    if args.json:
        print(_dump({"representativity": len(curve),
                     "curve": [{"vertex": v, "face": f} for v, f in curve]}))
    else:
        print(len(curve))
        print("curve: " + " ".join(f"v{v}/f{f}" for v, f in curve))
    return OK


def cmd_verify(args) -> int:
    s = io.read_scheme(args.file)
    res = _surface(s)
    res["closed_2cell"] = is_closed_2cell(s)
    want = []
    if args.closed2cell:
        want.append("closed_2cell")
    if args.orientable:
        want.append("orientable")
    res["passed"] = all(res[k] for k in want)
    if args.json:
        print(_dump(res))
    else:
        for k in ("surface", "euler_characteristic", "orientable", "closed_2cell", "faces"):
            print(f"{k}: {res[k]}")
        for k in want:
            print(f"check {k}: {'pass' if res[k] else 'FAIL'}")
    return OK if res["passed"] else FAIL


def _ring_line(ring) -> str:
    pts = "; ".join("v{%s} e{%s}" % (",".join(map(str, sorted(c.vertices))),
                                    ",".join(map(str, sorted(c.edges)))) for c in ring.touch_points)
    return f"{' '.join(map(str, ring.faces))} | {pts}"


def cmd_rings(args) -> int:
    s = io.read_scheme(args.file)
    found = 0
    for ring in elementary_rings(s, args.max_len):
        if args.odd and len(ring) % 2 == 0:
            continue
        if args.noncontractible and not is_noncontractible_ring(s, ring):
            continue
        print(_ring_line(ring))
        found += 1
    if not found:
        print("no rings", file=sys.stderr)
        return FAIL
    return OK


def cmd_orient(args) -> int:
    s = io.read_scheme(args.file)
    if args.ring:
        try:
            faces = [int(x) for x in args.ring.split(",")]
        except ValueError:
            raise io.FormatError("--ring expects comma separated face indices") from None
        ring = ring_from_faces(s, faces)
    else:
        ring = find_odd_ring(s)
        if ring is None:
            print("no odd noncontractible ring", file=sys.stderr)
            return FAIL
    out = orient_via_odd_ring(s, ring)
    ver = verify_ocze(s.graph, out)
    sys.stdout.write(io.format_scheme(normalize(out)))
    print(f"# ring: {' '.join(map(str, ring.faces))}")
    for k, v in sorted(vars(ver).items()):
        print(f"# {k}: {v}")
    return OK if ver.ok else FAIL


def _print_steps(steps, trace: bool, stream=None):
    for st in steps:
        if not trace and st.kind in ("planar_base", "odd_ring_surgery"):
            continue
        extra = " ".join(f"{k}={v}" for k, v in sorted(st.detail.items()))
        print(f"{'  ' * st.depth}{st.kind} |V|={st.vertices} |E|={st.edges} {extra}".rstrip(),
              file=stream or sys.stdout)


def cmd_reduce(args) -> int:
    s = io.read_scheme(args.file)
    rep = ocze(s)
    _print_steps(rep.steps, args.trace)
    print(f"verification: {'pass' if rep.verification.ok else 'FAIL'}")
    return OK if rep.verification.ok else FAIL


def cmd_ocze(args) -> int:
    s = io.read_scheme(args.file)
    rep = ocze(s)
    out = normalize(rep.scheme)
    if args.trace and not args.json:
        _print_steps(rep.steps, True, sys.stderr)
    if args.json:
        doc = report_dict(rep)
        if not args.trace:
            doc.pop("steps")
        doc["scheme"] = _scheme_json(out)
        doc["surface"] = _surface(out)
        print(_dump(doc))
    else:
        sys.stdout.write(io.format_scheme(out))
    return OK if rep.verification.ok else FAIL


def cmd_ocdc(args) -> int:
    s = io.read_scheme(args.file)
    cdc, rep = ocdc(s)
    if args.json:
        print(_dump({"cycles": [[list(a) for a in c] for c in cdc.cycles],
                     "arcs": sum(len(c) for c in cdc.cycles), "edges": len(s.graph.edges)}))
    else:
        for i, c in enumerate(cdc.cycles):
            print(f"{i}: " + " ".join(f"{t}-{e}" for t, e in c))
    return OK


def cmd_neartri(args) -> int:
    if args.sweep is not None:
        start = time.perf_counter()
        r = sweep(args.sweep)
        took = time.perf_counter() - start
        print(f"max vertices: {r.max_vertices}")
        print(f"triangulations: {r.triangulations}")
        print(f"labelled instances: {r.instances}")
        print(f"mixed parity: {r.mixed}")
        print(f"uniform parity with degree-4 witness: {r.uniform}")
        print(f"counterexamples: {len(r.counterexamples)}")
        print(f"seconds: {took:.1f}")
        return OK if not r.counterexamples else FAIL
    doc = io.read(args.check)
    if doc.outer is None:
        raise io.FormatError("near-triangulation file needs an outer line")
    h = from_scheme(doc.scheme(), doc.outer)
    problems = check_class(h)
    if problems:
        for p in problems:
            print(f"hypothesis fails: {p}")
        return FAIL
    v = check_prop45(h)
    print(f"verdict: {v.kind}")
    for p in v.paths:
        print(f"path (length {len(p) - 1}): {' '.join(map(str, p))}")
    if v.witness_vertex is not None:
        print(f"degree-4 vertex: {v.witness_vertex}")
    return FAIL if v.counterexample else OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="strongembed",
                                description="Signed rotation schemes, rings and orientable embeddings.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        q = sub.add_parser(name, help=help_)
        q.set_defaults(func=fn)
        return q

    q = add("faces", cmd_faces, "trace the faces of an embedding")
    q.add_argument("file")
    q.add_argument("--json", action="store_true")
    q = add("rep", cmd_rep, "representativity of a projective embedding")
    q.add_argument("file")
    q.add_argument("--json", action="store_true")
    q = add("verify", cmd_verify, "check surface properties")
    q.add_argument("file")
    q.add_argument("--closed2cell", action="store_true")
    q.add_argument("--orientable", action="store_true")
    q.add_argument("--json", action="store_true")
    q = add("rings", cmd_rings, "list elementary face rings")
    q.add_argument("file")
    q.add_argument("--odd", action="store_true")
    q.add_argument("--elementary", action="store_true",
                   help="accepted for clarity; every listed ring is elementary")
    q.add_argument("--noncontractible", action="store_true")
    q.add_argument("--max-len", type=int, default=None)
    q = add("orient", cmd_orient, "odd-ring surgery to an orientable embedding")
    q.add_argument("file")
    q.add_argument("--ring", help="comma separated face indices")
    q = add("reduce", cmd_reduce, "print the reduction tree")
    q.add_argument("file")
    q.add_argument("--trace", action="store_true")
    q = add("ocze", cmd_ocze, "orientable closed 2-cell embedding of a cubic graph")
    q.add_argument("file")
    q.add_argument("--json", action="store_true")
    q.add_argument("--trace", action="store_true")
    q = add("ocdc", cmd_ocdc, "orientable cycle double cover")
    q.add_argument("file")
    q.add_argument("--json", action="store_true")
    q = add("neartri", cmd_neartri, "near-triangulation parity checks")
    g = q.add_mutually_exclusive_group(required=True)
    g.add_argument("--sweep", type=int, metavar="N")
    g.add_argument("--check", metavar="FILE")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except io.FormatError as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return BAD_INPUT
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return INTERNAL
    except (EmbeddingError, PipelineError, RingError, SurgeryError, ReductionError, NearTriError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAIL


if __name__ == "__main__":
    sys.exit(main())
