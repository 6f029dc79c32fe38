"""Brute-force references and constructed fixtures shared by test modules."""
import itertools

from strongembed import fixtures as F
from strongembed.embedding import trace_faces
from strongembed.graph import is_2_connected
from strongembed.reductions import expand_four_cycle, four_cycle_case, oriented_faces


def brute_representativity(s, kmax):
    """Fewest vertices met by a closed curve with odd orientation class.

    A curve crossing face f from one corner to another is homotopic to either
    boundary segment between them, so its class is the signature product of
    that segment. Curves are enumerated corner by corner.
    """
    walks = [w.arcs for w in trace_faces(s)]
    corners = {}
    for fi, w in enumerate(walks):
        for p, (t, _) in enumerate(w):
            corners.setdefault(t, []).append((fi, p))

    def seg(fi, i, j):
        w = walks[fi]
        prod, p = 1, i
        while True:
            prod *= s.signature[w[p][1]]
            p = (p + 1) % len(w)
            if p == j:
                return prod

    def rec(v0, cur, seen, sign, depth, k):
        for fi, i in corners[cur]:
            w = walks[fi]
            for j in range(len(w)):
                if j == i:
                    continue
                nxt = w[j][0]
                sg = sign * seg(fi, i, j)
                if depth + 1 == k:
                    if nxt == v0 and sg == -1:
                        return True
                elif nxt not in seen and nxt != v0:
                    if rec(v0, nxt, seen | {nxt}, sg, depth + 1, k):
                        return True
        return False

    for k in range(1, kmax + 1):
        for v0 in s.graph.vertices:
            if rec(v0, v0, {v0}, 1, 0, k):
                return k
    return None


CASES = ("i", "i'", "ii", "ii'", "iii")
CHILDREN = ["theta", "k4", "prism", "cube", "k4_two_cut"]


def case_instances():
    """First constructed parent for every lift case, over small planar children."""
    found = {}
    for name in CHILDREN:
        child = getattr(F, name)()
        faces = oriented_faces(child)
        for e12, e34 in itertools.permutations(sorted(child.graph.edges), 2):
            for f12, f34 in itertools.product((False, True), repeat=2):
                step = expand_four_cycle(child, e12, e34, f12, f34)
                if not is_2_connected(step.graph):
                    continue
                case = four_cycle_case(faces, step.data)
                found.setdefault(case, (name, child, step))
        if len(found) == len(CASES):
            break
    return found
