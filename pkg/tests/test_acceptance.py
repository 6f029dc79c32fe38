"""One pass/fail line per acceptance criterion, with its time budget."""
import time

import pytest

import test_properties as P
from strongembed import fixtures as F
from strongembed.embedding import (euler_characteristic, is_closed_2cell, is_orientable, normalize,
                                   representativity, trace_faces)
from strongembed.neartri import sweep
from strongembed.pipeline import ocdc, ocze, verify_ocdc, verify_ocze
from strongembed.reductions import FOUR_CYCLE, THREE_EDGE_CUT, TWO_EDGE_CUT, lift_four_cycle_with_case
from strongembed.rings import find_odd_ring
from strongembed.surgery import check_compatible, orient_ccdc, orient_via_odd_ring
from support import CASES, brute_representativity, case_instances


@pytest.fixture
def criterion(capsys):
    """Run checks under a time budget and print one summary line."""
    def run(number, title, budget, body):
        t0 = time.perf_counter()
        failures = []
        try:
            failures = [msg for ok, msg in body() if not ok]
        except Exception as exc:  # reported as a failed criterion
            failures = [f"{type(exc).__name__}: {exc}"]
        dt = time.perf_counter() - t0
        if dt >= budget:
            failures.append(f"took {dt:.2f}s, budget {budget}s")
        verdict = "PASS" if not failures else "FAIL"
        with capsys.disabled():
            print(f"\n{verdict} criterion {number}: {title} ({dt:.2f}s / {budget}s)")
            for msg in failures:
                print(f"    {msg}")
        assert not failures, failures
    return run


def test_criterion_1(criterion):
    def body():
        s = F.petersen()
        walks = trace_faces(s)
        rho = representativity(s)
        yield sorted(len(w) for w in walks) == [5] * 6, "six pentagonal faces"
        yield euler_characteristic(s) == 1, "euler characteristic 1"
        yield not is_orientable(s), "nonorientable"
        yield is_closed_2cell(s), "closed 2-cell"
        yield rho == 3, f"representativity {rho}"
        yield brute_representativity(s, 4) == rho, "brute-force representativity agrees"
    criterion(1, "Petersen projective embedding", 1, body)


def test_criterion_2(criterion):
    def body():
        s = F.petersen()
        out = orient_via_odd_ring(s, find_odd_ring(s))
        walks = trace_faces(normalize(out))
        arcs = [a for w in walks for a in w.arcs]
        yield is_orientable(out), "orientable"
        yield is_closed_2cell(out), "closed 2-cell"
        yield euler_characteristic(out) == 0, "euler characteristic 0"
        yield len(walks) == 5, f"{len(walks)} faces"
        yield len(arcs) == 30 and len(set(arcs)) == 30, "30 distinct directed arcs"
        yield verify_ocdc(s.graph, orient_ccdc([w.arcs for w in walks])).ok, "faces form an oriented CDC"
    criterion(2, "odd-ring surgery on Petersen", 1, body)


def test_criterion_3(criterion):
    def body():
        kinds, cases = set(), set()
        for name, s in sorted(F.corpus().items()):
            rep = ocze(s)
            yield rep.verification.ok, f"ocze verifies on {name}"
            kinds |= rep.kinds()
            cases |= rep.lift_cases()
        # constructed parents supply the lift cases the corpus never reaches
        for case, (name, child, step) in sorted(case_instances().items()):
            out, got = lift_four_cycle_with_case(child, step)
            yield got == case, f"constructed case {case} from {name}"
            yield verify_ocze(step.graph, out).ok, f"lift case {case} verifies"
            cases.add(got)
        missing = {TWO_EDGE_CUT, THREE_EDGE_CUT, FOUR_CYCLE} - kinds
        yield not missing, f"reduction kinds missing: {sorted(missing)}"
        yield cases == set(CASES), f"lift cases seen: {sorted(cases)}"
    criterion(3, "ocze on the corpus with every reduction and lift case", 10, body)


def test_criterion_4(criterion):
    def body():
        for name in ("k5_projective", "k6_projective"):
            s = getattr(F, name)()
            cdc, _ = ocdc(s)
            rep = verify_ocdc(s.graph, cdc)
            yield rep.ok, f"{name}: {rep.problems}"
            yield check_compatible(cdc), f"{name} compatibly oriented"
    criterion(4, "ocdc on K5 and K6 projective", 5, body)


def test_criterion_5(criterion):
    def body():
        s = F.k33_toroidal()
        walks = trace_faces(s)
        n = len(s.graph.vertices)
        yield len(walks) == 3, "three faces"
        yield all(w.is_cycle() and len(set(w.vertices)) == n for w in walks), "faces are Hamilton cycles"
        yield is_orientable(s), "orientable"
        yield is_closed_2cell(s), "closed 2-cell"
        yield check_compatible(orient_ccdc([w.arcs for w in walks])), "orient_ccdc feasible"
    criterion(5, "K3,3 toroidal Hamilton scheme", 1, body)


def test_criterion_6(criterion):
    def body():
        r = sweep(12)
        yield r.counterexamples == [], f"{len(r.counterexamples)} counterexamples"
        yield r.instances == r.mixed + r.uniform and r.instances > 0, \
            f"{r.triangulations} triangulations, {r.instances} instances"
    criterion(6, "near-triangulation parity sweep up to 12 vertices", 300, body)


def test_criterion_7(criterion):
    suites = [P.test_crosscap_involution, P.test_crosscap_between_distinct_faces_drops_chi,
              P.test_orient_ccdc_feasible_on_orientable, P.test_orient_ccdc_infeasible_on_projective,
              P.test_round_trip_up_to_reflection]

    def body():
        for suite in suites:
            try:
                suite()
                yield True, suite.__name__
            except AssertionError as exc:
                yield False, f"{suite.__name__}: {exc}"
    criterion(7, "property suites, 1000 trials each", 60, body)
