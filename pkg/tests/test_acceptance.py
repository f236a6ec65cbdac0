"""Acceptance criteria 1-8, one test each.

Every criterion prints a single PASS/FAIL line; the lines are repeated in
the pytest terminal summary (see conftest.py).  Run this file directly with
``python tests/test_acceptance.py`` for the bare report.
"""
import io as stdio
import itertools
import json
import sys
from contextlib import redirect_stdout
from pathlib import Path

import pytest

from steiner_adc import cli, identities as I
from steiner_adc.constructions import DualitySelector, direct_sum, dual
from steiner_adc.core import validate_complex
from steiner_adc.io import export_dot, parse_adc, serialize_adc
from steiner_adc.nerve import axiom_suite, enumerate_cells
from steiner_adc.shapes import cube, globe, oriental, theta, theta_trees, two_loop, unit
from steiner_adc.steiner_check import is_strong_steiner, strongly_loop_free

GOLDEN = Path(__file__).parent / "golden"
RESULTS = []


def all_shapes():
    return ([cube(n) for n in range(1, 6)] + [oriental(n) for n in range(1, 6)]
            + [globe(q) for q in range(7)] + [theta(t) for t in theta_trees(6)])


def record(number, title, failures):
    ok = not failures
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title}"
    if failures:
        line += f"  [{len(failures)} failure(s), first: {failures[0]}]"
    RESULTS.append(line)
    print(line)
    return ok


def criterion_1():
    bad = []
    for A in all_shapes():
        if validate_complex(A) or not is_strong_steiner(A):
            bad.append(A.name)
    ok, witness = strongly_loop_free(two_loop())
    if ok or witness is None or len(witness) != 4:
        bad.append(f"two-loop witness {witness}")
    return record(1, "axioms and strong Steiner conditions on all shapes; two-loop 4-cycle", bad)


def criterion_2():
    bad = [n for n in range(1, 5) if not I.verify_cube_order(n).passed]
    return record(2, "cube closure order equals signed-lex order, n = 1..4", bad)


def criterion_3():
    bad = [n for n in range(1, 5) if not I.verify_cube_aut_trivial(n).passed]
    control = I.verify_aut_trivial(direct_sum(cube(1), cube(1)))
    if control.params.get("automorphisms") != 2 or control.passed:
        bad.append(f"⊕ control: {control.params}")
    return record(3, "Aut(cube(n)) trivial for n = 1..4; ⊕ control has exactly 2", bad)


def criterion_4():
    reps = [I.verify_oriental_cube_retract(n) for n in range(1, 5)]
    reps += [I.verify_wedge_retract(n, m) for n in range(1, 5) for m in range(1, 6 - n)]
    reps += [I.verify_cone_quotient(n) for n in range(1, 4)]
    reps += [I.verify_suspension_quotient(n) for n in range(1, 4)]
    bad = [f"{r.name}{r.params}" for r in reps if not r.passed]
    return record(4, "retractions and quotients with r∘s = id", bad)


def criterion_5():
    reps = [I.verify_sigma_pushout(A) for A in (unit(), cube(1), cube(2), oriental(2))]
    reps += [I.verify_gray_cylinder(A) for A in (unit(), cube(1), oriental(1))]
    bad = [f"{r.name}{r.params}" for r in reps if not r.passed]
    return record(5, "sigma pushout and Gray cylinder squares, torsion-free", bad)


def criterion_6():
    bad = []
    shapes = all_shapes()
    for A in shapes:
        for tau in ("odd", "even", "total"):
            t = DualitySelector.parse(tau)
            if dual(dual(A, t), t) != A:
                bad.append(f"D_{tau}∘D_{tau} on {A.name}")
    catalogue = [unit()] + [f(n) for n in range(1, 5) for f in (cube, oriental, globe)]
    catalogue += [theta(t) for t in theta_trees(5) if str(t) != "*"]
    pairs = 0
    for A, B in itertools.product(catalogue, repeat=2):
        if A.max_degree + B.max_degree <= 4:
            pairs += 1
            rep = I.verify_dual_monoidal(A, B)
            if not rep.passed:
                bad.append(f"{A.name}, {B.name}: {rep.failures()[:1]}")
    return record(6, f"duality involutions; monoidality over {pairs} shape pairs", bad)


def criterion_7():
    bad = []
    oracle = {"globe(1)": (globe(1), 2, (2, 3, 3)), "globe(2)": (globe(2), 3, (2, 4, 5, 5)),
              "cube(1)": (cube(1), 2, (2, 3, 3)), "cube(2)": (cube(2), 2, (4, 10, 11))}
    for name, (A, dim, expect) in oracle.items():
        at4, at8 = enumerate_cells(A, dim, 4), enumerate_cells(A, dim, 8)
        if at4.truncated or at4.counts != expect or at8.counts != expect:
            bad.append(f"{name}: cap4 {at4.counts}, cap8 {at8.counts}, want {expect}")
    for A in (cube(2), oriental(2)):
        rep = axiom_suite(A, enumerate_cells(A, A.max_degree, 4))
        if not rep.ok:
            bad.append(f"axioms on {A.name}: {rep.violations[:1]}")
    for mutation, failed in I.mutation_battery().items():
        if not failed:
            bad.append(f"mutation {mutation!r} not caught")
    return record(7, "nerve counts, axiom suite, mutation battery", bad)


def _cli(argv):
    buf = stdio.StringIO()
    with redirect_stdout(buf):
        code = cli.main(argv)
    return code, buf.getvalue()


def criterion_8():
    bad = []
    for path in sorted(GOLDEN.glob("*.json")):
        kind, _, arg = path.stem.partition("_")
        if kind == "theta":
            continue
        argv = ["shape", "two-loop"] if path.stem == "two_loop" else ["shape", kind] + ([arg] if arg else [])
        code, out = _cli(argv)
        text = path.read_text(encoding="utf-8")
        if code != 0 or out != text or serialize_adc(parse_adc(out)) != text:
            bad.append(f"golden {path.name}")
    for expr, name in (("s(*) v s(s(*))", "theta_1.json"), ("s(s(*) v s(*))", "theta_2.json")):
        code, out = _cli(["shape", "theta", expr])
        if out != (GOLDEN / name).read_text(encoding="utf-8"):
            bad.append(f"golden {name}")
    cases = [(["verify", "cube-aut", "3"], "pass"),
             (["verify", "nerve-globe", "2"], "pass"),
             (["verify", "aut-trivial", str(GOLDEN / "two_loop.json")], "fail"),
             (["--budget", "1", "verify", "cube-aut", "3"], "inconclusive")]
    for argv, status in cases:
        code, out = _cli(argv)
        got = json.loads(out)["status"]
        if got != status or code != {"pass": 0, "fail": 1, "inconclusive": 2}[got]:
            bad.append(f"{' '.join(argv)} -> {code}/{got}")
    if export_dot(cube(1)) != (GOLDEN / "cube_1.dot").read_text(encoding="utf-8"):
        bad.append("cube(1) DOT")
    return record(8, "CLI golden round trips, verify exit codes, DOT export", bad)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4,
            criterion_5, criterion_6, criterion_7, criterion_8]


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda f: f.__name__)
def test_acceptance(criterion):
    assert criterion()


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
