"""Verification suites for combinatorial facts about strong Steiner complexes.

Each suite returns a SuiteReport listing every check it ran.  A suite
passes iff all checks pass; a search that runs out of budget makes the
suite inconclusive instead.
"""
from __future__ import annotations

import itertools
import sys
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from unittest import mock

from . import constructions, intlinalg, nerve
from .constructions import (BOTTOM, TOP, SpanOfMaps, degreewise_pushout,
                            direct_sum_inclusions, dual, iso_search, suspend, tensor,
                            wedge, wedge_inclusions, DualitySelector)
from .core import ADCMap, BasedADC, ChainElement, compose_maps, validate_map
from .shapes import boundary_interval, cube, globe, oriental, parse_simplex, simplex_label
from .steiner_check import (DEFAULT_BUDGET, SearchBudgetExceeded, automorphisms,
                            basis_preorder, cube_signed_lex_cmp, is_total_order)

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass
class SuiteReport:
    name: str
    params: dict
    checks: list = field(default_factory=list)  # dicts {name, ok, witness}
    status: str = PASS
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def check(self, name, ok, witness=None):
        ok = bool(ok)
        self.checks.append({"name": name, "ok": ok,
                            "witness": None if ok or witness is None else str(witness)})
        if not ok and self.status == PASS:
            self.status = FAIL
        return ok

    def failures(self):
        return [c for c in self.checks if not c["ok"]]

    def to_dict(self):
        return {"suite": self.name, "params": self.params, "status": self.status,
                "elapsed": round(self.elapsed, 6), "checks": self.checks}


@contextmanager
def _suite(name, **params):
    rep = SuiteReport(name, params)
    start = time.perf_counter()
    try:
        yield rep
    except SearchBudgetExceeded as exc:
        rep.checks.append({"name": "search budget", "ok": False, "witness": str(exc)})
        rep.status = INCONCLUSIVE
    finally:
        rep.elapsed = time.perf_counter() - start


def _check_map(rep, label, f):
    bad = validate_map(f)
    rep.check(f"{label} is an ADC map", not bad, bad[:3])
    return not bad


def _check_identity(rep, label, f):
    """Exact comparison of an endomorphism with the identity, with a witness."""
    wrong = [x for x in f.source.labels() if f.images[x] != f.source.generator(x)]
    rep.check(label, not wrong, wrong[:1] and f"{wrong[0]} ↦ {f.images[wrong[0]]!r}")


# -- cubes ------------------------------------------------------------------

def verify_cube_order(n: int) -> SuiteReport:
    with _suite("cube-order", n=n) as rep:
        A = cube(n)
        P = basis_preorder(A)
        rep.check("closure order is total", is_total_order(A, P))
        bad = None
        count = 0
        for u, v in itertools.permutations(A.labels(), 2):
            count += 1
            if P.lt(u, v) != (cube_signed_lex_cmp(u, v) < 0):
                bad = (u, v)
                break
        rep.check(f"closure order equals signed-lex order ({count} ordered pairs)",
                  bad is None, bad)
    return rep


def verify_aut_trivial(A: BasedADC, budget: int = DEFAULT_BUDGET, name="aut-trivial") -> SuiteReport:
    with _suite(name, complex=A.name) as rep:
        auts = automorphisms(A, budget)
        rep.params["automorphisms"] = len(auts)
        rep.check("exactly one automorphism", len(auts) == 1, f"{len(auts)} found")
        if auts:
            rep.check("it is the identity", auts[0] == ADCMap.identity(A))
    return rep


def verify_cube_aut_trivial(n: int, budget: int = DEFAULT_BUDGET) -> SuiteReport:
    rep = verify_aut_trivial(cube(n), budget, name="cube-aut")
    rep.params = {"n": n, **rep.params}
    return rep


# -- orientals inside cubes -------------------------------------------------

def oriental_to_cube(n: int, alpha) -> dict:
    """Cube strings (with coefficient 1) hit by a simplex under the section."""
    alpha = tuple(sorted(alpha))
    fixed = {p: "0" for p in range(alpha[-1] + 1, n + 1)}
    fixed.update({p: "1" for p in range(1, alpha[0] + 1)})
    blocks = []
    for lo, hi in zip(alpha, alpha[1:]):
        options = []
        for mark in range(lo + 1, hi + 1):
            options.append({p: "1" if p > mark else "?" if p == mark else "0"
                            for p in range(lo + 1, hi + 1)})
        blocks.append(options)
    out = {}
    for choice in itertools.product(*blocks):
        pos = dict(fixed)
        for part in choice:
            pos.update(part)
        out["".join(pos[p] for p in range(n, 0, -1))] = 1
    return out


def cube_to_oriental(word: str) -> dict:
    """Collapse a cube string to a chain of simplices (as vertex tuples)."""
    if not word:
        return {(0,): 1}
    n, head, rest = len(word), word[0], word[1:]
    if head == "0":
        return cube_to_oriental(rest)
    if head == "?":
        return {alpha + (n,): c for alpha, c in cube_to_oriental(rest).items()}
    return {(n,): 1} if "?" not in rest else {}


def verify_oriental_cube_retract(n: int) -> SuiteReport:
    with _suite("oriental-cube-retract", n=n) as rep:
        O, Q = oriental(n), cube(n)
        s = ADCMap(O, Q, {lab: oriental_to_cube(n, parse_simplex(lab)) for lab in O.labels()})
        r = ADCMap(Q, O, {w: {simplex_label(a): c for a, c in cube_to_oriental(w).items()}
                          for w in Q.labels()})
        _check_map(rep, "section", s)
        _check_map(rep, "retraction", r)
        _check_identity(rep, "r∘s = id", compose_maps(s, r))
    return rep


# -- wedge of orientals -----------------------------------------------------

def _h_sign(left_count: int) -> int:
    return -1 if left_count % 2 else 1


def wedge_homotopy(n: int, alpha: tuple):
    """The homotopy on a simplex of the (n+m)-oriental; None means zero."""
    left = [v for v in alpha if v < n]
    right = [v for v in alpha if v > n]
    if left and right and n not in alpha:
        return _h_sign(len(left)), tuple(sorted(alpha + (n,)))
    return None


def verify_wedge_retract(n: int, m: int) -> SuiteReport:
    with _suite("wedge-retract", n=n, m=m) as rep:
        O = oriental(n + m)

        def in_wedge(alpha):
            return alpha[-1] <= n or alpha[0] >= n

        W = BasedADC([(e.label, e.degree) for e in O.basis if in_wedge(parse_simplex(e.label))],
                     {lab: d for lab, d in O.differential.items() if in_wedge(parse_simplex(lab))},
                     {lab: 1 for lab in O.labels(0)}, ("{0}", "{%d}" % (n + m)), "wedge")
        rep.check("wedge sub-complex is the wedge of orientals",
                  iso_search(W, wedge(oriental(n), oriental(m))) is not None)

        def h(x: ChainElement) -> ChainElement:
            terms = {}
            for lab, c in x.items():
                hv = wedge_homotopy(n, parse_simplex(lab))
                if hv:
                    k = simplex_label(hv[1])
                    terms[k] = terms.get(k, 0) + hv[0] * c
            return ChainElement(x.degree + 1, terms)

        images = {}
        for e in O.basis:
            x = O.generator(e.label)
            rx = x - O.boundary(h(x))
            if e.degree > 0:
                rx = rx - h(O.boundary(x))
            images[e.label] = rx
        rep.check("r has positive images", all(v.is_positive() for v in images.values()),
                  next((k for k, v in images.items() if not v.is_positive()), None))
        outside = [k for k, v in images.items() if not set(v.labels()) <= set(W.labels())]
        rep.check("image of r lies in the wedge", not outside, outside[:1])
        if not outside and all(v.is_positive() for v in images.values()):
            r = ADCMap(O, W, images)
            _check_map(rep, "r", r)
            s = ADCMap.from_labels(W, O, {x: x for x in W.labels()})
            _check_identity(rep, "r∘s = id", compose_maps(s, r))
    return rep


# -- cone and suspension quotients -----------------------------------------

def cone_quotient_image(n: int, first: str, alpha: tuple) -> dict:
    """Image of first⊗alpha in the (n+1)-oriental, as {vertex tuple: coef}."""
    if first == "0":
        return {alpha: 1}
    if first == "?":
        return {alpha + (n + 1,): 1}
    return {(n + 1,): 1} if len(alpha) == 1 else {}


def _cone_section(n: int, alpha: tuple) -> dict:
    if alpha[-1] != n + 1:
        return {("0", alpha): 1}
    beta = alpha[:-1]
    out = {("?", beta): 1} if beta else {}
    if n not in beta:
        out[("1", beta + (n,))] = 1
    return out


def verify_cone_quotient(n: int) -> SuiteReport:
    with _suite("cone-quotient", n=n) as rep:
        I, O = cube(1), oriental(n)
        C, T = tensor(I, O), oriental(n + 1)
        lab = constructions._tensor_labels(I, O)
        images = {}
        for a in I.labels():
            for b in O.labels():
                img = cone_quotient_image(n, a, parse_simplex(b))
                images[lab[a, b]] = {simplex_label(x): c for x, c in img.items()}
        q = ADCMap(C, T, images)
        ok = _check_map(rep, "quotient", q)
        rep.check("augmentation preserved on vertices",
                  all(T.augment(q(v)) == C.augmentation[v] for v in C.labels(0)))
        sec = ADCMap(T, C, {x: {lab[a, simplex_label(b)]: c
                                for (a, b), c in _cone_section(n, parse_simplex(x)).items()}
                            for x in T.labels()})
        _check_map(rep, "section", sec)
        if ok:
            _check_identity(rep, "q∘sec = id", compose_maps(sec, q))
    return rep


def suspension_quotient_image(n: int, alpha: tuple) -> dict:
    if len(alpha) == 1:
        return {TOP if alpha[0] == n + 1 else BOTTOM: 1}
    if alpha[-1] == n + 1:
        return {"σ" + simplex_label(alpha[:-1]): 1}
    return {}


def _suspension_section(O, S, n):
    """Section of the suspension quotient.

    ⊥ and ⊤ go to the end vertices, σ{i} to the spine path 0→…→i followed
    by the edge {i, n+1}; higher generators σβ go to β∪{n+1} plus a positive
    correction inside the face opposite n+1, found by bounded N-solving.
    """
    images = {BOTTOM: O.generator("{0}"), TOP: O.generator("{%d}" % (n + 1))}
    for d in range(1, S.max_degree + 1):
        inner = [x for x in O.labels(d) if parse_simplex(x)[-1] <= n]
        rows = O.labels(d - 1)
        M = [[O.differential[c][r] for c in inner] for r in rows]
        for x in S.labels(d):
            beta = parse_simplex(x[1:])
            base = O.generator(simplex_label(beta + (n + 1,)))
            if d == 1:
                i = beta[0]
                spine = {simplex_label((j, j + 1)): 1 for j in range(i)}
                images[x] = base + ChainElement(1, spine)
                continue
            want = sum((c * images[y] for y, c in S.differential[x].items()),
                       ChainElement.zero(d - 1)) - O.boundary(base)
            sols = intlinalg.solve_nonneg(M, [want[r] for r in rows], 2, check_cap=False).solutions
            if not sols:
                return None, x
            best = min(sols, key=lambda v: (sum(v), tuple(-c for c in v)))
            images[x] = base + ChainElement(d, dict(zip(inner, best)))
    return ADCMap(S, O, images), None


def verify_suspension_quotient(n: int) -> SuiteReport:
    with _suite("suspension-quotient", n=n) as rep:
        T, S = oriental(n + 1), suspend(oriental(n))
        p = ADCMap(T, S, {x: suspension_quotient_image(n, parse_simplex(x)) for x in T.labels()})
        ok = _check_map(rep, "quotient", p)
        sec, stuck = _suspension_section(T, S, n)
        rep.check("section exists", sec is not None, stuck)
        if sec is not None:
            _check_map(rep, "section", sec)
            if ok:
                _check_identity(rep, "p∘sec = id", compose_maps(sec, p))
    return rep


# -- pushout squares --------------------------------------------------------

def _cocone_map(res, B_map, C_map, target):
    """The map out of a based pushout induced by two legs into ``target``."""
    images = {}
    for X, inc, leg in ((res.inl.source, res.inl, B_map), (res.inr.source, res.inr, C_map)):
        for lab in X.labels():
            img = inc.images[lab]
            if len(img) == 1 and next(iter(img.items()))[1] == 1:
                images.setdefault(next(iter(img.labels())), leg.images[lab])
    return ADCMap(res.complex, target, images)


def _check_pushout(rep, span, legs, target, budget):
    res = degreewise_pushout(span)
    rep.params["pushout_ranks"] = list(res.free_ranks)
    rep.check("pushout is torsion-free", not res.torsion, res.torsion)
    rep.check("pushout is based", res.is_based, res.reason)
    if not res.is_based:
        return None
    iso = iso_search(res.complex, target, budget)
    rep.check("pushout is isomorphic to the expected complex", iso is not None,
              f"ranks {res.complex.ranks()} vs {target.ranks()}")
    if legs is not None:
        u = _cocone_map(res, legs[0], legs[1], target)
        _check_map(rep, "induced cocone map", u)
        rep.check("induced cocone map is a basis bijection", u.is_basis_bijection())
        rep.check("cocone commutes",
                  compose_maps(res.inl, u) == legs[0] and compose_maps(res.inr, u) == legs[1])
    return res


def sigma_square(A: BasedADC):
    """The square ∂I⊗A → I⊗A, ∂I⊗A → ∂I, I⊗A → σA, ∂I → σA."""
    dI, I, S = boundary_interval(), cube(1), suspend(A)
    L, M = tensor(dI, A), tensor(I, A)
    lab_L, lab_M = constructions._tensor_labels(dI, A), constructions._tensor_labels(I, A)
    incl = ADCMap(L, M, {lab_L[i, a]: M.generator(lab_M[i, a]) for i, a in lab_L})
    top = ADCMap(L, dI, {lab_L[i, a]: {i: A.augmentation[a]} for i, a in lab_L
                         if A.degree_of(a) == 0})
    right = ADCMap(dI, S, {"0": {BOTTOM: 1}, "1": {TOP: 1}})
    bottom = {}
    for (i, a), k in lab_M.items():
        if i == "?":
            bottom[k] = {"σ" + a: 1}
        elif A.degree_of(a) == 0:
            bottom[k] = {BOTTOM if i == "0" else TOP: A.augmentation[a]}
    return incl, top, ADCMap(M, S, bottom), right


def verify_sigma_pushout(A: BasedADC, budget: int = DEFAULT_BUDGET) -> SuiteReport:
    with _suite("sigma-pushout", complex=A.name) as rep:
        incl, top, bottom, right = sigma_square(A)
        for nm, f in (("inclusion", incl), ("top", top), ("bottom", bottom), ("right", right)):
            _check_map(rep, nm, f)
        rep.check("square commutes", compose_maps(incl, bottom) == compose_maps(top, right))
        _check_pushout(rep, SpanOfMaps(incl, top), (bottom, right), suspend(A), budget)
    return rep


def gray_cylinder_span(A: BasedADC) -> SpanOfMaps:
    S = suspend(A)
    I = cube(1)
    Dsrc, i1, i2 = direct_sum_inclusions(S, S)
    AI = tensor(A, I)
    lab = constructions._tensor_labels(A, I)
    cyl = suspend(AI)
    f = {}
    for side, inc, end in ((1, i1, "0"), (2, i2, "1")):
        for x in S.labels():
            tgt = x if x in (BOTTOM, TOP) else "σ" + lab[x[1:], end]
            f[next(iter(inc.images[x].labels()))] = {tgt: 1}
    left = ADCMap(Dsrc, cyl, f)

    W1, a1, b1 = wedge_inclusions(S, I)
    W2, a2, b2 = wedge_inclusions(I, S)
    Dtgt, j1, j2 = direct_sum_inclusions(W1, W2)

    def via(inc, j, x):
        return next(iter(j(inc(x)).labels()))

    g = {}
    for x in S.labels():
        e = x[1:] if x.startswith("σ") else None
        # σA → σA∨□¹: ⊤ moves on to the far end of the interval
        src = next(iter(i1.images[x].labels()))
        if x == BOTTOM:
            g[src] = {via(a1, j1, BOTTOM): 1}
        elif x == TOP:
            g[src] = {via(b1, j1, "1"): 1}
        else:
            img = {via(a1, j1, x): 1}
            if A.degree_of(e) == 0:
                img[via(b1, j1, "?")] = A.augmentation[e]
            g[src] = img
        # σA → □¹∨σA: ⊥ moves back to the near end of the interval
        src = next(iter(i2.images[x].labels()))
        if x == BOTTOM:
            g[src] = {via(a2, j2, "0"): 1}
        elif x == TOP:
            g[src] = {via(b2, j2, TOP): 1}
        else:
            img = {via(b2, j2, x): 1}
            if A.degree_of(e) == 0:
                img[via(a2, j2, "?")] = A.augmentation[e]
            g[src] = img
    right = ADCMap(Dsrc, Dtgt, g)
    return SpanOfMaps(left, right)


def verify_gray_cylinder(A: BasedADC, budget: int = DEFAULT_BUDGET) -> SuiteReport:
    with _suite("gray-cylinder", complex=A.name) as rep:
        span = gray_cylinder_span(A)
        _check_map(rep, "left leg", span.f)
        _check_map(rep, "right leg", span.g)
        target = tensor(suspend(A), cube(1))
        rep.params["expected_ranks"] = list(target.ranks())
        _check_pushout(rep, span, None, target, budget)
    return rep


# -- duality ----------------------------------------------------------------

def verify_dual_monoidal(A: BasedADC, B: BasedADC, budget: int = DEFAULT_BUDGET) -> SuiteReport:
    with _suite("dual-monoidal", A=A.name, B=B.name) as rep:
        tot, odd = DualitySelector.total(), DualitySelector.odd()
        lhs = dual(tensor(A, B), tot)
        rhs = tensor(dual(A, tot), dual(B, tot))
        rep.check("same labels", lhs.labels() == rhs.labels())
        if lhs.labels() == rhs.labels():
            f = ADCMap.from_labels(lhs, rhs, {x: x for x in lhs.labels()})
            _check_map(rep, "identity on labels (A⊗B)° → A°⊗B°", f)
            rep.check("identity is invertible", not validate_map(
                ADCMap.from_labels(rhs, lhs, {x: x for x in lhs.labels()})))
        iso = iso_search(dual(tensor(A, B), odd), tensor(dual(B, odd), dual(A, odd)), budget)
        rep.check("(A⊗B)^op ≅ B^op⊗A^op", iso is not None)
    return rep


# -- nerve of globes --------------------------------------------------------

def globe_nerve_oracle(q: int, max_dim: int) -> tuple:
    """Cells of the q-globe by dimension, derived by hand: 2(k+1) below q, 2q+1 from q on."""
    return tuple(2 * (k + 1) if k < q else 2 * q + 1 for k in range(max_dim + 1))


def verify_nerve_globe(q: int, cap: int = 4) -> SuiteReport:
    with _suite("nerve-globe", q=q, cap=cap) as rep:
        E = nerve.enumerate_cells(globe(q), q + 1, cap)
        rep.params["counts"] = list(E.counts)
        if E.truncated:
            rep.check("enumeration not truncated by the cap", False)
            rep.status = INCONCLUSIVE
            return rep
        expect = globe_nerve_oracle(q, q + 1)
        rep.check("counts match the oracle", E.counts == expect, f"{E.counts} != {expect}")
    return rep


# -- mutation battery -------------------------------------------------------

def _compose_without_t(x, y, q):
    n = max(x.dim, y.dim)
    if q >= n:
        raise nerve.NotComposable("level too high")
    x, y = nerve.cell_identity(x, n), nerve.cell_identity(y, n)
    if nerve.cell_target(x, q) != nerve.cell_source(y, q):
        raise nerve.NotComposable("not composable")
    return nerve.NerveCell(tuple((a[0] + b[0], a[1] + b[1]) for a, b in zip(x.table, y.table)))


def _axiom_report(A, cap=4, compose_fn=nerve.compose):
    with _suite("nerve-axioms", complex=A.name) as rep:
        E = nerve.enumerate_cells(A, A.max_degree, cap)
        res = nerve.axiom_suite(A, E, compose_fn=compose_fn)
        rep.check("no axiom violations", res.ok, res.violations[:1])
    return rep


def _flip_cone_case(n, first, alpha, _orig=cone_quotient_image):
    # the degree-0 collapse case of 1⊗α is dropped
    if first == "1":
        return {}
    return _orig(n, first, alpha)


def _battery_suites():
    return [
        ("wedge-retract(1,1)", lambda: verify_wedge_retract(1, 1)),
        ("wedge-retract(2,1)", lambda: verify_wedge_retract(2, 1)),
        ("cone-quotient(1)", lambda: verify_cone_quotient(1)),
        ("cone-quotient(2)", lambda: verify_cone_quotient(2)),
        ("gray-cylinder(cube(1))", lambda: verify_gray_cylinder(cube(1))),
        ("dual-monoidal(cube(1),cube(1))", lambda: verify_dual_monoidal(cube(1), cube(1))),
        ("nerve-axioms(cube(2))", lambda: _axiom_report(cube(2))),
    ]


MUTATIONS = {
    "dropped -t term": None,
    "flipped Koszul sign": (constructions, "_koszul_sign", lambda d: 1 if d % 2 else -1),
    "flipped h sign": (sys.modules[__name__], "_h_sign", lambda k: 1 if k % 2 else -1),
    "quotient-map case": (sys.modules[__name__], "cone_quotient_image", _flip_cone_case),
}


def mutation_battery() -> dict:
    """Run the suites under each mutation; maps mutation -> failing suite names."""
    out = {}
    for name, patch in MUTATIONS.items():
        failed = []
        if patch is None:
            for A in (cube(2), oriental(2)):
                rep = _axiom_report(A, compose_fn=_compose_without_t)
                if rep.status == FAIL:
                    failed.append(f"nerve-axioms({A.name})")
        else:
            module, attr, repl = patch
            original = getattr(module, attr)
            with mock.patch.object(module, attr, repl):
                for label, run in _battery_suites():
                    if run().status == FAIL:
                        failed.append(label)
            assert getattr(module, attr) is original
        out[name] = failed
    return out
