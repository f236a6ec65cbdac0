"""Cells of Steiner's nerve as tables of positive chains.

An n-cell is a table ``((x0-, x0+), ..., (xn-, xn+))`` of positive chains
with ``xn- = xn+``, ``∂xi± = x(i-1)+ - x(i-1)-`` and ``ε(x0±) = 1``; it is the
matrix of a map from the linearised n-globe into the complex.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from . import intlinalg
from .core import BasedADC, ChainElement, Violation, decompose


class NotComposable(ValueError):
    pass


@dataclass(frozen=True)
class NerveCell:
    table: tuple  # of (minus, plus) ChainElement pairs, degrees 0..dim

    @property
    def dim(self) -> int:
        return len(self.table) - 1

    def minus(self, i):
        return self.table[i][0]

    def plus(self, i):
        return self.table[i][1]

    @property
    def top(self) -> ChainElement:
        return self.table[-1][0]

    def __str__(self):
        rows = []
        for i, (m, p) in enumerate(self.table):
            if m == p:
                rows.append(f"x{i}={_fmt(m)}")
            else:
                rows.append(f"x{i}=({_fmt(m)} | {_fmt(p)})")
        return "[" + "; ".join(rows) + "]"


def _fmt(x):
    if not x:
        return "0"
    return "+".join(lab if c == 1 else f"{c}{lab}" for lab, c in sorted(x.items()))


def make_cell(pairs) -> NerveCell:
    """Build a cell from (minus, plus) pairs given as ChainElements or dicts."""
    table = []
    for i, (m, p) in enumerate(pairs):
        m = m if isinstance(m, ChainElement) else ChainElement(i, m)
        p = p if isinstance(p, ChainElement) else ChainElement(i, p)
        table.append((m, p))
    return NerveCell(tuple(table))


def validate_cell(A: BasedADC, x: NerveCell) -> list[Violation]:
    report = []
    n = x.dim
    for i, (m, p) in enumerate(x.table):
        for side, y in (("-", m), ("+", p)):
            if y.degree != i:
                report.append(Violation("degree mismatch", f"x{i}{side}"))
                return report
            if not y.is_positive():
                report.append(Violation("not positive", f"x{i}{side}", repr(y)))
            if i > 0 and A.boundary(y) != x.plus(i - 1) - x.minus(i - 1):
                report.append(Violation("boundary mismatch", f"x{i}{side}",
                                        f"∂ = {_fmt(A.boundary(y))}"))
    if x.minus(n) != x.plus(n):
        report.append(Violation("top not equal", f"x{n}"))
    for side, y in (("-", x.minus(0)), ("+", x.plus(0))):
        if A.augment(y) != 1:
            report.append(Violation("augmentation ≠ 1", f"x0{side}", str(A.augment(y))))
    return report


def atom(A: BasedADC, label: str) -> NerveCell:
    """The cell generated by one basis element via iterated ∂-/∂+."""
    b = A.generator(label)
    rows = [(b, b)]
    x = b
    while x.degree > 0:
        plus, minus = decompose(A.boundary(x))
        rows.append((minus, plus))
        x = minus
    return NerveCell(tuple(reversed(rows)))


def cell_source(x: NerveCell, q: int) -> NerveCell:
    if q > x.dim or q < 0:
        raise ValueError(f"source level {q} out of range for a {x.dim}-cell")
    m = x.minus(q)
    return NerveCell(x.table[:q] + ((m, m),))


def cell_target(x: NerveCell, q: int) -> NerveCell:
    if q > x.dim or q < 0:
        raise ValueError(f"target level {q} out of range for a {x.dim}-cell")
    p = x.plus(q)
    return NerveCell(x.table[:q] + ((p, p),))


def cell_identity(x: NerveCell, p: int) -> NerveCell:
    if p < x.dim:
        raise ValueError("identity dimension must be >= cell dimension")
    pad = tuple((ChainElement.zero(i), ChainElement.zero(i)) for i in range(x.dim + 1, p + 1))
    return NerveCell(x.table + pad)


def compose(x: NerveCell, y: NerveCell, q: int) -> NerveCell:
    """``x *_q y``: x first, glued along its q-target and the q-source of y."""
    n = max(x.dim, y.dim)
    if q >= n or q < 0:
        raise NotComposable(f"cannot compose {x.dim}- and {y.dim}-cells along level {q}")
    x, y = cell_identity(x, n), cell_identity(y, n)
    t = cell_target(x, q)
    if t != cell_source(y, q):
        raise NotComposable("q-target of the first cell differs from q-source of the second")
    table = []
    for i in range(n + 1):
        if i <= q:
            tm, tp = t.table[i]
        else:
            tm = tp = ChainElement.zero(i)
        table.append((x.minus(i) + y.minus(i) - tm, x.plus(i) + y.plus(i) - tp))
    return NerveCell(tuple(table))


@dataclass
class CellEnumeration:
    cells: dict  # dim -> list of NerveCell
    truncated: bool
    cap: int

    @property
    def counts(self) -> tuple:
        return tuple(len(self.cells[k]) for k in sorted(self.cells))

    def all_cells(self):
        return [c for k in sorted(self.cells) for c in self.cells[k]]


def enumerate_cells(A: BasedADC, max_dim: int, cap: int = 8,
                    budget: Optional[int] = None) -> CellEnumeration:
    """Every cell of dimension <= max_dim whose coefficients are <= cap.

    An n-cell is a pair of parallel (n-1)-cells (s, t) together with a
    positive x with ∂x = top(t) - top(s); these are found by bounded
    N-solving.  ``truncated`` is set when any solve had an active box bound,
    or when a dimension would exceed ``budget`` cells (enumeration then stops).
    """
    truncated = False
    labels0 = A.labels(0)
    eps_row = [[A.augmentation[x] for x in labels0]]
    sols = intlinalg.solve_nonneg(eps_row, [1], cap, ncols=len(labels0))
    truncated |= sols.cap_hit
    level = []
    for s in sols.solutions:
        v = ChainElement(0, dict(zip(labels0, s)))
        level.append(NerveCell(((v, v),)))
    cells = {0: level}
    for n in range(1, max_dim + 1):
        rows, cols = A.labels(n - 1), A.labels(n)
        row_pos = {r: i for i, r in enumerate(rows)}
        M = [[A.differential[c][r] for c in cols] for r in rows]
        groups = {}
        for c in cells[n - 1]:
            groups.setdefault(c.table[:-1], []).append(c)
        cache = {}
        out = []
        for members in groups.values():
            for s in members:
                for t in members:
                    v = t.top - s.top
                    key = v
                    if key not in cache:
                        vec = [0] * len(rows)
                        for lab, c in v.items():
                            vec[row_pos[lab]] = c
                        res = intlinalg.solve_nonneg(M, vec, cap, ncols=len(cols))
                        truncated |= res.cap_hit
                        cache[key] = [ChainElement(n, dict(zip(cols, sol))) for sol in res.solutions]
                    for x in cache[key]:
                        out.append(NerveCell(s.table[:-1] + ((s.top, t.top), (x, x))))
                    if budget is not None and len(out) > budget:
                        cells[n] = out[:budget]
                        return CellEnumeration(cells, True, cap)
        cells[n] = out
    return CellEnumeration(cells, truncated, cap)


@dataclass
class AxiomReport:
    checks: dict = field(default_factory=dict)  # check name -> number of instances
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def _fail(self, kind, *witness):
        if len(self.violations) < 50:
            self.violations.append((kind, tuple(str(w) for w in witness)))
        else:
            self.violations.append((kind, ()))

    def _count(self, kind, k=1):
        self.checks[kind] = self.checks.get(kind, 0) + k


def axiom_suite(A: BasedADC, cells, compose_fn: Callable = compose) -> AxiomReport:
    """Exhaustively check the strict ω-category axioms on a finite cell set.

    Composites are computed with ``compose_fn`` and need not lie in the set.
    """
    if isinstance(cells, CellEnumeration):
        cells = cells.all_cells()
    rep = AxiomReport()
    by_dim = {}
    for c in cells:
        by_dim.setdefault(c.dim, []).append(c)

    def comp(x, y, q, *witness):
        try:
            return compose_fn(x, y, q)
        except NotComposable:
            rep._fail("composite undefined", x, y, q)
            return None

    for c in cells:
        rep._count("cell valid")
        if validate_cell(A, c):
            rep._fail("cell invalid", c)
        p = c.dim
        for q in range(p):
            sq, tq = cell_source(c, q), cell_target(c, q)
            for r in range(q):
                rep._count("globularity")
                sr, tr = cell_source(c, r), cell_target(c, r)
                if not (cell_source(sq, r) == sr == cell_source(tq, r)):
                    rep._fail("globularity (source)", c, q, r)
                if not (cell_target(tq, r) == tr == cell_target(sq, r)):
                    rep._fail("globularity (target)", c, q, r)
            rep._count("unit laws")
            left = comp(cell_identity(sq, p), c, q)
            right = comp(c, cell_identity(tq, p), q)
            if left != c:
                rep._fail("left unit", c, q)
            if right != c:
                rep._fail("right unit", c, q)

    for p, S in by_dim.items():
        for q in range(p):
            by_src = {}
            for c in S:
                by_src.setdefault(cell_source(c, q), []).append(c)
            pairs = [(x, y) for x in S for y in by_src.get(cell_target(x, q), [])]
            prod = {}
            for x, y in pairs:
                z = comp(x, y, q)
                if z is None:
                    continue
                prod[x, y] = z
                rep._count("composite")
                if validate_cell(A, z):
                    rep._fail("composite invalid", x, y, q)
                if cell_source(z, q) != cell_source(x, q) or cell_target(z, q) != cell_target(y, q):
                    rep._fail("composite boundary", x, y, q)
            for (x, y), xy in prod.items():
                for z in by_src.get(cell_target(y, q), []):
                    rep._count("associativity")
                    yz = prod.get((y, z))
                    if yz is None:
                        continue
                    a, b = comp(xy, z, q), comp(x, yz, q)
                    if a != b:
                        rep._fail("associativity", x, y, z, q)
            # interchange against every lower level r
            for r in range(q):
                src_r = {}
                for c in S:
                    src_r.setdefault(cell_source(c, r), []).append(c)
                for (f, g), fg in prod.items():
                    for h in src_r.get(cell_target(f, r), []):
                        for k in by_src.get(cell_target(h, q), []):
                            if cell_source(k, r) != cell_target(g, r):
                                continue
                            hk = prod.get((h, k))
                            if hk is None:
                                continue
                            rep._count("interchange")
                            fh = comp(f, h, r)
                            gk = comp(g, k, r)
                            lhs = comp(fg, hk, r)
                            rhs = comp(fh, gk, q) if fh is not None and gk is not None else None
                            if lhs is None or rhs is None or lhs != rhs:
                                rep._fail("interchange", f, g, h, k, q, r)
    return rep
