"""Canonical strong Steiner complexes: unit, globes, cubes, orientals, Θ."""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from .constructions import suspend, wedge
from .core import BasedADC

MAX_SIZE = 12
POINT = "*"


def unit() -> BasedADC:
    return BasedADC([(POINT, 0)], {}, {POINT: 1}, (POINT, POINT), "unit")


def empty() -> BasedADC:
    return BasedADC([], name="empty")


def globe(q: int) -> BasedADC:
    """The q-globe: q-fold suspension of the unit."""
    if q < 0:
        raise ValueError("globe dimension must be >= 0")
    A = unit()
    for _ in range(q):
        A = suspend(A)
    return A.with_name(f"globe({q})")


def boundary_interval() -> BasedADC:
    """The two endpoints of the interval, labelled like cube(1)."""
    return BasedADC([("0", 0), ("1", 0)], {}, {"0": 1, "1": 1}, ("0", "1"), "∂cube(1)")


def cube(n: int) -> BasedADC:
    """The n-fold lax Gray power of the interval, basis strings a_n...a_1."""
    if n < 0 or n > MAX_SIZE:
        raise ValueError(f"cube dimension must be in [0, {MAX_SIZE}]")
    words = ["".join(w) for w in itertools.product("01?", repeat=n)]
    basis = [(w, w.count("?")) for w in words]
    diff = {}
    for w in words:
        terms = {}
        marks = 0
        # position i counts from the right; the sign collects the '?' to its right
        for i in range(n - 1, -1, -1):
            if w[i] == "?":
                sign = -1 if marks % 2 else 1
                terms[w[:i] + "1" + w[i + 1:]] = sign
                terms[w[:i] + "0" + w[i + 1:]] = -sign
                marks += 1
        if marks:
            diff[w] = terms
    aug = {w: 1 for w in words if "?" not in w}
    return BasedADC(basis, diff, aug, ("0" * n, "1" * n), f"cube({n})", n)


def two_loop() -> BasedADC:
    """Two parallel edges pointing opposite ways; unital but not loop-free."""
    return BasedADC([("x", 0), ("y", 0), ("a", 1), ("b", 1)],
                    {"a": {"y": 1, "x": -1}, "b": {"x": 1, "y": -1}},
                    {"x": 1, "y": 1}, None, "two-loop")


def simplex_label(vertices) -> str:
    return "{" + ",".join(str(v) for v in sorted(vertices)) + "}"


def parse_simplex(label: str) -> tuple:
    return tuple(int(x) for x in label.strip("{}").split(",") if x != "")


def oriental(n: int) -> BasedADC:
    """Normalized chains on the n-simplex with the alternating-sum differential."""
    if n < 0 or n > MAX_SIZE:
        raise ValueError(f"oriental dimension must be in [0, {MAX_SIZE}]")
    basis, diff, aug = [], {}, {}
    for k in range(n + 1):
        for alpha in itertools.combinations(range(n + 1), k + 1):
            lab = simplex_label(alpha)
            basis.append((lab, k))
            if k == 0:
                aug[lab] = 1
            else:
                diff[lab] = {simplex_label(alpha[:i] + alpha[i + 1:]): (-1) ** i
                             for i in range(k + 1)}
    return BasedADC(basis, diff, aug, ("{0}", "{%d}" % n), f"oriental({n})", n)


# -- Θ trees ---------------------------------------------------------------

@dataclass(frozen=True)
class Point:
    def __str__(self):
        return "*"


@dataclass(frozen=True)
class Susp:
    inner: "ThetaTree"

    def __str__(self):
        return f"s({self.inner})"


@dataclass(frozen=True)
class Wedge:
    left: "ThetaTree"
    right: "ThetaTree"

    def __str__(self):
        r = f"({self.right})" if isinstance(self.right, Wedge) else str(self.right)
        return f"{self.left} v {r}"


ThetaTree = Union[Point, Susp, Wedge]


class ThetaSyntaxError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\*)|(s)\s*\(|(\()|(\))|(v))")


def parse_theta(text: str) -> ThetaTree:
    """Parse ``*``, ``s(E)`` and left-associative ``E v E``."""
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ThetaSyntaxError(f"unexpected input at position {pos}: {text[pos:]!r}")
        kind = next(i for i, g in enumerate(m.groups()) if g)
        tokens.append(("*", "s(", "(", ")", "v")[kind])
        pos = m.end()
    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else None

    def take(expected=None):
        nonlocal i
        tok = peek()
        if tok is None or (expected and tok != expected):
            raise ThetaSyntaxError(f"expected {expected or 'a term'}, got {tok!r}")
        i += 1
        return tok

    def atom():
        tok = take()
        if tok == "*":
            return Point()
        if tok == "s(":
            inner = expr()
            take(")")
            return Susp(inner)
        if tok == "(":
            inner = expr()
            take(")")
            return inner
        raise ThetaSyntaxError(f"unexpected {tok!r}")

    def expr():
        node = atom()
        while peek() == "v":
            take("v")
            node = Wedge(node, atom())
        return node

    tree = expr()
    if i != len(tokens):
        raise ThetaSyntaxError(f"trailing input after {tree}")
    return tree


def node_count(t: ThetaTree) -> int:
    if isinstance(t, Point):
        return 1
    if isinstance(t, Susp):
        return 1 + node_count(t.inner)
    return 1 + node_count(t.left) + node_count(t.right)


@lru_cache(maxsize=None)
def theta_trees(max_nodes: int) -> tuple:
    """Every syntactic Θ-tree with at most ``max_nodes`` nodes."""
    exact = {1: [Point()]}
    for n in range(2, max_nodes + 1):
        trees = [Susp(t) for t in exact.get(n - 1, [])]
        for k in range(1, n - 1):
            for left in exact.get(k, []):
                for right in exact.get(n - 1 - k, []):
                    trees.append(Wedge(left, right))
        exact[n] = trees
    return tuple(t for n in range(1, max_nodes + 1) for t in exact.get(n, []))


def theta(t: Union[ThetaTree, str]) -> BasedADC:
    if isinstance(t, str):
        t = parse_theta(t)
    if isinstance(t, Point):
        A = unit()
    elif isinstance(t, Susp):
        A = suspend(theta(t.inner))
    elif isinstance(t, Wedge):
        A = wedge(theta(t.left), theta(t.right))
    else:
        raise ThetaSyntaxError(f"not a Θ-tree: {t!r}")
    return A.with_name(f"theta({t})")
