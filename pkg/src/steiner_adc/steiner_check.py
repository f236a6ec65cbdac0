"""Strong Steiner conditions: unitality, the basis preorder, loop-freeness.

Also hosts the basis-bijection search used for automorphisms and for
certifying isomorphisms between based complexes.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import networkx as nx

from .core import ADCMap, BasedADC, ChainElement, Violation, decompose, validate_complex

DEFAULT_BUDGET = 10**6


class SearchBudgetExceeded(RuntimeError):
    """A backtracking search hit its node budget; the outcome is inconclusive."""

    def __init__(self, budget):
        super().__init__(f"search budget of {budget} nodes exceeded")
        self.budget = budget


def _iterate(A: BasedADC, label: str, sign: str) -> int:
    x = A.generator(label)
    while x.degree > 0:
        plus, minus = decompose(A.boundary(x))
        x = plus if sign == "+" else minus
    return A.augment(x)


def unital(A: BasedADC) -> list[Violation]:
    """Basis elements whose iterated ∂+ or ∂- chain does not augment to 1."""
    report = []
    for el in A.basis:
        for sign in "+-":
            value = _iterate(A, el.label, sign)
            if value != 1:
                report.append(Violation(f"not unital ({sign})", el.label,
                                        f"ε∂{sign}…∂{sign}({el.label}) = {value}"))
    return report


@dataclass
class BasisPreorder:
    graph: nx.DiGraph
    closure: dict
    components: list

    def leq(self, a, b) -> bool:
        return a == b or b in self.closure[a]

    def lt(self, a, b) -> bool:
        return a != b and b in self.closure[a]


def generating_edges(A: BasedADC):
    """Pairs (a, b) meaning a ≤ b: a in supp ∂-b, or b in supp ∂+a."""
    edges = []
    for el in A.basis:
        if el.degree == 0:
            continue
        plus, minus = decompose(A.differential[el.label])
        for a in A.ordered_terms(minus):
            edges.append((a[0], el.label))
        for b in A.ordered_terms(plus):
            edges.append((el.label, b[0]))
    return edges


def basis_preorder(A: BasedADC) -> BasisPreorder:
    g = nx.DiGraph()
    g.add_nodes_from(A.labels())
    g.add_edges_from(generating_edges(A))
    closure = {n: nx.descendants(g, n) for n in g.nodes}
    comps = [c for c in nx.strongly_connected_components(g)]
    return BasisPreorder(g, closure, comps)


def loop_witness(A: BasedADC, preorder: Optional[BasisPreorder] = None):
    """None if the preorder is antisymmetric, otherwise one directed cycle."""
    P = preorder or basis_preorder(A)
    for comp in sorted(P.components, key=lambda c: min(A.index_of(x) for x in c)):
        if len(comp) > 1:
            start = min(comp, key=A.index_of)
            cycle = nx.find_cycle(P.graph.subgraph(comp), source=start)
            return [u for u, _ in cycle]
    return None


def strongly_loop_free(A: BasedADC) -> tuple[bool, Optional[list]]:
    w = loop_witness(A)
    return w is None, w


def is_strong_steiner(A: BasedADC) -> bool:
    return not validate_complex(A) and not unital(A) and strongly_loop_free(A)[0]


def is_total_order(A: BasedADC, preorder: Optional[BasisPreorder] = None) -> bool:
    P = preorder or basis_preorder(A)
    if loop_witness(A, P) is not None:
        raise ValueError("is_total_order requires a strongly loop-free basis")
    n = len(A.basis)
    sizes = sorted(len(s) for s in P.closure.values())
    return sizes == list(range(n))


def linear_extension(A: BasedADC, preorder: Optional[BasisPreorder] = None) -> list:
    """Basis labels sorted by the closure order (requires a total order)."""
    P = preorder or basis_preorder(A)
    return sorted(A.labels(), key=lambda x: -len(P.closure[x]))


_CUBE_RANK = {"0": 0, "?": 1, "1": 2}


def cube_signed_lex_cmp(u: str, v: str) -> int:
    """Compare cube basis strings a_n...a_1 in the signed lexicographic order.

    Returns -1, 0 or 1.  Positions are read from the right (a_1 is the last
    character); at the first difference the order 0 < ? < 1 applies when the
    shared lower part holds an even number of '?', and is reversed otherwise.
    """
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {u!r} vs {v!r}")
    for ch in u + v:
        if ch not in _CUBE_RANK:
            raise ValueError(f"not a cube label: {ch!r}")
    marks = 0
    for a, b in zip(reversed(u), reversed(v)):
        if a != b:
            less = _CUBE_RANK[a] < _CUBE_RANK[b]
            if marks % 2:
                less = not less
            return -1 if less else 1
        marks += a == "?"
    return 0


# -- basis bijection search -------------------------------------------------

def _cofaces(A: BasedADC):
    co = {lab: {} for lab in A.labels()}
    for lab, d in A.differential.items():
        for t, c in d.items():
            co[t][lab] = c
    return co


def _fingerprints(A: BasedADC, co):
    P = basis_preorder(A)
    below = {x: 0 for x in A.labels()}
    for x, up in P.closure.items():
        for y in up:
            below[y] += 1
    fp = {}
    for el in A.basis:
        lab = el.label
        d = A.differential.get(lab, ChainElement.zero(0))
        fp[lab] = (el.degree,
                   A.augmentation.get(lab),
                   tuple(sorted(c for _, c in d.items())),
                   tuple(sorted(co[lab].values())),
                   len(P.closure[lab]), below[lab])
    return fp


def basis_bijections(A: BasedADC, B: BasedADC, budget: int = DEFAULT_BUDGET,
                     first_only: bool = False):
    """Yield every label bijection A -> B that is an isomorphism of ADCs.

    A positive invertible map between based complexes permutes the bases, so
    this enumerates all isomorphisms.  Raises SearchBudgetExceeded when more
    than ``budget`` search nodes are visited.
    """
    if A.ranks() != B.ranks() or len(A.basis) != len(B.basis):
        return
    coA, coB = _cofaces(A), _cofaces(B)
    fpA, fpB = _fingerprints(A, coA), _fingerprints(B, coB)
    classes = {}
    for lab in B.labels():
        classes.setdefault(fpB[lab], []).append(lab)
    if sorted(fpA.values()) != sorted(fpB.values()):
        return
    # most constrained first, then top degree down so faces are checked early
    order = sorted(A.labels(), key=lambda x: (len(classes[fpA[x]]), -A.degree_of(x),
                                              A.index_of(x)))
    phi, inv = {}, {}
    nodes = [0]

    def consistent(a, b):
        da, db = A.differential.get(a), B.differential.get(b)
        if da is not None:
            for s, c in da.items():
                t = phi.get(s)
                if t is not None and db.coef(t) != c:
                    return False
            for t, c in db.items():
                s = inv.get(t)
                if s is not None and da.coef(s) != c:
                    return False
        for s, c in coA[a].items():
            t = phi.get(s)
            if t is not None and coB[b].get(t, 0) != c:
                return False
        for t, c in coB[b].items():
            s = inv.get(t)
            if s is not None and coA[a].get(s, 0) != c:
                return False
        return True

    def rec(i):
        if i == len(order):
            yield dict(phi)
            return
        a = order[i]
        for b in classes[fpA[a]]:
            if b in inv:
                continue
            nodes[0] += 1
            if nodes[0] > budget:
                raise SearchBudgetExceeded(budget)
            if consistent(a, b):
                phi[a], inv[b] = b, a
                yield from rec(i + 1)
                del phi[a], inv[b]

    for m in rec(0):
        yield m
        if first_only:
            return


def automorphisms(A: BasedADC, budget: int = DEFAULT_BUDGET) -> list[ADCMap]:
    """All ADC automorphisms of a based complex (identity included)."""
    return [ADCMap.from_labels(A, A, m) for m in basis_bijections(A, A, budget)]
