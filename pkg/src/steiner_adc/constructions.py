"""Operations on based ADCs: tensor, suspension, duals, wedge, sums, pushouts.

Label grammar of generated complexes:

* tensor: ``a⊗b`` (components are parenthesised only if plain joining
  would produce a clash),
* suspension: ``σa`` for shifted generators plus the new points ``⊥`` and ``⊤``,
* direct sum and wedge: labels kept when the two sides are disjoint,
  otherwise every label is prefixed ``1.`` or ``2.`` by side.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import intlinalg
from .core import ADCMap, BasedADC, ChainElement, MapShapeError, StructureError
from .steiner_check import DEFAULT_BUDGET, basis_bijections

BOTTOM, TOP = "⊥", "⊤"


def _koszul_sign(deg_right: int) -> int:
    # reversed Koszul rule: d(x⊗y) = (-1)^|y| dx⊗y + x⊗dy
    return -1 if deg_right % 2 else 1


def _tensor_labels(A, B):
    plain = {(a, b): f"{a}⊗{b}" for a in A.labels() for b in B.labels()}
    if len(set(plain.values())) == len(plain):
        return plain
    return {(a, b): f"({a})⊗({b})" for a in A.labels() for b in B.labels()}


def tensor(A: BasedADC, B: BasedADC, name: Optional[str] = None) -> BasedADC:
    """Tensor product under the reversed Koszul sign rule."""
    lab = _tensor_labels(A, B)
    basis = [(lab[a.label, b.label], a.degree + b.degree) for a in A.basis for b in B.basis]
    diff = {}
    for a in A.basis:
        for b in B.basis:
            if a.degree + b.degree == 0:
                continue
            terms = {}
            if a.degree > 0:
                s = _koszul_sign(b.degree)
                for x, c in A.differential[a.label].items():
                    k = lab[x, b.label]
                    terms[k] = terms.get(k, 0) + s * c
            if b.degree > 0:
                for y, c in B.differential[b.label].items():
                    k = lab[a.label, y]
                    terms[k] = terms.get(k, 0) + c
            diff[lab[a.label, b.label]] = terms
    aug = {lab[a, b]: A.augmentation[a] * B.augmentation[b]
           for a in A.labels(0) for b in B.labels(0)}
    bip = None
    if A.bipointing and B.bipointing:
        bip = (lab[A.bipointing[0], B.bipointing[0]], lab[A.bipointing[1], B.bipointing[1]])
    if name is None:
        name = f"({A.name}⊗{B.name})"
    return BasedADC(basis, diff, aug, bip, name, A.max_degree + B.max_degree)


def tensor_maps(f: ADCMap, g: ADCMap, source=None, target=None) -> ADCMap:
    """``f ⊗ g`` between the tensor products of the endpoints."""
    S = source or tensor(f.source, g.source)
    T = target or tensor(f.target, g.target)
    ls, lt = _tensor_labels(f.source, g.source), _tensor_labels(f.target, g.target)
    images = {}
    for a in f.source.labels():
        for b in g.source.labels():
            terms = {}
            for x, c in f.images[a].items():
                for y, d in g.images[b].items():
                    k = lt[x, y]
                    terms[k] = terms.get(k, 0) + c * d
            images[ls[a, b]] = terms
    return ADCMap(S, T, images)


def suspend(A: BasedADC, name: Optional[str] = None) -> BasedADC:
    """Unreduced suspension, bipointed by (⊥, ⊤)."""
    s = lambda x: "σ" + x
    basis = [(BOTTOM, 0), (TOP, 0)] + [(s(e.label), e.degree + 1) for e in A.basis]
    diff = {}
    for e in A.basis:
        if e.degree == 0:
            eps = A.augmentation[e.label]
            diff[s(e.label)] = {TOP: eps, BOTTOM: -eps}
        else:
            diff[s(e.label)] = {s(t): c for t, c in A.differential[e.label].items()}
    if name is None:
        name = f"σ({A.name})"
    top = A.max_degree + 1 if A.basis else 0
    return BasedADC(basis, diff, {BOTTOM: 1, TOP: 1}, (BOTTOM, TOP), name, top)


def suspend_map(f: ADCMap, source=None, target=None) -> ADCMap:
    S = source or suspend(f.source)
    T = target or suspend(f.target)
    images = {BOTTOM: {BOTTOM: 1}, TOP: {TOP: 1}}
    for lab, img in f.images.items():
        images["σ" + lab] = {"σ" + t: c for t, c in img.items()}
    return ADCMap(S, T, images)


@dataclass(frozen=True)
class DualitySelector:
    """Which differentials to negate: a parity pattern plus a finite xor mask.

    Bit ``k`` of ``mask`` toggles degree ``k`` (k >= 1).
    """

    flip_odd: bool = False
    flip_even: bool = False
    mask: int = 0

    @classmethod
    def odd(cls):
        return cls(flip_odd=True)

    @classmethod
    def even(cls):
        return cls(flip_even=True)

    @classmethod
    def total(cls):
        return cls(flip_odd=True, flip_even=True)

    @classmethod
    def identity(cls):
        return cls()

    @classmethod
    def parse(cls, text: str) -> "DualitySelector":
        presets = {"odd": cls.odd, "even": cls.even, "total": cls.total,
                   "none": cls.identity}
        if text in presets:
            return presets[text]()
        mask = int(text, 0)
        if mask < 0:
            raise ValueError("bitmask must be non-negative")
        return cls(mask=mask & ~1)

    def flips(self, n: int) -> bool:
        if n < 1:
            return False
        base = self.flip_odd if n % 2 else self.flip_even
        return base ^ bool(self.mask >> n & 1)

    def compose(self, other: "DualitySelector") -> "DualitySelector":
        return DualitySelector(self.flip_odd ^ other.flip_odd,
                               self.flip_even ^ other.flip_even, self.mask ^ other.mask)

    def is_identity(self) -> bool:
        return not self.flip_odd and not self.flip_even and not self.mask


def dual(A: BasedADC, tau: DualitySelector, name: Optional[str] = None) -> BasedADC:
    """Negate the differential in every degree selected by ``tau``."""
    diff = {lab: (-d if tau.flips(d.degree + 1) else d) for lab, d in A.differential.items()}
    return BasedADC([(e.label, e.degree) for e in A.basis], diff, A.augmentation,
                    A.bipointing, name if name is not None else f"D({A.name})", A.max_degree)


def _side_labels(A, B):
    if set(A.labels()).isdisjoint(B.labels()):
        return {x: x for x in A.labels()}, {x: x for x in B.labels()}
    return ({x: "1." + x for x in A.labels()}, {x: "2." + x for x in B.labels()})


def _glue(A, B, la, lb, name, bipointing):
    basis, seen = [], set()
    for X, m in ((A, la), (B, lb)):
        for e in X.basis:
            if m[e.label] not in seen:
                seen.add(m[e.label])
                basis.append((m[e.label], e.degree))
    diff, aug = {}, {}
    for X, m in ((A, la), (B, lb)):
        for lab, d in X.differential.items():
            terms = {}
            for t, c in d.items():
                terms[m[t]] = terms.get(m[t], 0) + c
            diff[m[lab]] = terms
        for lab, v in X.augmentation.items():
            aug[m[lab]] = v
    return BasedADC(basis, diff, aug, bipointing, name, max(A.max_degree, B.max_degree))


def direct_sum_inclusions(A: BasedADC, B: BasedADC, name=None):
    la, lb = _side_labels(A, B)
    S = _glue(A, B, la, lb, name if name is not None else f"({A.name}⊕{B.name})", None)
    return S, ADCMap.from_labels(A, S, la), ADCMap.from_labels(B, S, lb)


def direct_sum(A: BasedADC, B: BasedADC, name=None) -> BasedADC:
    return direct_sum_inclusions(A, B, name)[0]


def wedge_inclusions(A: BasedADC, B: BasedADC, name=None):
    """Wedge sum with its two inclusion maps.

    The sink of A and the source of B become one generator carrying the
    (possibly prefixed) label of A's sink.
    """
    if not A.bipointing or not B.bipointing:
        raise StructureError("wedge needs two bipointed complexes")
    if A.augmentation[A.bipointing[1]] != B.augmentation[B.bipointing[0]]:
        raise StructureError("wedge points have different augmentations")
    la, lb = _side_labels(A, B)
    lb = dict(lb)
    lb[B.bipointing[0]] = la[A.bipointing[1]]
    W = _glue(A, B, la, lb, name if name is not None else f"({A.name}∨{B.name})",
              (la[A.bipointing[0]], lb[B.bipointing[1]]))
    return W, ADCMap.from_labels(A, W, la), ADCMap.from_labels(B, W, lb)


def wedge(A: BasedADC, B: BasedADC, name=None) -> BasedADC:
    return wedge_inclusions(A, B, name)[0]


# -- pushouts ---------------------------------------------------------------

@dataclass(frozen=True)
class SpanOfMaps:
    f: ADCMap
    g: ADCMap

    def __post_init__(self):
        if self.f.source != self.g.source:
            raise MapShapeError("span legs must share their source")


@dataclass
class PushoutResult:
    """Degreewise pushout; ``complex``/``inl``/``inr`` are set only when based."""

    free_ranks: tuple
    torsion: dict
    is_based: bool
    complex: Optional[BasedADC] = None
    inl: Optional[ADCMap] = None
    inr: Optional[ADCMap] = None
    reason: str = ""


def _indecomposables(images, cap):
    """Distinct nonzero images that are not N-combinations of the others."""
    distinct = []
    for v in images:
        if any(v) and v not in distinct:
            distinct.append(v)
    keep = []
    for i, v in enumerate(distinct):
        others = [w for j, w in enumerate(distinct) if j != i]
        if others:
            M = [[w[r] for w in others] for r in range(len(v))]
            sols = intlinalg.solve_nonneg(M, v, cap, check_cap=False).solutions
            if sols:
                continue
        keep.append(v)
    return keep


def degreewise_pushout(span: SpanOfMaps, name: str = "pushout") -> PushoutResult:
    """Pushout of ``B <-f- A -g-> C`` computed degree by degree.

    Each degree is the cokernel of ``(f, -g): A_n -> B_n ⊕ C_n``.  The result
    is a based complex when every cokernel is free and the images of the B
    and C generators are N-combinations of a basis drawn from those images.
    """
    f, g = span.f, span.g
    A, B, C = f.source, f.target, g.target
    top = max(A.max_degree, B.max_degree, C.max_degree)
    gens, proj, free, tors = {}, {}, [], {}
    for n in range(top + 1):
        gl = [("B", b) for b in B.labels(n)] + [("C", c) for c in C.labels(n)]
        pos = {x: i for i, x in enumerate(gl)}
        cols = []
        for a in A.labels(n):
            col = [0] * len(gl)
            for t, c in f.images[a].items():
                col[pos["B", t]] += c
            for t, c in g.images[a].items():
                col[pos["C", t]] -= c
            cols.append(col)
        N = len(gl)
        if cols and N:
            R = [[col[i] for col in cols] for i in range(N)]
            _, Uinv, D, _, _ = intlinalg._smith(R)
            diag = [d for d in intlinalg.diagonal(D) if d]
        else:
            Uinv, diag = intlinalg.identity(N), []
        k = len(diag)
        t = tuple(d for d in diag if d > 1)
        if t:
            tors[n] = t
        gens[n] = gl
        proj[n] = Uinv[k:]
        free.append(N - k)
    free = tuple(free)
    if tors:
        return PushoutResult(free, tors, False, reason="torsion in cokernel")

    # pick a positivity basis among the generator images in each degree
    basis_vecs, coords, labels = {}, {}, {}
    for n in range(top + 1):
        P, gl = proj[n], gens[n]
        imgs = [tuple(P[r][i] for r in range(len(P))) for i in range(len(gl))]
        cap = max((sum(abs(x) for x in v) for v in imgs), default=0)
        S = _indecomposables(imgs, max(cap, 1))
        if len(S) != free[n]:
            return PushoutResult(free, tors, False,
                                 reason=f"degree {n}: {len(S)} indecomposable images, rank {free[n]}")
        T = [[s[r] for s in S] for r in range(free[n])]
        if free[n] and abs(intlinalg.determinant(T)) != 1:
            return PushoutResult(free, tors, False, reason=f"degree {n}: images do not span")
        co = []
        for v in imgs:
            z = intlinalg.solve_unimodular(T, list(v)) if free[n] else []
            if z is None or any(c < 0 for c in z):
                return PushoutResult(free, tors, False,
                                     reason=f"degree {n}: image not an N-combination of the basis")
            co.append(z)
        coords[n] = co
        names = []
        for s in S:
            i = imgs.index(s)
            side, lab = gl[i]
            names.append(lab if side == "B" else ("C:" + lab if lab in B else lab))
        labels[n] = names
        basis_vecs[n] = S

    def as_chain(n, z):
        return ChainElement(n, {labels[n][i]: c for i, c in enumerate(z) if c})

    def embed(n, side, x: ChainElement):
        vec = [0] * len(gens[n])
        pos = {y: i for i, y in enumerate(gens[n])}
        for lab, c in x.items():
            vec[pos[side, lab]] += c
        return vec

    basis, diff, aug = [], {}, {}
    for n in range(top + 1):
        for j, lab in enumerate(labels[n]):
            basis.append((lab, n))
            unit = [int(r == j) for r in range(free[n])]
            i = coords[n].index(unit)
            side, glab = gens[n][i]
            X = B if side == "B" else C
            if n == 0:
                aug[lab] = X.augmentation[glab]
            else:
                v = embed(n - 1, side, X.differential[glab])
                P = proj[n - 1]
                y = intlinalg.matvec(P, v)
                T = [[s[r] for s in basis_vecs[n - 1]] for r in range(free[n - 1])]
                z = intlinalg.solve_unimodular(T, y) if free[n - 1] else []
                diff[lab] = {labels[n - 1][r]: c for r, c in enumerate(z) if c}
    bip = None
    Q = BasedADC(basis, diff, aug, bip, name, top)
    inl_img, inr_img = {}, {}
    for n in range(top + 1):
        for i, (side, lab) in enumerate(gens[n]):
            (inl_img if side == "B" else inr_img)[lab] = as_chain(n, coords[n][i])
    inl = ADCMap(B, Q, inl_img)
    inr = ADCMap(C, Q, inr_img)
    return PushoutResult(free, tors, True, Q, inl, inr)


def iso_search(A: BasedADC, B: BasedADC, budget: int = DEFAULT_BUDGET) -> Optional[ADCMap]:
    """An isomorphism A -> B if one exists, else None.

    Raises SearchBudgetExceeded when the search is inconclusive.
    """
    for m in basis_bijections(A, B, budget, first_only=True):
        return ADCMap.from_labels(A, B, m)
    return None


def map_to_point(A: BasedADC, point: BasedADC) -> ADCMap:
    """The map to a one-point complex sending a vertex x to ε(x) times the point."""
    (p,) = point.labels()
    return ADCMap(A, point, {x: {p: A.augmentation[x]} for x in A.labels(0)})
