"""Based augmented directed chain complexes, chain elements and maps.

A based complex is stored as an ordered basis of labelled generators, an
integer differential on generators of positive degree and an integer
augmentation on generators of degree zero.  The positivity submonoid is
always the N-span of the basis.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional

INT64_MAX = 2**63 - 1


class CoefficientOverflow(OverflowError):
    pass


class StructureError(ValueError):
    """A complex or map that is not even well formed (bad labels/degrees)."""

    def __init__(self, message, label=None):
        super().__init__(message)
        self.label = label


class MapShapeError(StructureError):
    pass


def _check(c):
    if c > INT64_MAX or c < -INT64_MAX:
        raise CoefficientOverflow(f"coefficient {c} exceeds 64-bit range")
    return c


class ChainElement:
    """Sparse integer vector of one degree, keyed by basis label.

    Zero coefficients are never stored; equality is structural.
    """

    __slots__ = ("degree", "_terms", "_hash")

    def __init__(self, degree: int, terms: Mapping[str, int] | Iterable = ()):
        if degree < 0:
            raise ValueError("degree must be non-negative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        for label, c in items:
            c = clean.get(label, 0) + int(c)
            clean[label] = c
        self.degree = degree
        self._terms = {k: _check(v) for k, v in clean.items() if v != 0}
        self._hash = None

    @classmethod
    def zero(cls, degree):
        return cls(degree)

    @classmethod
    def basis(cls, degree, label, coef=1):
        return cls(degree, {label: coef})

    def items(self):
        return self._terms.items()

    def labels(self):
        return self._terms.keys()

    def coef(self, label):
        return self._terms.get(label, 0)

    def __getitem__(self, label):
        return self._terms.get(label, 0)

    def __contains__(self, label):
        return label in self._terms

    def __iter__(self) -> Iterator[str]:
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def is_positive(self):
        """True when every coefficient is >= 0 (the zero element included)."""
        return all(c > 0 for c in self._terms.values())

    def support(self) -> frozenset:
        return frozenset(self._terms)

    def _same_degree(self, other):
        if not isinstance(other, ChainElement):
            return NotImplemented
        if other.degree != self.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")
        return other

    def __add__(self, other):
        if self._same_degree(other) is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for k, v in other._terms.items():
            terms[k] = terms.get(k, 0) + v
        return ChainElement(self.degree, terms)

    def __sub__(self, other):
        if self._same_degree(other) is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for k, v in other._terms.items():
            terms[k] = terms.get(k, 0) - v
        return ChainElement(self.degree, terms)

    def __neg__(self):
        return ChainElement(self.degree, {k: -v for k, v in self._terms.items()})

    def __mul__(self, scalar):
        if not isinstance(scalar, int):
            return NotImplemented
        return ChainElement(self.degree, {k: scalar * v for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ChainElement):
            return NotImplemented
        return self.degree == other.degree and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.degree, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        if not self._terms:
            return f"ChainElement({self.degree}, 0)"
        body = " + ".join(f"{c}*{k}" for k, c in self._terms.items())
        return f"ChainElement({self.degree}, {body})"


def decompose(x: ChainElement) -> tuple[ChainElement, ChainElement]:
    """Split ``x`` as ``x_plus - x_minus`` with disjoint positive parts."""
    plus = {k: c for k, c in x.items() if c > 0}
    minus = {k: -c for k, c in x.items() if c < 0}
    return ChainElement(x.degree, plus), ChainElement(x.degree, minus)


def support(x: ChainElement) -> frozenset:
    return x.support()


@dataclass(frozen=True)
class BasisElement:
    label: str
    degree: int
    index: int


class BasedADC:
    """A finitely generated based augmented directed chain complex.

    ``basis`` is given as ``(label, degree)`` pairs; it is stored stably
    sorted by degree so that insertion index order is (degree, position).
    ``differential`` maps labels of positive degree to their boundary, either
    as a ChainElement or as a ``{label: coef}`` mapping; missing entries are
    zero.  ``augmentation`` maps degree-0 labels to integers; missing entries
    are zero.  Structural malformation raises StructureError; the chain
    complex axioms are checked separately by :func:`validate_complex`.
    """

    def __init__(self, basis: Iterable[tuple[str, int]], differential=None,
                 augmentation=None, bipointing: Optional[tuple[str, str]] = None,
                 name: str = "", max_degree: Optional[int] = None):
        pairs = [(str(label), int(deg)) for label, deg in basis]
        pairs.sort(key=lambda p: p[1])
        self.name = name
        elements = []
        by_label = {}
        for i, (label, deg) in enumerate(pairs):
            if deg < 0:
                raise StructureError(f"negative degree for {label!r}", label)
            if label in by_label:
                raise StructureError(f"duplicate label {label!r}", label)
            el = BasisElement(label, deg, i)
            by_label[label] = el
            elements.append(el)
        top = max((e.degree for e in elements), default=0)
        if max_degree is None:
            max_degree = top
        elif max_degree < top:
            raise StructureError(f"basis degree {top} exceeds max_degree {max_degree}")
        self.max_degree = max_degree
        self.basis = tuple(elements)
        self._by_label = by_label
        by_degree = {}
        for e in elements:
            by_degree.setdefault(e.degree, []).append(e.label)
        self._by_degree = {q: tuple(v) for q, v in by_degree.items()}

        differential = dict(differential or {})
        diff = {}
        for label, value in differential.items():
            el = by_label.get(label)
            if el is None:
                raise StructureError(f"differential of unknown label {label!r}", label)
            if el.degree == 0:
                if value:
                    raise StructureError(f"degree-0 element {label!r} has a differential", label)
                continue
            if not isinstance(value, ChainElement):
                value = ChainElement(el.degree - 1, value)
            elif value.degree != el.degree - 1:
                raise StructureError(f"boundary of {label!r} has degree {value.degree}", label)
            self._check_terms(value, label)
            diff[label] = value
        for el in elements:
            if el.degree > 0 and el.label not in diff:
                diff[el.label] = ChainElement.zero(el.degree - 1)
        self.differential = {e.label: diff[e.label] for e in elements if e.degree > 0}

        aug = {}
        for label, value in dict(augmentation or {}).items():
            el = by_label.get(label)
            if el is None:
                raise StructureError(f"augmentation of unknown label {label!r}", label)
            if el.degree != 0:
                raise StructureError(f"augmentation on non-zero degree label {label!r}", label)
            aug[label] = _check(int(value))
        self.augmentation = {lab: aug.get(lab, 0) for lab in self._by_degree.get(0, ())}

        if bipointing is not None:
            bipointing = tuple(bipointing)
            for lab in bipointing:
                el = by_label.get(lab)
                if el is None or el.degree != 0:
                    raise StructureError(f"bipointing label {lab!r} is not a degree-0 generator", lab)
        self.bipointing = bipointing

    def _check_terms(self, value, owner):
        for lab in value.labels():
            el = self._by_label.get(lab)
            if el is None:
                raise StructureError(f"boundary of {owner!r} mentions unknown label {lab!r}", lab)
            if el.degree != value.degree:
                raise StructureError(
                    f"boundary of {owner!r} mentions {lab!r} of degree {el.degree}", lab)

    # lookup helpers

    def __contains__(self, label):
        return label in self._by_label

    def element(self, label) -> BasisElement:
        return self._by_label[label]

    def degree_of(self, label) -> int:
        return self._by_label[label].degree

    def index_of(self, label) -> int:
        return self._by_label[label].index

    def labels(self, degree: Optional[int] = None) -> tuple:
        if degree is None:
            return tuple(e.label for e in self.basis)
        return self._by_degree.get(degree, ())

    def rank(self, degree: int) -> int:
        return len(self._by_degree.get(degree, ()))

    def ranks(self) -> tuple:
        return tuple(self.rank(q) for q in range(self.max_degree + 1)) if self.basis else ()

    def __len__(self):
        return len(self.basis)

    def boundary(self, x) -> ChainElement:
        """Apply the differential to a label or a ChainElement."""
        if isinstance(x, str):
            return self.differential[x]
        if x.degree == 0:
            raise ValueError("no differential on degree 0")
        terms = {}
        for lab, c in x.items():
            for t, d in self.differential[lab].items():
                terms[t] = terms.get(t, 0) + c * d
        return ChainElement(x.degree - 1, terms)

    def augment(self, x) -> int:
        if isinstance(x, str):
            return self.augmentation[x]
        if x.degree != 0:
            raise ValueError("augmentation is defined on degree 0 only")
        return _check(sum(c * self.augmentation[lab] for lab, c in x.items()))

    def generator(self, label, coef=1) -> ChainElement:
        return ChainElement(self.degree_of(label), {label: coef})

    def ordered_terms(self, x: ChainElement):
        return sorted(x.items(), key=lambda kv: self._by_label[kv[0]].index)

    def with_name(self, name) -> "BasedADC":
        return BasedADC([(e.label, e.degree) for e in self.basis], self.differential,
                        self.augmentation, self.bipointing, name, self.max_degree)

    def relabel(self, mapping: Mapping[str, str], name=None) -> "BasedADC":
        m = lambda lab: mapping.get(lab, lab)
        diff = {m(k): {m(t): c for t, c in v.items()} for k, v in self.differential.items()}
        aug = {m(k): v for k, v in self.augmentation.items()}
        bip = tuple(m(x) for x in self.bipointing) if self.bipointing else None
        return BasedADC([(m(e.label), e.degree) for e in self.basis], diff, aug, bip,
                        self.name if name is None else name, self.max_degree)

    def _key(self):
        return (self.max_degree,
                tuple((e.label, e.degree) for e in self.basis),
                tuple(sorted(self.differential.items(), key=lambda kv: kv[0])),
                tuple(sorted(self.augmentation.items())),
                self.bipointing)

    def __eq__(self, other):
        if not isinstance(other, BasedADC):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"BasedADC({self.name or '?'}, ranks={self.ranks()})"


@dataclass(frozen=True)
class Violation:
    kind: str
    witness: object
    detail: str = ""

    def __str__(self):
        text = f"{self.kind} at {self.witness}"
        return f"{text}: {self.detail}" if self.detail else text


def validate_complex(A: BasedADC) -> list[Violation]:
    """Check d∘d = 0 and ε∘d = 0; an empty list means A is an ADC."""
    report = []
    for el in A.basis:
        if el.degree >= 2:
            dd = A.boundary(A.differential[el.label])
            if dd:
                report.append(Violation("∂∂ ≠ 0", el.label, repr(dd)))
        elif el.degree == 1:
            e = A.augment(A.differential[el.label])
            if e != 0:
                report.append(Violation("ε∂ ≠ 0", el.label, f"ε(∂{el.label}) = {e}"))
    return report


def boundary_pm(A: BasedADC, x, sign: str) -> ChainElement:
    """The positive (``'+'``) or negative (``'-'``) half of ∂x."""
    if isinstance(x, str):
        x = A.generator(x)
    if x.degree == 0:
        raise ValueError("∂± is undefined in degree 0")
    plus, minus = decompose(A.boundary(x))
    if sign in ("+", 1):
        return plus
    if sign in ("-", "−", -1):
        return minus
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


class ADCMap:
    """A degree-preserving linear map given on basis elements.

    ``images`` sends each source label to a ChainElement of the target;
    missing labels map to zero.
    """

    def __init__(self, source: BasedADC, target: BasedADC, images: Mapping[str, object] = None,
                 name: str = ""):
        self.source = source
        self.target = target
        self.name = name
        images = dict(images or {})
        for lab in images:
            if lab not in source:
                raise MapShapeError(f"image given for unknown source label {lab!r}", lab)
        imgs = {}
        for el in source.basis:
            img = images.get(el.label)
            if img is None:
                img = ChainElement.zero(el.degree)
            elif not isinstance(img, ChainElement):
                img = ChainElement(el.degree, img)
            if img.degree != el.degree:
                raise MapShapeError(
                    f"image of {el.label!r} has degree {img.degree}, expected {el.degree}", el.label)
            for t in img.labels():
                if t not in target or target.degree_of(t) != el.degree:
                    raise MapShapeError(
                        f"image of {el.label!r} mentions {t!r} which is not a degree-{el.degree} "
                        "target generator", el.label)
            imgs[el.label] = img
        self.images = imgs

    @classmethod
    def identity(cls, A: BasedADC) -> "ADCMap":
        return cls(A, A, {e.label: A.generator(e.label) for e in A.basis}, name="id")

    @classmethod
    def from_labels(cls, source, target, mapping: Mapping[str, str]) -> "ADCMap":
        return cls(source, target, {s: target.generator(t) for s, t in mapping.items()})

    def __call__(self, x) -> ChainElement:
        if isinstance(x, str):
            return self.images[x]
        terms = {}
        for lab, c in x.items():
            for t, d in self.images[lab].items():
                terms[t] = terms.get(t, 0) + c * d
        return ChainElement(x.degree, terms)

    def matrix(self, degree: int) -> list[list[int]]:
        rows = self.target.labels(degree)
        cols = self.source.labels(degree)
        return [[self.images[c][r] for c in cols] for r in rows]

    def is_basis_bijection(self) -> bool:
        seen = set()
        for img in self.images.values():
            if len(img) != 1:
                return False
            (lab, c), = img.items()
            if c != 1 or lab in seen:
                return False
            seen.add(lab)
        return len(seen) == len(self.target.basis)

    def __eq__(self, other):
        if not isinstance(other, ADCMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.images == other.images)

    def __hash__(self):
        return hash(tuple(sorted(self.images.items(), key=lambda kv: kv[0])))

    def __repr__(self):
        return f"ADCMap({self.source.name or '?'} -> {self.target.name or '?'})"


def validate_map(f: ADCMap) -> list[Violation]:
    """Chain, augmentation and positivity conditions; empty list means valid."""
    report = []
    A, B = f.source, f.target
    for el in A.basis:
        img = f.images[el.label]
        if not img.is_positive():
            report.append(Violation("positivity violated", el.label, repr(img)))
        if el.degree == 0:
            if B.augment(img) != A.augmentation[el.label]:
                report.append(Violation("augmentation violated", el.label,
                                        f"{B.augment(img)} != {A.augmentation[el.label]}"))
        else:
            lhs = f(A.differential[el.label])
            rhs = B.boundary(img)
            if lhs != rhs:
                report.append(Violation("chain condition violated", el.label,
                                        f"f∂ = {lhs!r}, ∂f = {rhs!r}"))
    return report


def compose_maps(f: ADCMap, g: ADCMap) -> ADCMap:
    """The composite ``g ∘ f`` (apply ``f`` first)."""
    if f.target != g.source:
        raise MapShapeError("cannot compose: target of f differs from source of g")
    return ADCMap(f.source, g.target, {lab: g(img) for lab, img in f.images.items()})
