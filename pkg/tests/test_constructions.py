import pytest
from hypothesis import given, settings, strategies as st

from steiner_adc import constructions as C
from steiner_adc.constructions import (BOTTOM, TOP, DualitySelector, SpanOfMaps,
                                       degreewise_pushout, direct_sum, dual, iso_search,
                                       suspend, tensor, wedge)
from steiner_adc.core import ADCMap, BasedADC, ChainElement, StructureError, validate_complex
from steiner_adc.shapes import cube, globe, oriental, theta, theta_trees, unit
from steiner_adc.steiner_check import is_strong_steiner

SMALL = [unit(), cube(1), cube(2), oriental(2), globe(1), globe(2), theta("* v s(*)")]
small = st.sampled_from(SMALL)


def same_data(A, B):
    """Equality up to the order in which the basis was listed."""
    return (set(A.labels()) == set(B.labels())
            and all(A.degree_of(x) == B.degree_of(x) for x in A.labels())
            and A.differential == B.differential and A.augmentation == B.augmentation
            and A.bipointing == B.bipointing)


def convolve(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_tensor_of_intervals_is_the_cube(n):
    # the cube is built from its own closed-form differential, so this
    # cross-checks the tensor sign rule
    left = tensor(cube(1), cube(n - 1)).relabel(
        {f"{a}⊗{w}": a + w for a in "01?" for w in cube(n - 1).labels()})
    right = tensor(cube(n - 1), cube(1)).relabel(
        {f"{w}⊗{a}": w + a for a in "01?" for w in cube(n - 1).labels()})
    assert left == cube(n)
    assert same_data(right, cube(n))


def test_tensor_square_boundary():
    d = tensor(cube(1), cube(1)).differential["?⊗?"]
    assert d == ChainElement(1, {"0⊗?": 1, "1⊗?": -1, "?⊗1": 1, "?⊗0": -1})


@settings(max_examples=30, deadline=None)
@given(small, small)
def test_tensor_is_strong_steiner_with_convolved_ranks(A, B):
    T = tensor(A, B)
    assert validate_complex(T) == []
    assert is_strong_steiner(T)
    assert T.ranks() == convolve(A.ranks(), B.ranks())


@settings(max_examples=15, deadline=None)
@given(small, small, small)
def test_tensor_associative_on_labels(A, B, D):
    left = tensor(tensor(A, B), D)
    right = tensor(A, tensor(B, D))
    mapping = {}
    for a in A.labels():
        for b in B.labels():
            for d in D.labels():
                lab_ab = C._tensor_labels(A, B)[a, b]
                lab_bd = C._tensor_labels(B, D)[b, d]
                mapping[C._tensor_labels(tensor(A, B), D)[lab_ab, d]] = \
                    C._tensor_labels(A, tensor(B, D))[a, lab_bd]
    assert same_data(left.relabel(mapping), right)


def test_tensor_label_clash_is_parenthesised():
    A = BasedADC([("a", 0), ("a⊗b", 0)], {}, {"a": 1, "a⊗b": 1})
    B = BasedADC([("b", 0), ("b⊗b", 0)], {}, {"b": 1, "b⊗b": 1})
    T = tensor(A, B)
    assert len(set(T.labels())) == 4
    assert "(a)⊗(b)" in T.labels()


class TestSuspension:
    def test_interval(self):
        S = suspend(unit())
        assert S.differential["σ*"] == ChainElement(0, {TOP: 1, BOTTOM: -1})
        assert S.bipointing == (BOTTOM, TOP)

    def test_higher_degree_is_shifted(self):
        S = suspend(cube(1))
        assert S.differential["σ?"] == ChainElement(1, {"σ1": 1, "σ0": -1})
        assert S.ranks() == (2, 2, 1)

    @pytest.mark.parametrize("q", range(6))
    def test_globe_ranks(self, q):
        assert globe(q).ranks() == tuple([2] * q + [1])


class TestDuality:
    def test_selector_parse(self):
        assert DualitySelector.parse("odd").flips(1) and not DualitySelector.parse("odd").flips(2)
        assert DualitySelector.parse("even").flips(2)
        assert DualitySelector.parse("total").flips(3)
        mask = DualitySelector.parse("0b100")
        assert mask.flips(2) and not mask.flips(1)
        with pytest.raises(ValueError):
            DualitySelector.parse("sideways")

    def test_odd_then_even_is_total(self):
        tau = DualitySelector.odd().compose(DualitySelector.even())
        A = cube(3)
        assert dual(A, tau) == dual(A, DualitySelector.total())

    @settings(max_examples=30, deadline=None)
    @given(small, st.sampled_from(["odd", "even", "total", "6", "0"]))
    def test_involution(self, A, tau):
        t = DualitySelector.parse(tau)
        assert dual(dual(A, t), t) == A
        assert is_strong_steiner(dual(A, t))

    def test_op_of_interval_swaps_ends(self):
        D = dual(cube(1), DualitySelector.odd())
        assert D.differential["?"] == ChainElement(0, {"0": 1, "1": -1})


class TestWedgeAndSum:
    def test_wedge_of_intervals(self):
        W = wedge(cube(1), cube(1))
        assert W.ranks() == (3, 2)
        assert is_strong_steiner(W)
        assert iso_search(W, theta("s(*) v s(*)")) is not None

    def test_wedge_needs_bipointing(self):
        A = BasedADC([("x", 0)], {}, {"x": 1})
        with pytest.raises(StructureError):
            wedge(A, A)

    def test_direct_sum(self):
        S = direct_sum(cube(1), cube(1))
        assert S.ranks() == (4, 2)
        assert S.labels(1) == ("1.?", "2.?")

    @settings(max_examples=20, deadline=None)
    @given(st.sampled_from(theta_trees(5)))
    def test_theta_shapes_are_strong_steiner(self, t):
        assert is_strong_steiner(theta(t))


class TestPushout:
    def test_gluing_two_intervals_at_a_point(self):
        P = unit()
        I = cube(1)
        f = ADCMap(P, I, {"*": {"1": 1}})
        g = ADCMap(P, I, {"*": {"0": 1}})
        res = degreewise_pushout(SpanOfMaps(f, g))
        assert res.is_based and res.free_ranks == (3, 2)
        assert iso_search(res.complex, wedge(I, I)) is not None

    def test_torsion_is_reported(self):
        A = BasedADC([("x", 0)], {}, {"x": 0})
        B = BasedADC([("y", 0)], {}, {"y": 0})
        f = ADCMap(A, B, {"x": {"y": 2}})
        g = ADCMap(A, BasedADC([], name="0"), {})
        res = degreewise_pushout(SpanOfMaps(f, g))
        assert not res.is_based
        assert res.torsion == {0: (2,)}

    def test_span_legs_must_share_source(self):
        with pytest.raises(StructureError):
            SpanOfMaps(ADCMap.identity(unit()), ADCMap.identity(cube(1)))

    def test_cokernel_ranks_for_the_interval(self):
        # λ∂□¹⊗A → λ□¹⊗A ⊕ λ∂□¹ degreewise, for A = λ□¹
        from steiner_adc.identities import sigma_square
        incl, top, _, _ = sigma_square(cube(1))
        res = degreewise_pushout(SpanOfMaps(incl, top))
        assert res.free_ranks == (2, 2, 1) and not res.torsion
