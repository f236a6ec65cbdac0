import pytest

from steiner_adc.core import (INT64_MAX, ADCMap, BasedADC, ChainElement, CoefficientOverflow,
                              MapShapeError, StructureError, boundary_pm, compose_maps,
                              decompose, validate_complex, validate_map)
from steiner_adc.shapes import cube, oriental, unit


def interval():
    return BasedADC([("0", 0), ("1", 0), ("?", 1)], {"?": {"1": 1, "0": -1}},
                    {"0": 1, "1": 1}, ("0", "1"), "I")


class TestChainElement:
    def test_zero_terms_dropped(self):
        x = ChainElement(1, {"a": 2, "b": 0})
        assert set(x.labels()) == {"a"}
        assert len(x) == 1
        assert not ChainElement.zero(3)

    def test_arithmetic(self):
        x = ChainElement(1, {"a": 2, "b": -1})
        y = ChainElement(1, {"b": 1, "c": 3})
        assert x + y == ChainElement(1, {"a": 2, "c": 3})
        assert x - x == ChainElement.zero(1)
        assert -x == ChainElement(1, {"a": -2, "b": 1})
        assert 3 * y == y * 3 == ChainElement(1, {"b": 3, "c": 9})
        assert x["zzz"] == 0 and x["a"] == 2

    def test_degree_mismatch(self):
        with pytest.raises(ValueError):
            ChainElement(1, {"a": 1}) + ChainElement(2, {"a": 1})

    def test_overflow(self):
        ChainElement(0, {"a": INT64_MAX})
        with pytest.raises(CoefficientOverflow):
            ChainElement(0, {"a": INT64_MAX + 1})
        with pytest.raises(CoefficientOverflow):
            ChainElement(0, {"a": INT64_MAX}) + ChainElement(0, {"a": 1})

    def test_decompose(self):
        plus, minus = decompose(ChainElement(0, {"a": 2, "b": -3}))
        assert plus == ChainElement(0, {"a": 2})
        assert minus == ChainElement(0, {"b": 3})
        assert ChainElement(0, {"a": 2}).is_positive()
        assert not ChainElement(0, {"b": -1}).is_positive()

    def test_hash_equal_elements(self):
        assert hash(ChainElement(1, {"a": 1, "b": 2})) == hash(ChainElement(1, {"b": 2, "a": 1}))


class TestBasedADC:
    def test_structure(self):
        A = interval()
        assert A.ranks() == (2, 1)
        assert A.labels(0) == ("0", "1")
        assert A.boundary(A.generator("?")) == ChainElement(0, {"1": 1, "0": -1})
        assert A.augment(ChainElement(0, {"0": 2, "1": 3})) == 5
        assert boundary_pm(A, A.generator("?"), "+") == ChainElement(0, {"1": 1})
        assert boundary_pm(A, A.generator("?"), "-") == ChainElement(0, {"0": 1})

    def test_basis_sorted_by_degree(self):
        A = BasedADC([("e", 1), ("x", 0), ("y", 0)], {"e": {"y": 1, "x": -1}}, {"x": 1, "y": 1})
        assert [e.label for e in A.basis] == ["x", "y", "e"]

    @pytest.mark.parametrize("kwargs, label", [
        (dict(basis=[("a", 0), ("a", 1)]), "a"),
        (dict(basis=[("a", 1)], differential={"a": {"ghost": 1}}), "ghost"),
        (dict(basis=[("a", 0)], differential={"b": {}}), "b"),
        (dict(basis=[("a", 0), ("e", 1), ("f", 2)], differential={"f": {"a": 1}}), "a"),
        (dict(basis=[("a", 1)], augmentation={"a": 1}), "a"),
        (dict(basis=[("a", 0)], bipointing=("a", "z")), "z"),
    ])
    def test_structure_errors_name_the_label(self, kwargs, label):
        with pytest.raises(StructureError) as err:
            BasedADC(**kwargs)
        assert err.value.label == label

    def test_equality_ignores_name(self):
        assert interval() == interval().with_name("other")
        assert hash(interval()) == hash(interval().with_name("other"))

    def test_relabel(self):
        B = interval().relabel({"0": "s", "1": "t", "?": "e"})
        assert B.differential["e"] == ChainElement(0, {"t": 1, "s": -1})
        assert B.bipointing == ("s", "t")


def test_validate_complex_detects_violations():
    assert validate_complex(cube(3)) == []
    bad = BasedADC([("x", 0), ("y", 0), ("e", 1), ("f", 2)],
                   {"e": {"y": 1, "x": -1}, "f": {"e": 1}}, {"x": 1, "y": 1})
    kinds = {v.kind for v in validate_complex(bad)}
    assert kinds == {"∂∂ ≠ 0"}
    bad_eps = BasedADC([("x", 0), ("y", 0), ("e", 1)], {"e": {"y": 1, "x": -1}},
                       {"x": 1, "y": 2})
    assert {v.kind for v in validate_complex(bad_eps)} == {"ε∂ ≠ 0"}


class TestMaps:
    def test_identity_is_valid(self):
        assert validate_map(ADCMap.identity(oriental(3))) == []

    def test_shape_errors(self):
        with pytest.raises(MapShapeError):
            ADCMap(interval(), interval(), {"nope": {}})
        with pytest.raises(MapShapeError):
            ADCMap(interval(), interval(), {"?": {"0": 1}})

    def test_validation_kinds(self):
        I = interval()
        swap = ADCMap(I, I, {"0": {"1": 1}, "1": {"0": 1}, "?": {"?": 1}})
        assert {v.kind for v in validate_map(swap)} == {"chain condition violated"}
        neg = ADCMap(I, I, {"0": {"0": 1}, "1": {"1": 1}, "?": {"?": -1}})
        kinds = {v.kind for v in validate_map(neg)}
        assert "positivity violated" in kinds
        doubled = ADCMap(I, I, {"0": {"0": 2}, "1": {"1": 2}, "?": {"?": 2}})
        assert {v.kind for v in validate_map(doubled)} == {"augmentation violated"}

    def test_collapse_to_point(self):
        I, P = interval(), unit()
        f = ADCMap(I, P, {"0": {"*": 1}, "1": {"*": 1}})
        assert validate_map(f) == []
        g = ADCMap(P, I, {"*": {"0": 1}})
        assert validate_map(g) == []
        h = compose_maps(g, f)
        assert h == ADCMap.identity(P)
        with pytest.raises(MapShapeError):
            compose_maps(f, f)

    def test_basis_bijection(self):
        assert ADCMap.identity(cube(2)).is_basis_bijection()
        I = interval()
        assert not ADCMap(I, I, {"0": {"0": 1}, "1": {"0": 1}, "?": {"?": 1}}).is_basis_bijection()
