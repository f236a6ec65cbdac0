from functools import cmp_to_key

import pytest

from steiner_adc.constructions import direct_sum
from steiner_adc.core import BasedADC
from steiner_adc.shapes import cube, globe, oriental, two_loop, unit
from steiner_adc.steiner_check import (SearchBudgetExceeded, automorphisms, basis_bijections,
                                       basis_preorder, cube_signed_lex_cmp, generating_edges,
                                       is_strong_steiner, is_total_order, linear_extension,
                                       loop_witness, strongly_loop_free, unital)


def test_two_loop_has_a_four_cycle():
    A = two_loop()
    ok, witness = strongly_loop_free(A)
    assert not ok
    assert len(witness) == 4 and set(witness) == {"a", "b", "x", "y"}
    # consecutive witness entries are generating edges
    edges = set(generating_edges(A))
    for u, v in zip(witness, witness[1:] + witness[:1]):
        assert (u, v) in edges
    P = basis_preorder(A)
    assert P.leq("a", "y") and P.leq("y", "b") and P.leq("b", "x") and P.leq("x", "a")
    assert not is_strong_steiner(A)
    with pytest.raises(ValueError):
        is_total_order(A)


def test_interval_order():
    A = cube(1)
    assert linear_extension(A) == ["0", "?", "1"]
    assert is_total_order(A)
    assert set(generating_edges(A)) == {("0", "?"), ("?", "1")}


@pytest.mark.parametrize("q", range(5))
def test_globes_are_totally_ordered(q):
    # parallel cells of the globe are comparable through the cell above them
    assert is_total_order(globe(q))


def test_disjoint_points_are_not_totally_ordered():
    pts = BasedADC([("a", 0), ("b", 0)], {}, {"a": 1, "b": 1})
    assert not is_total_order(pts)


def test_unit_and_orientals():
    assert loop_witness(unit()) is None
    for n in range(1, 5):
        assert is_total_order(oriental(n))


def test_unital_violations():
    A = BasedADC([("x", 0), ("y", 0), ("e", 1)], {"e": {"y": 2, "x": -2}}, {"x": 1, "y": 1})
    kinds = {v.kind for v in unital(A)}
    assert kinds == {"not unital (+)", "not unital (-)"}
    assert unital(cube(3)) == []


@pytest.mark.parametrize("u, v, expected", [
    ("0", "?", -1), ("?", "1", -1), ("0", "1", -1), ("1", "1", 0),
    ("0?", "1?", 1),   # one '?' below: order reversed
    ("?0", "?1", -1),
    ("?1", "0?", 1),
])
def test_signed_lex_examples(u, v, expected):
    assert cube_signed_lex_cmp(u, v) == expected
    assert cube_signed_lex_cmp(v, u) == -expected


def test_signed_lex_rejects_bad_input():
    with pytest.raises(ValueError):
        cube_signed_lex_cmp("01", "0")
    with pytest.raises(ValueError):
        cube_signed_lex_cmp("0x", "00")


@pytest.mark.parametrize("n", [1, 2, 3])
def test_signed_lex_sorted_matches_closure(n):
    A = cube(n)
    by_cmp = sorted(A.labels(), key=cmp_to_key(cube_signed_lex_cmp))
    assert by_cmp == linear_extension(A)


def test_automorphisms():
    assert len(automorphisms(cube(2))) == 1
    assert len(automorphisms(direct_sum(cube(1), cube(1)))) == 2
    # three isolated points: all 6 permutations
    pts = BasedADC([("a", 0), ("b", 0), ("c", 0)], {}, {"a": 1, "b": 1, "c": 1})
    assert len(automorphisms(pts)) == 6


def test_budget_exceeded():
    pts = BasedADC([(str(i), 0) for i in range(6)], {}, {str(i): 1 for i in range(6)})
    with pytest.raises(SearchBudgetExceeded):
        list(basis_bijections(pts, pts, budget=10))


def test_bijections_between_different_ranks():
    assert list(basis_bijections(cube(1), cube(2))) == []
