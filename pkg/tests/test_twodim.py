import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from omegac.catalog import globe_adc
from omegac.errors import PreconditionViolated
from omegac.omega import atom_cell, boundary, compose_cells, enumerate_cells, unit_cell
from omegac.theta import lambda_gs, parse_gs
from omegac.twodim import (decompose, is_0_comparable, orderings, precedence, recompose,
                           single_block_factorizations, split3, supports)

PAR = lambda_gs(parse_gs("[[*,*]]"))
F, G, H = "v01/v0", "v01/v1", "v01/v2"
ALPHA, BETA = "v01/v01", "v01/v12"
SIDE = lambda_gs(parse_gs("[[*],[*]]"))
LEFT, RIGHT = "v01/v01", "v12/v01"
BIG = lambda_gs(parse_gs("[[*,*],[*]]"))


def stacked():
    return compose_cells(atom_cell(PAR, BETA), atom_cell(PAR, ALPHA), 1)


def side_by_side():
    return compose_cells(atom_cell(SIDE, RIGHT), atom_cell(SIDE, LEFT), 0)


def _two_cells(K, bound=3):
    return enumerate_cells(K, 2, bound)


def _brute_extensions(elems, less):
    """Linear extensions by filtering all permutations (smaller first)."""
    out = []
    for p in itertools.permutations(sorted(elems)):
        pos = {x: i for i, x in enumerate(p)}
        if all(pos[a] < pos[b] for a in elems for b in elems if less(a, b)):
            out.append(p)
    return sorted(out)


# supports

def test_supports_of_stacked_pair():
    s2, s1 = supports(PAR, stacked())
    assert s2.elems == {ALPHA, BETA} and s1.elems == {F, G, H}


def test_supports_of_unit():
    s2, s1 = supports(PAR, unit_cell(atom_cell(PAR, F), 2))
    assert s2.elems == frozenset() and s1.elems == {F}


@pytest.mark.parametrize("K", [PAR, SIDE, BIG], ids=["par", "side", "big"])
def test_supports_formulas_agree_on_all_cells(K):
    for c in _two_cells(K):
        supports(K, c)


def test_supports_reject_high_dimension():
    with pytest.raises(PreconditionViolated):
        supports(globe_adc(3), atom_cell(globe_adc(3), "e3"))


# precedence

def test_precedence_stacked():
    p = precedence(PAR, stacked(), 1)
    assert p.less(BETA, ALPHA) and not p.less(ALPHA, BETA)
    assert p.is_partial_order


def test_precedence_disjoint_segments():
    p = precedence(SIDE, side_by_side(), 1)
    assert not p.pairs


def test_level0_precedence_matches_composability():
    v = side_by_side()
    p = precedence(SIDE, v, 0)
    ones = sorted(supports(SIDE, v)[1].elems)
    for a, b in itertools.permutations(ones, 2):
        x, y = atom_cell(SIDE, a), atom_cell(SIDE, b)
        # a comes after b exactly when some 0-composite a o ... o b exists
        assert p.less(a, b) == (boundary(x, 0, "-") == boundary(y, 0, "+"))


@pytest.mark.parametrize("K", [PAR, SIDE, BIG], ids=["par", "side", "big"])
def test_precedence_is_partial_order_on_loopfree(K):
    for c in _two_cells(K):
        assert precedence(K, c, 1).is_partial_order
        assert precedence(K, c, 0).is_partial_order


# orderings

def test_orderings_examples():
    assert orderings(PAR, stacked()) == [(BETA, ALPHA)]
    assert sorted(orderings(SIDE, side_by_side())) == [(LEFT, RIGHT), (RIGHT, LEFT)]
    assert orderings(PAR, unit_cell(atom_cell(PAR, F), 2)) == [()]


@pytest.mark.parametrize("K", [PAR, SIDE, BIG], ids=["par", "side", "big"])
def test_orderings_match_permutation_oracle(K):
    for c in _two_cells(K):
        p = precedence(K, c, 1)
        assert sorted(orderings(K, c)) == _brute_extensions(p.elems, p.less)


# 0-comparability

def test_is_0_comparable():
    assert not is_0_comparable(PAR, stacked(), ALPHA)
    assert is_0_comparable(SIDE, side_by_side(), LEFT)
    assert is_0_comparable(SIDE, side_by_side(), RIGHT)
    assert not is_0_comparable(PAR, atom_cell(PAR, ALPHA), BETA)


# split3

def test_split3_stacked_at_alpha():
    v, w, t = split3(PAR, stacked(), ALPHA, 1)
    assert v == atom_cell(PAR, BETA)
    assert w == atom_cell(PAR, ALPHA)
    assert t == unit_cell(atom_cell(PAR, F), 2)


def test_split3_singleton():
    a = atom_cell(PAR, ALPHA)
    v, w, t = split3(PAR, a, ALPHA, 1)
    assert w == a
    assert v == unit_cell(atom_cell(PAR, G), 2)
    assert t == unit_cell(atom_cell(PAR, F), 2)


def test_split3_level0_isolates_left_block():
    u = side_by_side()
    v, w, t = split3(SIDE, u, LEFT, 0)
    assert w == atom_cell(SIDE, LEFT)
    assert v == atom_cell(SIDE, RIGHT)
    assert not t.minus(2) and compose_cells(compose_cells(v, w, 0), t, 0) == u


def test_split3_level0_side_condition():
    with pytest.raises(PreconditionViolated):
        split3(PAR, stacked(), ALPHA, 0)


@pytest.mark.parametrize("K", [PAR, BIG], ids=["par", "big"])
def test_split3_parts_follow_the_order(K):
    for u in _two_cells(K):
        s2 = supports(K, u)[0].elems
        prec = precedence(K, u, 1)
        for x in s2:
            v, w, t = split3(K, u, x, 1)
            assert compose_cells(compose_cells(v, w, 1), t, 1) == u
            assert all(prec.less(b, x) for b in v.minus(2))
            assert all(prec.less(x, b) for b in t.minus(2))
            assert all(b == x or not prec.comparable(b, x) for b in w.minus(2))


# decomposition

def test_decompose_stacked():
    assert decompose(PAR, stacked(), (BETA, ALPHA)) == [atom_cell(PAR, BETA), atom_cell(PAR, ALPHA)]


def test_decompose_unit_is_empty():
    assert decompose(PAR, unit_cell(atom_cell(PAR, F), 2), ()) == []


def test_decompose_rejects_non_ordering():
    with pytest.raises(PreconditionViolated):
        decompose(PAR, stacked(), (ALPHA, BETA))


@pytest.mark.parametrize("K", [PAR, BIG], ids=["par", "big"])
def test_decompose_all_cells_all_orderings(K):
    for v in _two_cells(K):
        for order in orderings(K, v):
            factors = decompose(K, v, order)
            if factors:
                assert recompose(factors) == v
            for x, piece in zip(order, factors):
                assert set(piece.minus(2)) == {x}


@pytest.mark.parametrize("K", [PAR, BIG], ids=["par", "big"])
def test_block_factorizations_are_orderings(K):
    cells = _two_cells(K)
    for v in cells:
        valid = set(orderings(K, v))
        for seq in single_block_factorizations(K, v, cells):
            assert seq in valid


@given(st.integers(0, 10 ** 6))
@settings(max_examples=20)
def test_decompose_random_cell_and_ordering(seed):
    rng = random.Random(seed)
    cells = _two_cells(BIG)
    v = rng.choice(cells)
    order = rng.choice(orderings(BIG, v))
    factors = decompose(BIG, v, order)
    assert not factors or recompose(factors) == v
