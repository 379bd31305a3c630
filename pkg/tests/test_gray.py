import itertools
from collections import Counter

import pytest
from hypothesis import given, settings

from omegac.adc import OP, Chain, dual, is_quasirigid, is_strong_steiner
from omegac.catalog import empty_adc, globe_adc, points_adc
from omegac.colim import check_iso, isos
from omegac.gray import (cocone, cone, cylinder, point_adc, suspend, tensor, tensor_name, wedge, whisker)
from omegac.theta import lambda_gs, parse_gs

from strategies import complexes, gs_strategy

L1 = lambda_gs(parse_gs("[*]"))


def _diffs(K):
    return {b: K.d(b).as_dict() for b in K.ids() if K.degree(b)}


def _renamed(K, ren):
    out = {}
    for b in K.ids():
        if K.degree(b):
            out[ren[b]] = {ren[y]: c for y, c in K.d(b).items()}
    return out


# tensor

def test_tensor_unit_law():
    K = lambda_gs(parse_gs("[[*],*]"))
    for T, name in ((tensor(point_adc(), K), lambda b: tensor_name("pt", b)),
                    (tensor(K, point_adc()), lambda b: tensor_name(b, "pt"))):
        assert T.counts() == K.counts()
        assert _renamed(T, {name(b): b for b in K.ids()}) == _diffs(K)


def test_tensor_counts_by_convolution():
    K, L = globe_adc(1), L1
    want = Counter()
    for b, c in itertools.product(K.ids(), L.ids()):
        want[K.degree(b) + L.degree(c)] += 1
    assert tensor(K, L).counts() == tuple(want[i] for i in range(max(want) + 1)) == (4, 4, 1)


def test_tensor_leibniz_example():
    T = tensor(globe_adc(1), L1)
    assert T.d("e1⊗v01") == Chain(1, {"e0p⊗v01": 1, "e0m⊗v01": -1, "e1⊗v1": -1, "e1⊗v0": 1})


def test_tensor_augmentation_is_product():
    T = tensor(points_adc(2), L1)
    for b in T.ids():
        if T.degree(b) == 0:
            assert T.augment(Chain(0, {b: 1})) == 1


def test_tensor_associative_up_to_renaming():
    A, B, C = globe_adc(1), L1, globe_adc(2)
    left = tensor(tensor(A, B), C)
    right = tensor(A, tensor(B, C))
    ren = {}
    for a, b, c in itertools.product(A.ids(), B.ids(), C.ids()):
        ren[tensor_name(tensor_name(a, b), c)] = tensor_name(a, tensor_name(b, c))
    assert set(ren) == set(left.ids()) and set(ren.values()) == set(right.ids())
    assert _renamed(left, ren) == _diffs(right)


@pytest.mark.parametrize("p, q", [(p, q) for p in range(3) for q in range(3)])
def test_tensor_op_swaps_factors(p, q):
    K, L = globe_adc(p), globe_adc(q)
    found = isos(dual(tensor(K, L), OP), tensor(dual(L, OP), dual(K, OP)))
    assert len(found) == 1 and check_iso(found[0])


# cylinder

def test_cylinder_of_point_is_segment():
    C = cylinder(point_adc())
    assert C.counts() == (2, 1)
    assert len(isos(C, L1)) == 1


def test_cylinder_counts():
    assert cylinder(globe_adc(1)).counts() == (4, 4, 1)
    C = cylinder(globe_adc(2))
    assert C.counts()[3] == 1 and C.degree("e2⊗[1]") == 3


def test_cylinder_formula():
    C = cylinder(globe_adc(1))
    assert C.d("e1⊗[1]") == Chain(1, {"e0p⊗[1]": 1, "e0m⊗[1]": -1, "e1⊗{1}": -1, "e1⊗{0}": 1})


# cone and cocone

def test_cone_of_arrow():
    P = cone(globe_adc(1))
    assert P.complex.counts() == (3, 3, 1)
    assert P["tip"] == "∅⋆1"
    assert P.complex.d("e1⋆1") == Chain(1, {"e0p⋆1": 1, "e0m⋆1": -1, "e1⋆∅": 1})
    assert P.complex.d("e0m⋆1") == Chain(0, {"∅⋆1": 1, "e0m⋆∅": -1})
    P.complex.validate()


def test_cocone_of_point():
    Q = cocone(point_adc())
    assert Q.complex.d("pt⋆1") == Chain(0, {"pt⋆∅": 1, "∅⋆1": -1})
    assert len(isos(Q.complex, L1)) == 1


def test_cocone_is_dual_cone():
    from omegac.adc import FULL
    K = lambda_gs(parse_gs("[[*],*]"))
    assert cocone(K).complex == dual(cone(dual(K, FULL)).complex, FULL)


def test_cone_sign_flip_breaks_dd():
    from omegac.errors import DifferentialNotSquareZero
    with pytest.raises(DifferentialNotSquareZero):
        cone(globe_adc(1), flip_sign=True).complex.validate()


# suspension

def test_suspend_arrow_is_two_globe():
    S = suspend(globe_adc(1)).complex
    f = isos(S, globe_adc(2))
    assert len(f) == 1
    want = {"{0}": "e0m", "{1}": "e0p", "[e0m,1]": "e1m", "[e0p,1]": "e1p", "[e1,1]": "e2"}
    assert {b: f[0](b).as_dict() for b in S.ids()} == {b: {c: 1} for b, c in want.items()}


def test_suspend_empty_and_segment():
    S = suspend(empty_adc())
    assert S.complex.ids() == ("{0}", "{1}") and S.complex.counts() == (2,)
    assert suspend(lambda_gs(parse_gs("[*,*]"))).complex.counts() == (2, 3, 2)


# wedges and whiskers

def test_right_wedge_of_point():
    W = wedge(point_adc(), "right")
    assert len(isos(W.complex, lambda_gs(parse_gs("[*,*]")))) == 1
    assert W.complex.d("e1@wedge") == Chain(0, {"{2}": 1, "{1}": -1})


def test_wedge_of_arrow():
    W = wedge(globe_adc(1), "right")
    assert W.complex.counts() == (3, 3, 1)
    assert W.complex.degree("[e1,1]") == 2
    L = wedge(globe_adc(1), "left")
    assert L.complex.d("e1@wedge") == Chain(0, {"{1}": 1, "{0}": -1})
    assert L.complex.d("[e0m,1]") == Chain(0, {"{2}": 1, "{1}": -1})


def test_whisker_formulas():
    w = whisker(point_adc(), "left")
    w.validate()
    assert {b: w(b).as_dict() for b in w.source.ids()} == {
        "{0}": {"{0}": 1}, "{1}": {"{2}": 1}, "[pt,1]": {"[pt,1]": 1, "e1@wedge": 1}}
    w = whisker(globe_adc(1), "left")
    assert w("[e1,1]") == Chain(2, {"[e1,1]": 1})
    r = whisker(globe_adc(1), "right")
    r.validate()
    assert r("[e1,1]") == Chain(2, {"[e1,1]": 1})


@pytest.mark.parametrize("side", ["left", "right"])
@pytest.mark.parametrize("expr", ["*", "[*]", "[*,*]", "[[*]]"])
def test_whisker_never_quasirigid_with_points(side, expr):
    assert not is_quasirigid(whisker(lambda_gs(parse_gs(expr)), side))


# properties

@given(gs_strategy(2, 2))
@settings(max_examples=25)
def test_operations_preserve_strong_steiner(g):
    K = lambda_gs(g)
    outs = [cylinder(K), cone(K).complex, cocone(K).complex, suspend(K).complex,
            wedge(K, "left").complex, wedge(K, "right").complex]
    for L in outs:
        L.validate()
        assert is_strong_steiner(L)
    whisker(K, "left").validate()
    whisker(K, "right").validate()


@given(complexes)
@settings(max_examples=25)
def test_tensor_with_segment_stays_valid(case):
    K, _ = case
    if len(K) > 16:
        return
    T = tensor(K, L1)
    T.validate()
    if is_strong_steiner(K):
        assert is_strong_steiner(T)
