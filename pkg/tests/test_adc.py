import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from omegac.adc import (CO, FULL, OP, TRANSPOSE, ADCMorphism, BasedADC, Chain, Duality, SteinerArray,
                        adc_from_json, chain_parts, compose_morphism, downward_closure, dual, identity,
                        is_loopfree, is_quasirigid, is_strong_steiner, is_unitary, validate_adc,
                        validate_morphism)
from omegac.catalog import globe_adc, points_adc
from omegac.errors import (AugmentationNotAnnihilating, DegreeMismatch, DifferentialNotSquareZero,
                           DuplicateId, NotAugmented, NotChainMap, NotPositive, PreconditionViolated,
                           SourceTargetMismatch, UnknownBasisElement, UnknownKey)
from omegac.gray import cocone, point_adc, tensor, whisker
from omegac.theta import lambda_gs, parse_gs

from strategies import complexes

D1_DOC = {"basis": [{"id": "e0m", "deg": 0}, {"id": "e0p", "deg": 0}, {"id": "e1", "deg": 1}],
          "diff": {"e1": {"e0p": 1, "e0m": -1}}, "aug": {"e0m": 1, "e0p": 1}}


# chains

def test_chain_drops_zero_coefficients():
    x = Chain(0, {"a": 2, "b": 0})
    assert x.support() == ("a",)
    assert Chain(1) == Chain(1, {})
    assert not Chain(3)


def test_chain_parts_split():
    pos, neg, meet = chain_parts(Chain(0, {"e0p": 1, "e0m": -1}))
    assert pos == Chain(0, {"e0p": 1}) and neg == Chain(0, {"e0m": 1})
    assert chain_parts(Chain(2))[:2] == (Chain(2), Chain(2))


def test_chain_meet_is_elementwise_min():
    assert Chain(0, {"a": 2, "b": 1}).meet(Chain(0, {"a": 1, "c": 3})) == Chain(0, {"a": 1})


def test_chain_meet_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        Chain(0, {"a": 1}).meet(Chain(1, {"a": 1}))


@given(st.dictionaries(st.sampled_from("abcde"), st.integers(-5, 5)))
def test_chain_parts_recombine(d):
    x = Chain(1, d)
    pos, neg, _ = chain_parts(x)
    assert pos - neg == x
    assert pos.is_positive() and neg.is_positive()
    assert not set(pos.support()) & set(neg.support())


# validation

def test_validate_globe_doc():
    K = validate_adc(D1_DOC)
    assert K.counts() == (2, 1)
    assert K.d("e1") == Chain(0, {"e0p": 1, "e0m": -1})


def test_empty_complex_is_valid():
    K = validate_adc({"basis": []})
    assert len(K) == 0 and is_strong_steiner(K)


def test_augmentation_not_annihilating_witness():
    doc = {"basis": [{"id": i, "deg": 0} for i in "xyz"] + [{"id": "f", "deg": 1}],
           "diff": {"f": {"y": 1, "z": 1, "x": -1}}, "aug": {"x": 1, "y": 1, "z": 1}}
    with pytest.raises(AugmentationNotAnnihilating) as exc:
        validate_adc(doc)
    assert exc.value.witness == "f"


def test_dd_not_zero_witness():
    K = BasedADC({"x": 0, "y": 0, "f": 1, "a": 2}, {"f": {"y": 1, "x": -1}, "a": {"f": 1}},
                 {"x": 1, "y": 1})
    with pytest.raises(DifferentialNotSquareZero) as exc:
        K.validate()
    assert exc.value.witness == "a"


def test_duplicate_and_unknown_ids():
    doc = {"basis": [{"id": "a", "deg": 0}, {"id": "a", "deg": 0}]}
    with pytest.raises(DuplicateId):
        adc_from_json(doc)
    with pytest.raises(UnknownBasisElement):
        adc_from_json({"basis": [{"id": "f", "deg": 1}], "diff": {"f": {"q": 1}}})
    with pytest.raises(UnknownKey):
        adc_from_json({"basis": [], "extra": 1})


def test_boundary_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        adc_from_json({"basis": [{"id": "a", "deg": 2}, {"id": "x", "deg": 0}], "diff": {"a": {"x": 1}}})


def test_json_round_trip():
    K = lambda_gs(parse_gs("[[*],*]"))
    assert validate_adc(K.to_json()) == K


# atoms

def test_atom_of_globe():
    D2 = globe_adc(2)
    a = D2.atom("e2")
    assert [(m.as_dict(), p.as_dict()) for m, p in a.rows] == [
        ({"e0m": 1}, {"e0p": 1}), ({"e1m": 1}, {"e1p": 1}), ({"e2": 1}, {"e2": 1})]


def test_atom_of_segment():
    K = lambda_gs(parse_gs("[*,*]"))
    a = K.atom("v01")
    assert [(m.as_dict(), p.as_dict()) for m, p in a.rows] == [({"v0": 1}, {"v1": 1}), ({"v01": 1}, {"v01": 1})]


def test_atom_of_cycle_generator(k_u):
    rows = k_u.atom("u").rows
    assert [(bool(m), bool(p)) for m, p in rows[:2]] == [(False, False), (False, False)]
    assert rows[2][0] == Chain(2, {"u": 1})


def test_atom_unknown():
    with pytest.raises(UnknownBasisElement):
        globe_adc(1).atom("nope")


@given(complexes)
def test_atoms_compatible_and_disjoint(case):
    K, _ = case
    for b in K.ids():
        rows = K.atom(b).rows
        for i in range(1, len(rows)):
            for x in rows[i]:
                assert K.boundary(x) == rows[i - 1][1] - rows[i - 1][0]
        for m, p in rows[:-1]:
            assert not m.meet(p)


# predicates

def _closure_cycle(K):
    """Independent loop detector: Warshall closure of the generating relation."""
    ids = list(K.ids())
    idx = {b: i for i, b in enumerate(ids)}
    n = len(ids)
    R = [[False] * n for _ in range(n)]
    for a in ids:
        if K.degree(a) == 0:
            continue
        rows = K.atom(a).rows
        d = K.degree(a)
        for b in rows[d - 1][0].support():
            R[idx[a]][idx[b]] = True
        for b in rows[d - 1][1].support():
            R[idx[b]][idx[a]] = True
    for k in range(n):
        for i in range(n):
            if R[i][k]:
                for j in range(n):
                    if R[k][j]:
                        R[i][j] = True
    return any(R[i][i] for i in range(n))


def test_loopfree_segment():
    assert is_loopfree(lambda_gs(parse_gs("[*,*]")))
    assert is_loopfree(BasedADC({}))


def test_loop_witness_is_the_cycle(k_loop):
    v = is_loopfree(k_loop)
    assert not v
    cyc = list(v.witness[:-1])
    want = ["y", "f", "x", "g"]
    assert v.witness[0] == v.witness[-1]
    assert any(cyc == want[i:] + want[:i] for i in range(4))
    assert _closure_cycle(k_loop)


@given(complexes)
def test_loopfree_agrees_with_closure_oracle(case):
    K, _ = case
    assert bool(is_loopfree(K)) == (not _closure_cycle(K))


def test_unitary_examples(k_u):
    assert is_unitary(globe_adc(3))
    v = is_unitary(k_u)
    assert not v and v.witness == "u"
    K = BasedADC({"x": 0, "y": 0, "z": 0, "w": 0, "f": 1}, {"f": {"y": 1, "z": 1, "x": -1, "w": -1}},
                 {c: 1 for c in "xyzw"})
    v = is_unitary(K)
    assert not v and v.witness == "f"


def test_strong_steiner_examples(k_loop, k_u):
    for s in ("*", "[*]", "[[*],*]", "[[*,*],[*]]"):
        assert is_strong_steiner(lambda_gs(parse_gs(s)))
    assert not is_strong_steiner(k_loop)
    assert not is_strong_steiner(k_u)


@given(complexes, st.data())
def test_loopfree_monotone_under_downward_restriction(case, data):
    K, _ = case
    seeds = data.draw(st.lists(st.sampled_from(K.ids()), max_size=4))
    sub = K.restrict(downward_closure(K, seeds))
    sub.validate()
    if is_loopfree(K):
        assert is_loopfree(sub)


# dualities

def test_dual_op_on_arrow():
    assert dual(globe_adc(1), OP).d("e1") == Chain(0, {"e0m": 1, "e0p": -1})


def test_dual_empty_set_is_identity():
    K = globe_adc(2)
    assert dual(K, Duality.parse("none")) == K


def test_duality_presets():
    assert [n for n in range(1, 6) if n in OP] == [1, 3, 5]
    assert [n for n in range(1, 6) if n in CO] == [2, 4]
    assert [n for n in range(1, 6) if n in FULL] == [1, 2, 3, 4, 5]
    assert [n for n in range(1, 6) if n in TRANSPOSE] == [1]
    assert [n for n in range(1, 6) if n in Duality.parse("2,3")] == [2, 3]


@given(complexes, st.sampled_from([OP, CO, FULL, TRANSPOSE]))
def test_dual_involution_and_unitarity(case, S):
    K, _ = case
    L = dual(K, S)
    assert dual(L, S) == K
    L.validate()
    assert bool(is_unitary(L)) == bool(is_unitary(K))


@given(complexes, st.sampled_from([OP, CO, FULL]))
def test_dual_preserves_loopfree(case, S):
    K, _ = case
    assert bool(is_loopfree(dual(K, S))) == bool(is_loopfree(K))


def test_single_degree_duality_can_create_loop():
    K = cocone(globe_adc(2)).complex
    assert is_loopfree(K)
    L = dual(K, TRANSPOSE)
    assert not is_loopfree(L)
    assert _closure_cycle(L)


def test_dual_twice_on_tensor():
    K = tensor(globe_adc(2), lambda_gs(parse_gs("[*]")))
    assert dual(dual(K, FULL), FULL) == K


# morphisms

def _inc():
    return ADCMorphism(globe_adc(1), globe_adc(2), {"e0m": {"e0m": 1}, "e0p": {"e0p": 1}, "e1": {"e1m": 1}})


def _degeneracy():
    return ADCMorphism(lambda_gs(parse_gs("[*]")), point_adc(), {"v0": {"pt": 1}, "v1": {"pt": 1}})


def test_morphism_examples_accepted():
    _inc().validate()
    _degeneracy().validate()
    doc = {"source": D1_DOC, "target": globe_adc(2).to_json(),
           "map": {"e0m": {"e0m": 1}, "e0p": {"e0p": 1}, "e1": {"e1m": 1}}}
    validate_morphism(doc)


def test_morphism_rejections():
    with pytest.raises(NotPositive):
        ADCMorphism(globe_adc(1), globe_adc(2), {"e0m": {"e0m": 1}, "e0p": {"e0p": 1},
                                                 "e1": {"e1m": -1}}).validate()
    with pytest.raises(NotChainMap):
        ADCMorphism(globe_adc(1), globe_adc(2), {"e0m": {"e0p": 1}, "e0p": {"e0p": 1},
                                                 "e1": {"e1m": 1}}).validate()
    with pytest.raises(NotAugmented):
        ADCMorphism(points_adc(1), points_adc(1), {}).validate()


def test_composition_examples():
    f = _inc()
    assert compose_morphism(identity(f.target), f) == f
    P = point_adc()
    L1 = lambda_gs(parse_gs("[*]"))
    g = ADCMorphism(P, L1, {"pt": {"v0": 1}}).validate()
    assert compose_morphism(_degeneracy(), g)("pt") == Chain(0, {"pt": 1})
    i0 = ADCMorphism(P, globe_adc(1), {"pt": {"e0m": 1}}).validate()
    assert compose_morphism(f, i0)("pt") == Chain(0, {"e0m": 1})
    with pytest.raises(SourceTargetMismatch):
        compose_morphism(f, f)


@given(complexes)
def test_identity_always_valid(case):
    K, _ = case
    identity(K).validate()
    assert identity(K).is_identity()


def test_quasirigid_examples():
    assert is_quasirigid(_inc())
    assert is_quasirigid(_degeneracy())
    v = is_quasirigid(whisker(point_adc(), "left"))
    assert not v and v.witness == "[pt,1]"


def test_quasirigid_needs_strong_steiner(k_loop):
    with pytest.raises(PreconditionViolated):
        is_quasirigid(identity(k_loop))


def test_quasirigid_closed_under_composition():
    from omegac.theta import enumerate_hom, tm_to_adc
    gs = [parse_gs(s) for s in ("*", "[*]", "[*,*]", "[[*]]")]
    maps = [tm_to_adc(h) for a, b in itertools.product(gs, repeat=2) for h in enumerate_hom(a, b)]
    qr = [f for f in maps if is_quasirigid(f)]
    for f, g in itertools.product(qr, repeat=2):
        if f.target == g.source:
            assert is_quasirigid(compose_morphism(g, f))
