"""Gray operations on based complexes.

Naming of generators is fixed so that outputs are byte-stable:

* tensor: ``b⊗c`` (operands containing ⊗ or ⋆ are parenthesised)
* cylinder: ``b⊗{0}``, ``b⊗{1}``, ``b⊗[1]``
* cone and cocone: ``∅⋆1`` (the tip), ``b⋆∅``, ``b⋆1``
* suspension: poles ``{0}``, ``{1}`` and ``[b,1]``
* wedges: poles ``{0}``, ``{1}``, ``{2}``, ``[b,1]`` and the extra arrow ``e1@wedge``
"""
from __future__ import annotations

from typing import Dict, Mapping

from .adc import FULL, ADCMorphism, BasedADC, Chain, dual

TIP = "∅⋆1"
POLE0, POLE1, POLE2 = "{0}", "{1}", "{2}"
WEDGE_ARROW = "e1@wedge"


class PointedADC:
    """A complex with named degree-0 generators (tips, poles)."""

    def __init__(self, complex: BasedADC, marks: Mapping[str, str]):
        for name, b in marks.items():
            if complex.degree(b) != 0:
                raise ValueError(f"mark {name} is not a degree-0 generator")
        self.complex = complex
        self.marks = dict(marks)

    def __getitem__(self, name):
        return self.marks[name]

    def __repr__(self):
        return f"PointedADC({self.complex!r}, marks={self.marks})"


def _wrap(name: str) -> str:
    return f"({name})" if ("⊗" in name or "⋆" in name) else name


def tensor_name(b: str, c: str) -> str:
    return f"{_wrap(b)}⊗{_wrap(c)}"


def tensor(K: BasedADC, L: BasedADC) -> BasedADC:
    """Gray tensor: d(x⊗y) = dx⊗y + (-1)^|x| x⊗dy."""
    basis, diff, aug = {}, {}, {}
    for b in K.ids():
        p = K.degree(b)
        for c in L.ids():
            q = L.degree(c)
            nm = tensor_name(b, c)
            basis[nm] = p + q
            if p + q == 0:
                aug[nm] = K.e(b) * L.e(c)
                continue
            acc: Dict[str, int] = {}
            if p > 0:
                for t, v in K.d(b).items():
                    acc[tensor_name(t, c)] = acc.get(tensor_name(t, c), 0) + v
            if q > 0:
                s = -1 if p % 2 else 1
                for t, v in L.d(c).items():
                    acc[tensor_name(b, t)] = acc.get(tensor_name(b, t), 0) + s * v
            diff[nm] = Chain(p + q - 1, acc)
    return BasedADC(basis, diff, aug)


def point_adc(name: str = "pt") -> BasedADC:
    return BasedADC({name: 0}, {}, {name: 1})


def interval_adc() -> BasedADC:
    """The arrow {0} -> {1}, named as the second factor of the cylinder."""
    return BasedADC({POLE0: 0, POLE1: 0, "[1]": 1},
                    {"[1]": Chain(0, {POLE1: 1, POLE0: -1})}, {POLE0: 1, POLE1: 1})


def cylinder(K: BasedADC) -> BasedADC:
    return tensor(K, interval_adc())


def _cone_complex(K: BasedADC, flip_sign: bool = False) -> BasedADC:
    basis = {TIP: 0}
    aug = {TIP: 1}
    diff = {}
    star0 = {b: f"{_wrap(b)}⋆∅" for b in K.ids()}
    star1 = {b: f"{_wrap(b)}⋆1" for b in K.ids()}
    for b in K.ids():
        d = K.degree(b)
        basis[star0[b]] = d
        basis[star1[b]] = d + 1
        if d == 0:
            aug[star0[b]] = K.e(b)
            diff[star1[b]] = Chain(0, {TIP: K.e(b)}) - Chain(0, {star0[b]: 1})
        else:
            diff[star0[b]] = K.d(b).rename(star0)
            s = 1 if d % 2 else -1  # (-1)^(|x|+1)
            if flip_sign:
                s = -s
            diff[star1[b]] = K.d(b).rename(star1, d) + Chain(d, {star0[b]: s})
    return BasedADC(basis, diff, aug)


def cone(K: BasedADC, flip_sign: bool = False) -> PointedADC:
    """K⋆1: the cylinder with its top end K⊗{1} collapsed to the tip.

    ``flip_sign`` flips the sign of the x⋆∅ term; it exists only so that the
    verification suite can inject a known fault.
    """
    return PointedADC(_cone_complex(K, flip_sign), {"tip": TIP})


def cocone(K: BasedADC) -> PointedADC:
    """1 co⋆ K, obtained from the cone by the full duality on both sides."""
    C = dual(_cone_complex(dual(K, FULL)), FULL)
    return PointedADC(C, {"tip": TIP})


def susp_name(b: str) -> str:
    return f"[{b},1]"


def suspend(K: BasedADC) -> PointedADC:
    basis = {POLE0: 0, POLE1: 0}
    aug = {POLE0: 1, POLE1: 1}
    diff = {}
    ren = {b: susp_name(b) for b in K.ids()}
    for b in K.ids():
        d = K.degree(b)
        basis[ren[b]] = d + 1
        if d == 0:
            e = K.e(b)
            diff[ren[b]] = Chain(0, {POLE1: e, POLE0: -e})
        else:
            diff[ren[b]] = K.d(b).rename(ren, d)
    return PointedADC(BasedADC(basis, diff, aug), {"0": POLE0, "1": POLE1})


def wedge(K: BasedADC, side: str) -> PointedADC:
    """``right``: [K,1] followed by an arrow; ``left``: an arrow followed by [K,1]."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    lo, hi = (POLE0, POLE1) if side == "right" else (POLE1, POLE2)
    alo, ahi = (POLE1, POLE2) if side == "right" else (POLE0, POLE1)
    basis = {POLE0: 0, POLE1: 0, POLE2: 0, WEDGE_ARROW: 1}
    aug = {POLE0: 1, POLE1: 1, POLE2: 1}
    diff = {WEDGE_ARROW: Chain(0, {ahi: 1, alo: -1})}
    ren = {b: susp_name(b) for b in K.ids()}
    for b in K.ids():
        d = K.degree(b)
        basis[ren[b]] = d + 1
        if d == 0:
            e = K.e(b)
            diff[ren[b]] = Chain(0, {hi: e, lo: -e})
        else:
            diff[ren[b]] = K.d(b).rename(ren, d)
    return PointedADC(BasedADC(basis, diff, aug), {"0": POLE0, "1": POLE1, "2": POLE2})


def whisker(K: BasedADC, side: str) -> ADCMorphism:
    """The map [K,1] -> wedge(K, side) sending [x,1] to [x,1] + e1 for |x| = 0."""
    S = suspend(K).complex
    W = wedge(K, side).complex
    m = {POLE0: Chain(0, {POLE0: 1}), POLE1: Chain(0, {POLE2: 1})}
    for b in K.ids():
        d = K.degree(b)
        if d == 0:
            m[susp_name(b)] = Chain(1, {susp_name(b): 1, WEDGE_ARROW: K.e(b)})
        else:
            m[susp_name(b)] = Chain(d + 1, {susp_name(b): 1})
    return ADCMorphism(S, W, m).validate()


# ---------------------------------------------------------------------------
# canonical maps between the constructions


def _gen_map(S: BasedADC, T: BasedADC, f) -> ADCMorphism:
    return ADCMorphism(S, T, {b: f(b) for b in S.ids()}).validate()


def collapse_to_point(K: BasedADC, P: BasedADC = None, target: str = "pt") -> ADCMorphism:
    """K -> point, sending x to e(x) times the point and higher cells to 0."""
    P = P or point_adc(target)
    return _gen_map(K, P, lambda b: Chain(0, {target: K.e(b)}) if K.degree(b) == 0
                    else Chain(K.degree(b)))


def point_into(K: BasedADC, b: str, P: BasedADC = None) -> ADCMorphism:
    P = P or point_adc()
    (pt,) = P.ids()
    return ADCMorphism(P, K, {pt: Chain(0, {b: 1})}).validate()


def cylinder_end(K: BasedADC, eps: int, C: BasedADC = None) -> ADCMorphism:
    """K -> K⊗[1], x -> x⊗{eps}."""
    C = C or cylinder(K)
    end = POLE0 if eps == 0 else POLE1
    return _gen_map(K, C, lambda b: Chain(K.degree(b), {tensor_name(b, end): 1}))


def cylinder_ends(K: BasedADC, C: BasedADC = None):
    """K⊗{0,1} -> K⊗[1] with its source complex."""
    C = C or cylinder(K)
    two = BasedADC({POLE0: 0, POLE1: 0}, {}, {POLE0: 1, POLE1: 1})
    E = tensor(K, two)
    return E, _gen_map(E, C, lambda b: Chain(E.degree(b), {b: 1}))


def cone_base(K: BasedADC, P: BasedADC = None) -> ADCMorphism:
    """K -> K⋆1 (or the cocone), x -> x⋆∅."""
    P = P or cone(K).complex
    return _gen_map(K, P, lambda b: Chain(K.degree(b), {f"{_wrap(b)}⋆∅": 1}))


def _quotient(K: BasedADC, Cyl: BasedADC, P: BasedADC, collapsed: str) -> ADCMorphism:
    kept = POLE0 if collapsed == POLE1 else POLE1
    m = {}
    for b in K.ids():
        d = K.degree(b)
        m[tensor_name(b, kept)] = Chain(d, {f"{_wrap(b)}⋆∅": 1})
        m[tensor_name(b, "[1]")] = Chain(d + 1, {f"{_wrap(b)}⋆1": 1})
        m[tensor_name(b, collapsed)] = Chain(0, {TIP: K.e(b)}) if d == 0 else Chain(d)
    return ADCMorphism(Cyl, P, m).validate()


def cone_quotient(K: BasedADC, Cyl: BasedADC = None, P: BasedADC = None) -> ADCMorphism:
    """K⊗[1] -> K⋆1 collapsing K⊗{1}."""
    return _quotient(K, Cyl or cylinder(K), P or cone(K).complex, POLE1)


def cocone_quotient(K: BasedADC, Cyl: BasedADC = None, P: BasedADC = None) -> ADCMorphism:
    """K⊗[1] -> 1 co⋆ K collapsing K⊗{0}."""
    return _quotient(K, Cyl or cylinder(K), P or cocone(K).complex, POLE0)


def _star_to_susp(K: BasedADC, P: BasedADC, S: BasedADC, tip_pole: str, base_pole: str) -> ADCMorphism:
    m = {TIP: Chain(0, {tip_pole: 1})}
    for b in K.ids():
        d = K.degree(b)
        m[f"{_wrap(b)}⋆∅"] = Chain(0, {base_pole: K.e(b)}) if d == 0 else Chain(d)
        m[f"{_wrap(b)}⋆1"] = Chain(d + 1, {susp_name(b): 1})
    return ADCMorphism(P, S, m).validate()


def cone_to_suspension(K: BasedADC, P: BasedADC = None, S: BasedADC = None) -> ADCMorphism:
    """K⋆1 -> [K,1]: the base goes to {0}, the tip to {1}."""
    return _star_to_susp(K, P or cone(K).complex, S or suspend(K).complex, POLE1, POLE0)


def cocone_to_suspension(K: BasedADC, P: BasedADC = None, S: BasedADC = None) -> ADCMorphism:
    """1 co⋆ K -> [K,1]: the tip goes to {0}, the base to {1}."""
    return _star_to_susp(K, P or cocone(K).complex, S or suspend(K).complex, POLE0, POLE1)


def suspension_quotient(K: BasedADC, Cyl: BasedADC = None, S: BasedADC = None) -> ADCMorphism:
    """K⊗[1] -> [K,1] collapsing both ends."""
    Cyl = Cyl or cylinder(K)
    S = S or suspend(K).complex
    m = {}
    for b in K.ids():
        d = K.degree(b)
        for pole in (POLE0, POLE1):
            m[tensor_name(b, pole)] = Chain(0, {pole: K.e(b)}) if d == 0 else Chain(d)
        m[tensor_name(b, "[1]")] = Chain(d + 1, {susp_name(b): 1})
    return ADCMorphism(Cyl, S, m).validate()


def suspend_map(f: ADCMorphism, S: BasedADC = None, T: BasedADC = None) -> ADCMorphism:
    """[f,1]: poles to poles, [x,1] -> [f(x),1]."""
    S = S or suspend(f.source).complex
    T = T or suspend(f.target).complex
    m = {POLE0: Chain(0, {POLE0: 1}), POLE1: Chain(0, {POLE1: 1})}
    for b, img in f.items():
        m[susp_name(b)] = Chain(img.deg + 1, {susp_name(t): v for t, v in img.items()})
    return ADCMorphism(S, T, m).validate()
