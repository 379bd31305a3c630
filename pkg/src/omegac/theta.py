"""Globular sums and morphisms of the category Theta.

A globular sum is a tree: ``[0]`` is the point and ``[a_0, ..., a_{n-1}]``
is a string of n segments whose homs are the smaller sums ``a_i``.
A morphism ``a -> b`` is a monotone map on objects together with, for each
source segment i, one component ``a_i -> b_k`` for every target segment k it
covers.  Morphisms into products never appear as objects, which keeps every
hom set finite and enumerable by recursion.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .adc import ADCMorphism, BasedADC, Chain
from .errors import BadIndices, GSSyntaxError, InvalidInput, ShapeMismatch


class GlobularSum:
    __slots__ = ("branches", "_hash", "_dim")

    def __init__(self, branches: Sequence["GlobularSum"] = ()):
        self.branches: Tuple[GlobularSum, ...] = tuple(branches)
        self._hash = hash(self.branches)
        self._dim = 0 if not self.branches else 1 + max(b.dim for b in self.branches)

    @property
    def n(self) -> int:
        """Number of segments."""
        return len(self.branches)

    @property
    def dim(self) -> int:
        return self._dim

    def is_point(self) -> bool:
        return not self.branches

    def nodes(self) -> int:
        return 1 + sum(b.nodes() for b in self.branches)

    def __eq__(self, other):
        if not isinstance(other, GlobularSum):
            return NotImplemented
        return self._hash == other._hash and self.branches == other.branches

    def __hash__(self):
        return self._hash

    def __str__(self):
        if not self.branches:
            return "*"
        return "[" + ",".join(str(b) for b in self.branches) + "]"

    def __repr__(self):
        return f"GlobularSum({self})"


POINT = GlobularSum()


def dim(g: GlobularSum) -> int:
    return g.dim


@lru_cache(maxsize=None)
def globe(n: int) -> GlobularSum:
    if n < 0:
        raise BadIndices("negative globe dimension")
    return POINT if n == 0 else GlobularSum([globe(n - 1)])


def simplex(n: int) -> GlobularSum:
    """The string ``[n]`` of n composable arrows."""
    return GlobularSum([POINT] * n)


def parse_gs(expr: str) -> GlobularSum:
    """Parse ``gs := "*" | "[" gs ("," gs)* "]" | "D" digits``."""
    pos = 0
    s = expr

    def skip():
        nonlocal pos
        while pos < len(s) and s[pos].isspace():
            pos += 1

    def parse():
        nonlocal pos
        skip()
        if pos >= len(s):
            raise GSSyntaxError("unexpected end of input", pos)
        c = s[pos]
        if c == "*":
            pos += 1
            return POINT
        if c == "D":
            start = pos
            pos += 1
            while pos < len(s) and s[pos].isdigit():
                pos += 1
            if pos == start + 1:
                raise GSSyntaxError("expected digits after 'D'", pos)
            return globe(int(s[start + 1:pos]))
        if c == "[":
            pos += 1
            items = [parse()]
            skip()
            while pos < len(s) and s[pos] == ",":
                pos += 1
                items.append(parse())
                skip()
            if pos >= len(s) or s[pos] != "]":
                raise GSSyntaxError("expected ',' or ']'", pos)
            pos += 1
            return GlobularSum(items)
        raise GSSyntaxError(f"unexpected character {c!r}", pos)

    g = parse()
    skip()
    if pos != len(s):
        raise GSSyntaxError("trailing input", pos)
    return g


def as_gs(x) -> GlobularSum:
    return x if isinstance(x, GlobularSum) else parse_gs(x)


def sums_up_to(max_nodes: int) -> List[GlobularSum]:
    """Every globular sum with at most ``max_nodes`` tree nodes."""
    exact: Dict[int, List[GlobularSum]] = {1: [POINT]}

    def forests(total):
        # ordered nonempty lists of trees with node counts summing to total
        if total == 0:
            yield ()
            return
        for first in range(1, total + 1):
            for t in exact[first]:
                for rest in forests(total - first):
                    yield (t,) + rest

    for k in range(2, max_nodes + 1):
        exact[k] = [GlobularSum(f) for f in forests(k - 1) if f]
    return [g for k in range(1, max_nodes + 1) for g in exact[k]]


# ---------------------------------------------------------------------------
# lambda


def _seg(i: int) -> str:
    return f"v{i}{i + 1}" if i < 9 else f"v{i}_{i + 1}"


def cell_name(seg: int, inner: str, branch: GlobularSum) -> str:
    """Name of the suspension of ``inner`` (a generator of the branch) in segment ``seg``."""
    return _seg(seg) if branch.is_point() else f"{_seg(seg)}/{inner}"


@lru_cache(maxsize=None)
def lambda_gs(g: GlobularSum) -> BasedADC:
    """The based complex of a globular sum, built as a string of suspensions."""
    if g.is_point():
        return BasedADC({"v0": 0}, {}, {"v0": 1})
    basis = {f"v{i}": 0 for i in range(g.n + 1)}
    aug = {f"v{i}": 1 for i in range(g.n + 1)}
    diff = {}
    for i, a in enumerate(g.branches):
        L = lambda_gs(a)
        ren = {x: cell_name(i, x, a) for x in L.ids()}
        for x in L.ids():
            d = L.degree(x)
            basis[ren[x]] = d + 1
            if d == 0:
                e = L.e(x)
                diff[ren[x]] = Chain(0, {f"v{i + 1}": e, f"v{i}": -e})
            else:
                diff[ren[x]] = L.d(x).rename(ren, d)
    return BasedADC(basis, diff, aug)


# ---------------------------------------------------------------------------
# morphisms


class ThetaMorphism:
    """``f`` on objects plus ``comps[i][k - f[i]] : a_i -> b_k``."""

    __slots__ = ("src", "tgt", "f", "comps", "_hash")

    def __init__(self, src: GlobularSum, tgt: GlobularSum, f: Sequence[int],
                 comps: Sequence[Sequence["ThetaMorphism"]] = (), check: bool = True):
        self.src = src
        self.tgt = tgt
        self.f = tuple(f)
        self.comps = tuple(tuple(c) for c in comps)
        if check:
            self._check()
        self._hash = hash((src, tgt, self.f, self.comps))

    def _check(self):
        n, m = self.src.n, self.tgt.n
        if len(self.f) != n + 1:
            raise ShapeMismatch(f"object map has {len(self.f)} values, expected {n + 1}")
        if any(not 0 <= v <= m for v in self.f):
            raise ShapeMismatch("object map leaves the target")
        if any(self.f[i] > self.f[i + 1] for i in range(n)):
            raise ShapeMismatch("object map is not monotone")
        if len(self.comps) != n:
            raise ShapeMismatch(f"{len(self.comps)} component lists for {n} segments")
        for i, row in enumerate(self.comps):
            span = range(self.f[i], self.f[i + 1])
            if len(row) != len(span):
                raise ShapeMismatch(f"segment {i} needs {len(span)} components")
            for k, c in zip(span, row):
                if c.src != self.src.branches[i] or c.tgt != self.tgt.branches[k]:
                    raise ShapeMismatch(f"component ({i},{k}) has the wrong shape")

    def comp(self, i: int, k: int) -> "ThetaMorphism":
        return self.comps[i][k - self.f[i]]

    def __eq__(self, other):
        if not isinstance(other, ThetaMorphism):
            return NotImplemented
        return (self._hash == other._hash and self.f == other.f and self.src == other.src
                and self.tgt == other.tgt and self.comps == other.comps)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"ThetaMorphism({self.src} -> {self.tgt}, {self._body()})"

    def _body(self):
        if not self.comps:
            return str(list(self.f))
        inner = "; ".join("(" + ", ".join(c._body() for c in row) + ")" for row in self.comps)
        return f"{list(self.f)} {{{inner}}}"

    def to_json(self, top: bool = True):
        doc = {"f": list(self.f), "comps": [[c.to_json(False) for c in row] for row in self.comps]}
        if top:
            doc = {"src": str(self.src), "tgt": str(self.tgt), **doc}
        return doc


def tm_from_json(doc, src: Optional[GlobularSum] = None, tgt: Optional[GlobularSum] = None) -> ThetaMorphism:
    if not isinstance(doc, dict):
        raise InvalidInput("a Theta morphism must be a JSON object")
    extra = set(doc) - {"src", "tgt", "f", "comps"}
    if extra:
        raise InvalidInput(f"unknown key(s) {sorted(extra)}")
    if "src" in doc:
        src = parse_gs(doc["src"])
    if "tgt" in doc:
        tgt = parse_gs(doc["tgt"])
    if src is None or tgt is None:
        raise InvalidInput("Theta morphism needs 'src' and 'tgt'")
    f = doc.get("f")
    if not isinstance(f, list) or not all(isinstance(v, int) for v in f):
        raise InvalidInput("'f' must be a list of integers")
    raw = doc.get("comps", [])
    if not isinstance(raw, list) or len(raw) != src.n:
        raise ShapeMismatch(f"'comps' must list {src.n} segments")
    comps = []
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(f) != src.n + 1:
            raise ShapeMismatch("bad component list")
        ks = range(f[i], f[i + 1]) if f[i] <= f[i + 1] else range(0)
        if len(row) != len(ks):
            raise ShapeMismatch(f"segment {i} needs {len(ks)} components")
        if any(not 0 <= k < tgt.n for k in ks):
            raise ShapeMismatch("object map leaves the target")
        comps.append([tm_from_json(c, src.branches[i], tgt.branches[k]) for c, k in zip(row, ks)])
    return ThetaMorphism(src, tgt, f, comps)


@lru_cache(maxsize=None)
def identity_tm(a: GlobularSum) -> ThetaMorphism:
    return ThetaMorphism(a, a, range(a.n + 1), [[identity_tm(b)] for b in a.branches], check=False)


def point_at(b: GlobularSum, p: int) -> ThetaMorphism:
    return ThetaMorphism(POINT, b, (p,))


def collapse(a: GlobularSum, b: GlobularSum, p: int) -> ThetaMorphism:
    """Constant morphism ``a -> b`` at object p."""
    return ThetaMorphism(a, b, (p,) * (a.n + 1), [()] * a.n)


def is_identity_tm(f: ThetaMorphism) -> bool:
    return f.src == f.tgt and f == identity_tm(f.src)


def compose_tm(g: ThetaMorphism, f: ThetaMorphism) -> ThetaMorphism:
    """``g`` after ``f``."""
    if f.tgt != g.src:
        raise ShapeMismatch("target of f differs from source of g")
    a = f.src
    h = tuple(g.f[v] for v in f.f)
    comps = []
    for i in range(a.n):
        row = []
        for l in range(h[i], h[i + 1]):
            # the unique middle segment j covered by f on segment i with g covering l
            for j in range(f.f[i], f.f[i + 1]):
                if g.f[j] <= l < g.f[j + 1]:
                    break
            else:  # pragma: no cover - excluded by monotonicity
                raise ShapeMismatch("no mediating segment")
            row.append(compose_tm(g.comp(j, l), f.comp(i, j)))
        comps.append(row)
    return ThetaMorphism(a, g.tgt, h, comps, check=False)


@lru_cache(maxsize=None)
def _hom(a: GlobularSum, b: GlobularSum) -> Tuple[ThetaMorphism, ...]:
    m = b.n
    if a.is_point():
        return tuple(ThetaMorphism(a, b, (p,), (), check=False) for p in range(m + 1))
    out = []
    for f in itertools.combinations_with_replacement(range(m + 1), a.n + 1):
        per_seg = []
        for i, ai in enumerate(a.branches):
            per_seg.append(list(itertools.product(*(_hom(ai, b.branches[k])
                                                    for k in range(f[i], f[i + 1])))))
        for choice in itertools.product(*per_seg):
            out.append(ThetaMorphism(a, b, f, choice, check=False))
    return tuple(out)


def enumerate_hom(a, b) -> List[ThetaMorphism]:
    """Every morphism ``a -> b``, ordered by object map then components."""
    return list(_hom(as_gs(a), as_gs(b)))


def count_hom(a, b) -> int:
    return len(_hom(as_gs(a), as_gs(b)))


# ---------------------------------------------------------------------------
# flags and factorizations


def is_globular(f: ThetaMorphism) -> bool:
    if f.src.is_point():
        return True
    return all(f.f[i + 1] == f.f[i] + 1 for i in range(f.src.n)) and all(
        is_globular(row[0]) for row in f.comps)


def is_degenerate(f: ThetaMorphism) -> bool:
    if f.tgt.is_point():
        return True
    if set(f.f) != set(range(f.tgt.n + 1)):
        return False
    return all(is_degenerate(c) for row in f.comps for c in row)


@lru_cache(maxsize=None)
def _globular_into(b: GlobularSum) -> Tuple[ThetaMorphism, ...]:
    """All globular morphisms with target b (one per sub-sum occurrence)."""
    out = [ThetaMorphism(POINT, b, (p,), (), check=False) for p in range(b.n + 1)]
    for p in range(b.n):
        for q in range(p + 1, b.n + 1):
            per = [_globular_into(b.branches[k]) for k in range(p, q)]
            for choice in itertools.product(*per):
                src = GlobularSum([c.src for c in choice])
                out.append(ThetaMorphism(src, b, range(p, q + 1), [[c] for c in choice], check=False))
    return tuple(out)


def globular_into(b) -> List[ThetaMorphism]:
    return list(_globular_into(as_gs(b)))


def is_algebraic(f: ThetaMorphism) -> bool:
    """No factorization through a non-invertible globular morphism (brute force)."""
    for i in _globular_into(f.tgt):
        if is_identity_tm(i):
            continue
        for g in _hom(f.src, i.src):
            if compose_tm(i, g) == f:
                return False
    return True


def factor_alg_glob(f: ThetaMorphism) -> Tuple[ThetaMorphism, ThetaMorphism]:
    """Split f as ``glob o alg`` through the smallest sub-sum containing its image."""
    a, b = f.src, f.tgt
    if a.is_point():
        return identity_tm(a), f
    p, q = f.f[0], f.f[-1]
    if p == q:
        return collapse(a, POINT, 0), point_at(b, p)
    cs, algs, globs = [], {}, []
    for i in range(a.n):
        for k in range(f.f[i], f.f[i + 1]):
            al, gl = factor_alg_glob(f.comp(i, k))
            cs.append(al.tgt)
            algs[(i, k)] = al
            globs.append([gl])
    c = GlobularSum(cs)
    glob = ThetaMorphism(c, b, range(p, q + 1), globs)
    alg = ThetaMorphism(a, c, [v - p for v in f.f],
                        [[algs[(i, k)] for k in range(f.f[i], f.f[i + 1])] for i in range(a.n)])
    return alg, glob


def _joint_reedy(a: GlobularSum, family: List[ThetaMorphism]):
    """Common degenerate quotient of a nonempty family of morphisms out of a."""
    if a.is_point():
        return a, identity_tm(a), list(family)
    n = a.n
    live = [i for i in range(n) if any(h.f[i] != h.f[i + 1] for h in family)]
    sigma = [0]
    for i in range(n):
        sigma.append(sigma[-1] + (1 if i in live else 0))
    if not live:
        c = POINT
        return c, collapse(a, c, 0), [point_at(h.tgt, h.f[0]) for h in family]
    sub = {}
    for i in live:
        members = [(hi, t) for hi, h in enumerate(family) for t in range(len(h.comps[i]))]
        cj, d, monos = _joint_reedy(a.branches[i], [family[hi].comps[i][t] for hi, t in members])
        sub[i] = (cj, d, dict(zip(members, monos)))
    c = GlobularSum([sub[i][0] for i in live])
    degen = ThetaMorphism(a, c, sigma, [[sub[i][1]] if i in live else [] for i in range(n)])
    monos = []
    for hi, h in enumerate(family):
        delta = [h.f[0]] + [h.f[i + 1] for i in live]
        comps = [[sub[i][2][(hi, t)] for t in range(len(h.comps[i]))] for i in live]
        monos.append(ThetaMorphism(c, h.tgt, delta, comps))
    return c, degen, monos


def factor_reedy(f: ThetaMorphism) -> Tuple[ThetaMorphism, ThetaMorphism]:
    """Split f as ``mono o degen`` with degen an epimorphism."""
    _, degen, monos = _joint_reedy(f.src, [f])
    return degen, monos[0]


def is_mono(f: ThetaMorphism) -> bool:
    return is_identity_tm(factor_reedy(f)[0])


def classify(f: ThetaMorphism) -> Dict[str, bool]:
    glob = is_globular(f)
    return {
        "globular": glob,
        "degenerate": is_degenerate(f),
        "mono": is_mono(f),
        "algebraic": is_algebraic(f),
        "conduche": glob,
    }


# ---------------------------------------------------------------------------
# shapes derived from sums


def spine(g) -> List[ThetaMorphism]:
    """Globe inclusions indexing the spine: one per spine globe of every segment."""
    g = as_gs(g)
    if g.is_point():
        return [identity_tm(g)]
    out = []
    for i, a in enumerate(g.branches):
        for s in spine(a):
            out.append(ThetaMorphism(GlobularSum([s.src]), g, (i, i + 1), [[s]]))
    return out


def truncate(g, n: int, sign) -> Tuple[GlobularSum, ThetaMorphism]:
    """``s_n`` (sign -) or ``t_n`` (sign +) with its inclusion."""
    g = as_gs(g)
    if n < 0:
        raise BadIndices("negative truncation level")
    plus = sign in ("+", 1, "plus", "target")
    if n == 0:
        return POINT, point_at(g, g.n if plus else 0)
    if g.is_point():
        return g, identity_tm(g)
    parts = [truncate(a, n - 1, sign) for a in g.branches]
    c = GlobularSum([p[0] for p in parts])
    return c, ThetaMorphism(c, g, range(g.n + 1), [[p[1]] for p in parts])


@lru_cache(maxsize=None)
def structural_map(kind: str, n: int, k: int = 0) -> ThetaMorphism:
    """``unit``: the collapse D_{n+1} -> D_n.  ``comp``: the k-composition map out of D_n."""
    if kind == "unit":
        if n < 0:
            raise BadIndices("unit needs n >= 0")
        if n == 0:
            return collapse(globe(1), POINT, 0)
        return ThetaMorphism(globe(n + 1), globe(n), (0, 1), [[structural_map("unit", n - 1)]])
    if kind == "comp":
        if not 0 <= k < n:
            raise BadIndices(f"composition needs 0 <= k < n, got k={k}, n={n}")
        if k == 0:
            a = globe(n - 1)
            return ThetaMorphism(globe(n), GlobularSum([a, a]), (0, 2),
                                 [[identity_tm(a), identity_tm(a)]])
        inner = structural_map("comp", n - 1, k - 1)
        return ThetaMorphism(globe(n), GlobularSum([inner.tgt]), (0, 1), [[inner]])
    raise BadIndices(f"unknown structural map {kind!r}")


# ---------------------------------------------------------------------------
# realization as complexes


def _images(h: ThetaMorphism) -> Dict[str, Chain]:
    a, b = h.src, h.tgt
    if a.is_point():
        return {"v0": Chain(0, {f"v{h.f[0]}": 1})}
    out = {f"v{i}": Chain(0, {f"v{h.f[i]}": 1}) for i in range(a.n + 1)}
    for i, ai in enumerate(a.branches):
        inner = lambda_gs(ai)
        subs = [(k, _images(h.comp(i, k))) for k in range(h.f[i], h.f[i + 1])]
        for x in inner.ids():
            acc: Dict[str, int] = {}
            for k, imgs in subs:
                bk = b.branches[k]
                for t, v in imgs[x].items():
                    nm = cell_name(k, t, bk)
                    acc[nm] = acc.get(nm, 0) + v
            out[cell_name(i, x, ai)] = Chain(inner.degree(x) + 1, acc)
    return out


def tm_to_adc(f: ThetaMorphism) -> ADCMorphism:
    return ADCMorphism(lambda_gs(f.src), lambda_gs(f.tgt), _images(f)).validate()


def iter_fixture_morphisms(sources, targets) -> Iterator[ThetaMorphism]:
    for a in sources:
        for b in targets:
            yield from _hom(as_gs(a), as_gs(b))
