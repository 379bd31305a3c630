"""Based augmented directed complexes.

A complex is a finite graded basis with an integer differential and an
augmentation on degree 0.  The positivity submonoid is always the N-span of
the basis, so positivity of a chain is just the sign of its coefficients.
"""
from __future__ import annotations

import json
import os
from collections import deque
from typing import Dict, Iterable, Iterator, Mapping, NamedTuple, Optional, Tuple

from .errors import (
    AugmentationNotAnnihilating,
    DegreeMismatch,
    DifferentialNotSquareZero,
    DuplicateId,
    InvalidInput,
    NotAugmented,
    NotChainMap,
    NotPositive,
    PreconditionViolated,
    SourceTargetMismatch,
    UnknownBasisElement,
    UnknownKey,
)


class Verdict(NamedTuple):
    """Boolean answer with an optional witness; truthiness follows ``ok``."""

    ok: bool
    witness: object = None

    def __bool__(self):
        return self.ok


# ---------------------------------------------------------------------------
# chains


class Chain:
    """Integer formal sum of basis ids, all of one degree."""

    __slots__ = ("deg", "_c", "_key")

    def __init__(self, deg: int, coeffs: Optional[Mapping[str, int]] = None):
        if deg < 0:
            raise DegreeMismatch(f"negative degree {deg}")
        self.deg = deg
        c = {}
        if coeffs:
            for k in sorted(coeffs):
                v = coeffs[k]
                if not isinstance(v, int) or isinstance(v, bool):
                    raise InvalidInput(f"coefficient of {k!r} is not an integer")
                if v:
                    c[k] = v
        self._c = c
        self._key = None

    @classmethod
    def gen(cls, deg: int, b: str, coeff: int = 1) -> "Chain":
        return cls(deg, {b: coeff})

    @classmethod
    def _raw(cls, deg, c):
        # c must already be sorted and zero-free
        ch = cls.__new__(cls)
        ch.deg = deg
        ch._c = c
        ch._key = None
        return ch

    # mapping-like access
    def __getitem__(self, b: str) -> int:
        return self._c.get(b, 0)

    def __contains__(self, b) -> bool:
        return b in self._c

    def __iter__(self) -> Iterator[str]:
        return iter(self._c)

    def __len__(self):
        return len(self._c)

    def items(self):
        return self._c.items()

    def support(self) -> Tuple[str, ...]:
        return tuple(self._c)

    def as_dict(self) -> Dict[str, int]:
        return dict(self._c)

    def __bool__(self):
        return bool(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def is_positive(self) -> bool:
        """Nonnegative coefficients (membership in the positivity monoid)."""
        return all(v > 0 for v in self._c.values())

    def total(self) -> int:
        return sum(self._c.values())

    # arithmetic
    def _check(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        if other.deg != self.deg:
            raise DegreeMismatch(f"chains of degrees {self.deg} and {other.deg}")
        return None

    def _combine(self, other, sign):
        c = dict(self._c)
        for k, v in other._c.items():
            n = c.get(k, 0) + sign * v
            if n:
                c[k] = n
            else:
                c.pop(k, None)
        return Chain._raw(self.deg, dict(sorted(c.items())))

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self._combine(other, 1)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self._combine(other, -1)

    def __neg__(self):
        return Chain._raw(self.deg, {k: -v for k, v in self._c.items()})

    def __mul__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n == 0:
            return Chain._raw(self.deg, {})
        return Chain._raw(self.deg, {k: n * v for k, v in self._c.items()})

    __rmul__ = __mul__

    def positive(self) -> "Chain":
        return Chain._raw(self.deg, {k: v for k, v in self._c.items() if v > 0})

    def negative(self) -> "Chain":
        return Chain._raw(self.deg, {k: -v for k, v in self._c.items() if v < 0})

    def meet(self, other: "Chain") -> "Chain":
        """Elementwise minimum, the lattice meet of two chains."""
        if other.deg != self.deg:
            raise DegreeMismatch(f"meet of degrees {self.deg} and {other.deg}")
        keys = sorted(set(self._c) | set(other._c))
        return Chain(self.deg, {k: min(self[k], other[k]) for k in keys})

    def rename(self, mapping: Mapping[str, str], deg: Optional[int] = None) -> "Chain":
        c: Dict[str, int] = {}
        for k, v in self._c.items():
            nk = mapping[k]
            c[nk] = c.get(nk, 0) + v
        return Chain(self.deg if deg is None else deg, c)

    # identity
    def key(self):
        if self._key is None:
            self._key = (self.deg, tuple(self._c.items()))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __lt__(self, other):
        return self.key() < other.key()

    def __repr__(self):
        return f"Chain({self.deg}, {self._c!r})"

    def __str__(self):
        if not self._c:
            return "0"
        out = []
        for k, v in self._c.items():
            sign = "-" if v < 0 else "+"
            a = abs(v)
            term = k if a == 1 else f"{a}{k}"
            out.append((sign, term))
        s = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, term in out[1:]:
            s += f" {sign} {term}"
        return s

    def to_json(self) -> Dict[str, int]:
        return dict(self._c)


def chain_parts(x: Chain):
    """Split ``x`` into positive and negative parts plus a meet function."""
    return x.positive(), x.negative(), x.meet


# ---------------------------------------------------------------------------
# dualities


class Duality:
    """A set S of positive degrees; the dual negates the differential on degrees in S."""

    PRESETS = ("op", "co", "full", "t")

    def __init__(self, name: str, dims=None):
        self.name = name
        if name == "op":
            self._rule = lambda n: n % 2 == 1
        elif name == "co":
            self._rule = lambda n: n > 0 and n % 2 == 0
        elif name == "full":
            self._rule = lambda n: n > 0
        elif name == "t":
            self._rule = lambda n: n == 1
        else:
            ds = frozenset(dims or ())
            if any(d <= 0 for d in ds):
                raise InvalidInput("duality degrees must be positive")
            self._rule = ds.__contains__

    @classmethod
    def parse(cls, text: str) -> "Duality":
        text = text.strip()
        if text in cls.PRESETS:
            return cls(text)
        if not text or text == "none":
            return cls("custom", ())
        try:
            dims = [int(t) for t in text.split(",")]
        except ValueError:
            raise InvalidInput(f"unknown duality {text!r}") from None
        return cls("custom", dims)

    def __contains__(self, n: int) -> bool:
        return self._rule(n)

    def __repr__(self):
        return f"Duality({self.name!r})"


OP = Duality("op")
CO = Duality("co")
FULL = Duality("full")
TRANSPOSE = Duality("t")


# ---------------------------------------------------------------------------
# arrays


class SteinerArray:
    """Rows ``(x_i^-, x_i^+)`` for ``i = 0..n``.  Only shape is checked here."""

    __slots__ = ("rows", "_hash")

    def __init__(self, rows: Iterable[Tuple[Chain, Chain]]):
        rows = tuple((m, p) for m, p in rows)
        if not rows:
            raise InvalidInput("an array needs at least one row")
        for i, (m, p) in enumerate(rows):
            if m.deg != i or p.deg != i:
                raise DegreeMismatch(f"row {i} holds chains of degree {m.deg}, {p.deg}")
        self.rows = rows
        self._hash = None

    @property
    def dim(self) -> int:
        return len(self.rows) - 1

    def minus(self, i: int) -> Chain:
        return self.rows[i][0]

    def plus(self, i: int) -> Chain:
        return self.rows[i][1]

    @property
    def top(self) -> Chain:
        return self.rows[-1][1]

    def key(self):
        return tuple((m.key(), p.key()) for m, p in self.rows)

    def __eq__(self, other):
        if not isinstance(other, SteinerArray):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        body = ", ".join(f"({m}, {p})" for m, p in self.rows)
        return f"SteinerArray({body})"

    def to_json(self):
        return [[m.to_json(), p.to_json()] for m, p in self.rows]

    @classmethod
    def from_json(cls, doc) -> "SteinerArray":
        if not isinstance(doc, list):
            raise InvalidInput("array must be a list of row pairs")
        rows = []
        for i, pair in enumerate(doc):
            if not (isinstance(pair, list) and len(pair) == 2):
                raise InvalidInput(f"row {i} must be a pair")
            rows.append((Chain(i, pair[0]), Chain(i, pair[1])))
        return cls(rows)


# ---------------------------------------------------------------------------
# complexes


class BasedADC:
    """Finite based augmented directed complex.

    ``basis`` maps id to degree, ``diff`` maps ids of degree >= 1 to chains one
    degree lower and ``aug`` maps degree-0 ids to integers.  Missing entries
    mean zero.  The constructor checks shape only; :meth:`validate` checks the
    two axioms.
    """

    def __init__(self, basis: Mapping[str, int], diff: Optional[Mapping] = None,
                 aug: Optional[Mapping[str, int]] = None):
        self._deg: Dict[str, int] = {}
        for b in sorted(basis):
            d = basis[b]
            if not isinstance(b, str) or not b:
                raise InvalidInput(f"basis id {b!r} must be a nonempty string")
            if not isinstance(d, int) or isinstance(d, bool) or d < 0:
                raise DegreeMismatch(f"degree of {b!r} must be a nonnegative integer")
            self._deg[b] = d
        diff = diff or {}
        aug = aug or {}
        for b in diff:
            if b not in self._deg:
                raise UnknownBasisElement(f"differential given for unknown id {b!r}", b)
        for b in aug:
            if b not in self._deg:
                raise UnknownBasisElement(f"augmentation given for unknown id {b!r}", b)
            if self._deg[b] != 0:
                raise DegreeMismatch(f"augmentation given for {b!r} of degree {self._deg[b]}", b)
        self._diff: Dict[str, Chain] = {}
        self._aug: Dict[str, int] = {}
        for b, d in self._deg.items():
            if d == 0:
                if b in diff and diff[b]:
                    raise DegreeMismatch(f"differential given for degree-0 id {b!r}", b)
                v = aug.get(b, 0)
                if not isinstance(v, int) or isinstance(v, bool):
                    raise InvalidInput(f"augmentation of {b!r} is not an integer")
                self._aug[b] = v
            else:
                raw = diff.get(b)
                ch = raw if isinstance(raw, Chain) else Chain(d - 1, raw or {})
                if ch.deg != d - 1:
                    raise DegreeMismatch(f"boundary of {b!r} has degree {ch.deg}", b)
                for t in ch:
                    if t not in self._deg:
                        raise UnknownBasisElement(f"boundary of {b!r} mentions unknown id {t!r}", t)
                    if self._deg[t] != d - 1:
                        raise DegreeMismatch(f"boundary of {b!r} mentions {t!r} of degree {self._deg[t]}", b)
                self._diff[b] = ch
        by_deg: Dict[int, list] = {}
        for b, d in self._deg.items():
            by_deg.setdefault(d, []).append(b)
        self._by_deg = {d: tuple(v) for d, v in sorted(by_deg.items())}
        self._atoms: Dict[str, SteinerArray] = {}
        self._key = None
        self._hash = None

    # basic queries
    def degree(self, b: str) -> int:
        try:
            return self._deg[b]
        except KeyError:
            raise UnknownBasisElement(f"unknown basis element {b!r}", b) from None

    def __contains__(self, b) -> bool:
        return b in self._deg

    def ids(self, deg: Optional[int] = None) -> Tuple[str, ...]:
        if deg is None:
            return tuple(self._deg)
        return self._by_deg.get(deg, ())

    @property
    def basis(self) -> Dict[str, int]:
        return dict(self._deg)

    @property
    def dim(self) -> int:
        return max(self._by_deg) if self._by_deg else -1

    def __len__(self):
        return len(self._deg)

    def counts(self) -> Tuple[int, ...]:
        return tuple(len(self.ids(d)) for d in range(self.dim + 1))

    def d(self, b: str) -> Chain:
        """Boundary of a basis element."""
        deg = self.degree(b)
        if deg == 0:
            raise DegreeMismatch(f"{b!r} has degree 0 and no boundary", b)
        return self._diff[b]

    def e(self, b: str) -> int:
        if self.degree(b) != 0:
            raise DegreeMismatch(f"{b!r} is not of degree 0", b)
        return self._aug[b]

    def boundary(self, x: Chain) -> Chain:
        if x.deg == 0:
            raise DegreeMismatch("degree-0 chains have no boundary")
        acc: Dict[str, int] = {}
        for b, v in x.items():
            for t, w in self.d(b).items():
                acc[t] = acc.get(t, 0) + v * w
        return Chain(x.deg - 1, acc)

    def augment(self, x: Chain) -> int:
        if x.deg != 0:
            raise DegreeMismatch("augmentation lives in degree 0")
        return sum(v * self.e(b) for b, v in x.items())

    def gen(self, b: str) -> Chain:
        return Chain.gen(self.degree(b), b)

    def check_chain(self, x: Chain) -> None:
        for b in x:
            if self.degree(b) != x.deg:
                raise DegreeMismatch(f"{b!r} has degree {self._deg[b]}, chain has {x.deg}", b)

    # axioms
    def validate(self) -> "BasedADC":
        for b in self.ids():
            d = self._deg[b]
            if d >= 2 and self.boundary(self._diff[b]):
                raise DifferentialNotSquareZero(
                    f"dd({b}) = {self.boundary(self._diff[b])}", b)
            if d == 1 and self.augment(self._diff[b]):
                raise AugmentationNotAnnihilating(
                    f"e(d({b})) = {self.augment(self._diff[b])}", b)
        return self

    # atoms
    def atom(self, b: str) -> SteinerArray:
        if b not in self._deg:
            raise UnknownBasisElement(f"unknown basis element {b!r}", b)
        a = self._atoms.get(b)
        if a is None:
            n = self._deg[b]
            top = Chain.gen(n, b)
            rows = [(top, top)]
            m, p = top, top
            for _ in range(n, 0, -1):
                m = self.boundary(m).negative()
                p = self.boundary(p).positive()
                rows.append((m, p))
            a = SteinerArray(reversed(rows))
            self._atoms[b] = a
        return a

    # structure
    def diff_items(self):
        return self._diff.items()

    def aug_items(self):
        return self._aug.items()

    def rename(self, mapping: Mapping[str, str]) -> "BasedADC":
        if len(set(mapping[b] for b in self._deg)) != len(self._deg):
            raise DuplicateId("renaming is not injective")
        basis = {mapping[b]: d for b, d in self._deg.items()}
        diff = {mapping[b]: c.rename(mapping) for b, c in self._diff.items()}
        aug = {mapping[b]: v for b, v in self._aug.items()}
        return BasedADC(basis, diff, aug)

    def restrict(self, ids: Iterable[str]) -> "BasedADC":
        """Subcomplex on a downward closed set of ids."""
        keep = set(ids)
        for b in keep:
            if self._deg[b] > 0 and not set(self._diff[b]) <= keep:
                raise PreconditionViolated(f"{b!r} has boundary outside the subset", b)
        return BasedADC({b: self._deg[b] for b in keep},
                        {b: c for b, c in self._diff.items() if b in keep},
                        {b: v for b, v in self._aug.items() if b in keep})

    def key(self):
        if self._key is None:
            self._key = (tuple(self._deg.items()),
                         tuple((b, c.key()) for b, c in self._diff.items()),
                         tuple(self._aug.items()))
        return self._key

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, BasedADC):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self):
        return f"BasedADC(counts={self.counts()}, ids={list(self._deg)})"

    def to_json(self):
        return {
            "basis": [{"id": b, "deg": d} for b, d in self._deg.items()],
            "diff": {b: c.to_json() for b, c in self._diff.items()},
            "aug": dict(self._aug),
        }

    def table(self) -> str:
        """Human readable generator table: each generator with source and target."""
        lines = []
        for d in range(self.dim + 1):
            for b in self.ids(d):
                if d == 0:
                    lines.append(f"{b}  (deg 0, e = {self._aug[b]})")
                else:
                    a = self.atom(b)
                    lines.append(f"{b}  (deg {d}): {a.minus(d - 1)} -> {a.plus(d - 1)}")
        return "\n".join(lines)


def _expect_keys(doc, allowed, what):
    if not isinstance(doc, dict):
        raise InvalidInput(f"{what} must be a JSON object")
    extra = set(doc) - set(allowed)
    if extra:
        raise UnknownKey(f"unknown key(s) in {what}: {sorted(extra)}", sorted(extra))


def adc_from_json(doc) -> BasedADC:
    """Build a complex from the JSON document form, checking shape only."""
    _expect_keys(doc, ("basis", "diff", "aug"), "complex")
    basis: Dict[str, int] = {}
    raw = doc.get("basis", [])
    if not isinstance(raw, list):
        raise InvalidInput("'basis' must be a list")
    for entry in raw:
        _expect_keys(entry, ("id", "deg"), "basis entry")
        if "id" not in entry or "deg" not in entry:
            raise InvalidInput("basis entries need 'id' and 'deg'")
        b = entry["id"]
        if b in basis:
            raise DuplicateId(f"duplicate id {b!r}", b)
        basis[b] = entry["deg"]
    diff = doc.get("diff", {})
    aug = doc.get("aug", {})
    if not isinstance(diff, dict) or not isinstance(aug, dict):
        raise InvalidInput("'diff' and 'aug' must be objects")
    for b, c in diff.items():
        if not isinstance(c, dict):
            raise InvalidInput(f"boundary of {b!r} must be an object")
        if b in basis and basis[b] == 0:
            raise DegreeMismatch(f"differential given for degree-0 id {b!r}", b)
    conv = {}
    for b, c in diff.items():
        if b not in basis:
            raise UnknownBasisElement(f"differential given for unknown id {b!r}", b)
        if not isinstance(basis[b], int) or basis[b] < 1:
            raise DegreeMismatch(f"bad degree for {b!r}", b)
        conv[b] = Chain(basis[b] - 1, c)
    return BasedADC(basis, conv, aug)


def validate_adc(doc) -> BasedADC:
    """Parse and fully validate a raw complex (dict, or an existing BasedADC)."""
    K = doc if isinstance(doc, BasedADC) else adc_from_json(doc)
    return K.validate()


def load_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def load_adc(path) -> BasedADC:
    return validate_adc(load_json(path))


# ---------------------------------------------------------------------------
# predicates


def _generating_order(K: BasedADC) -> Dict[str, set]:
    """Edges a -> b of the relation generating the order used for loop-freeness."""
    edges: Dict[str, set] = {b: set() for b in K.ids()}
    for a in K.ids():
        n = K.degree(a)
        if n == 0:
            continue
        at = K.atom(a)
        for b in at.minus(n - 1):
            edges[a].add(b)
        for b in at.plus(n - 1):
            edges[b].add(a)
    return edges


def _find_cycle(edges: Mapping[str, set]) -> Optional[Tuple[str, ...]]:
    # iterative DFS with colours; returns the first cycle met in id order
    colour = {v: 0 for v in edges}
    for root in sorted(edges):
        if colour[root]:
            continue
        stack = [(root, iter(sorted(edges[root])))]
        path = [root]
        colour[root] = 1
        while stack:
            v, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                colour[v] = 2
                stack.pop()
                path.pop()
                continue
            if colour[nxt] == 1:
                i = path.index(nxt)
                return tuple(path[i:]) + (nxt,)
            if colour[nxt] == 0:
                colour[nxt] = 1
                path.append(nxt)
                stack.append((nxt, iter(sorted(edges[nxt]))))
    return None


def is_loopfree(K: BasedADC) -> Verdict:
    """Antisymmetry of the order generated by the atoms; witness is a cycle."""
    cyc = _find_cycle(_generating_order(K))
    return Verdict(cyc is None, cyc)


def is_unitary(K: BasedADC) -> Verdict:
    for b in K.ids():
        a = K.atom(b)
        if K.augment(a.minus(0)) != 1 or K.augment(a.plus(0)) != 1:
            return Verdict(False, b)
    return Verdict(True)


def is_strong_steiner(K: BasedADC) -> Verdict:
    v = is_unitary(K)
    if not v:
        return Verdict(False, ("not unitary", v.witness))
    v = is_loopfree(K)
    if not v:
        return Verdict(False, ("loop", v.witness))
    return Verdict(True)


def dual(K: BasedADC, S: Duality) -> BasedADC:
    diff = {b: (-c if K.degree(b) in S else c) for b, c in K.diff_items()}
    return BasedADC(K.basis, diff, dict(K.aug_items()))


# ---------------------------------------------------------------------------
# morphisms


class ADCMorphism:
    """Positive chain map on bases.  Ids missing from ``mapping`` go to zero."""

    def __init__(self, source: BasedADC, target: BasedADC, mapping: Mapping):
        self.source = source
        self.target = target
        m: Dict[str, Chain] = {}
        for b in mapping:
            if b not in source:
                raise UnknownBasisElement(f"map given for unknown id {b!r}", b)
        for b in source.ids():
            d = source.degree(b)
            raw = mapping.get(b)
            ch = raw if isinstance(raw, Chain) else Chain(d, raw or {})
            if ch.deg != d:
                raise DegreeMismatch(f"image of {b!r} has degree {ch.deg}", b)
            for t in ch:
                if t not in target:
                    raise UnknownBasisElement(f"image of {b!r} mentions unknown id {t!r}", t)
                if target.degree(t) != d:
                    raise DegreeMismatch(f"image of {b!r} mentions {t!r} of wrong degree", b)
            m[b] = ch
        self._map = m

    def __call__(self, b: str) -> Chain:
        return self._map[b]

    def apply(self, x: Chain) -> Chain:
        acc: Dict[str, int] = {}
        for b, v in x.items():
            for t, w in self._map[b].items():
                acc[t] = acc.get(t, 0) + v * w
        return Chain(x.deg, acc)

    def apply_array(self, a: SteinerArray) -> SteinerArray:
        return SteinerArray((self.apply(m), self.apply(p)) for m, p in a.rows)

    def items(self):
        return self._map.items()

    def validate(self) -> "ADCMorphism":
        S, T = self.source, self.target
        for b, img in self._map.items():
            if not img.is_positive():
                raise NotPositive(f"image of {b!r} is {img}", b)
        for b, img in self._map.items():
            if S.degree(b) == 0:
                if T.augment(img) != S.e(b):
                    raise NotAugmented(f"e(f({b})) = {T.augment(img)} but e({b}) = {S.e(b)}", b)
            elif self.apply(S.d(b)) != T.boundary(img):
                raise NotChainMap(f"f(d {b}) != d f({b})", b)
        return self

    def is_identity(self) -> bool:
        return self.source == self.target and all(
            img == Chain.gen(img.deg, b) for b, img in self._map.items())

    def is_basis_bijection(self) -> bool:
        seen = set()
        for img in self._map.values():
            if len(img) != 1 or img.total() != 1:
                return False
            seen.add(img.support()[0])
        return len(seen) == len(self.source) == len(self.target)

    def inverse(self) -> "ADCMorphism":
        if not self.is_basis_bijection():
            raise PreconditionViolated("not a basis bijection")
        inv = {img.support()[0]: Chain.gen(img.deg, b) for b, img in self._map.items()}
        return ADCMorphism(self.target, self.source, inv)

    def key(self):
        return tuple((b, c.key()) for b, c in self._map.items())

    def __eq__(self, other):
        if not isinstance(other, ADCMorphism):
            return NotImplemented
        return (self.key() == other.key() and self.source == other.source
                and self.target == other.target)

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        body = ", ".join(f"{b} -> {c}" for b, c in self._map.items())
        return f"ADCMorphism({body})"

    def to_json(self, embed: bool = True):
        doc = {"map": {b: c.to_json() for b, c in self._map.items()}}
        if embed:
            doc = {"source": self.source.to_json(), "target": self.target.to_json(), **doc}
        return doc


def identity(K: BasedADC) -> ADCMorphism:
    return ADCMorphism(K, K, {b: K.gen(b) for b in K.ids()})


def validate_morphism(doc, base_dir: str = ".") -> ADCMorphism:
    """Parse a morphism document (or take an ADCMorphism) and check all axioms."""
    if isinstance(doc, ADCMorphism):
        return doc.validate()
    _expect_keys(doc, ("source", "target", "map"), "morphism")
    for k in ("source", "target", "map"):
        if k not in doc:
            raise InvalidInput(f"morphism needs {k!r}")

    def side(x):
        if isinstance(x, BasedADC):
            return x.validate()
        if isinstance(x, str):
            return load_adc(os.path.join(base_dir, x))
        return validate_adc(x)

    S, T = side(doc["source"]), side(doc["target"])
    raw = doc["map"]
    if not isinstance(raw, dict):
        raise InvalidInput("'map' must be an object")
    return ADCMorphism(S, T, raw).validate()


def compose_morphism(g: ADCMorphism, f: ADCMorphism) -> ADCMorphism:
    """``g`` after ``f``."""
    if f.target != g.source:
        raise SourceTargetMismatch("target of f differs from source of g")
    return ADCMorphism(f.source, g.target, {b: g.apply(c) for b, c in f.items()})


def is_quasirigid(f: ADCMorphism) -> Verdict:
    for side, K in (("source", f.source), ("target", f.target)):
        if not is_strong_steiner(K):
            raise PreconditionViolated(f"{side} is not strong Steiner")
    for b, img in f.items():
        if not img:
            continue
        if len(img) != 1 or img.total() != 1:
            return Verdict(False, b)
        if f.apply_array(f.source.atom(b)) != f.target.atom(img.support()[0]):
            return Verdict(False, b)
    return Verdict(True)


def downward_closure(K: BasedADC, ids: Iterable[str]) -> set:
    out = set()
    todo = deque(ids)
    while todo:
        b = todo.popleft()
        if b in out:
            continue
        out.add(b)
        if K.degree(b) > 0:
            todo.extend(K.d(b))
    return out
