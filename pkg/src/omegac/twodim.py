"""Decomposition of 2-cells in complexes concentrated in degrees <= 2.

Level tags follow usage: level 1 orders 2-generators through their degree-1
atom rows, level 0 orders generators through their degree-0 rows.
For ``c < d`` read "c comes after d": some 1-cell (resp. object) targeted by
d is a source of c.
"""
from __future__ import annotations

import itertools
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .adc import BasedADC, Chain, SteinerArray, is_strong_steiner
from .errors import NotDecomposable, NotPartialOrder, PreconditionViolated
from .omega import Cell, compose_cells, is_cell, unit_cell


class Support(NamedTuple):
    level: int
    elems: FrozenSet[str]


class Precedence:
    """Transitive closure of the generating relation on a set of generators."""

    def __init__(self, level: int, elems: Iterable[str], generating: Iterable[Tuple[str, str]]):
        self.level = level
        self.elems = tuple(sorted(elems))
        succ: Dict[str, set] = {e: set() for e in self.elems}
        for c, d in generating:
            succ[c].add(d)
        closed = set()
        for e in self.elems:
            seen, todo = set(), list(succ[e])
            while todo:
                y = todo.pop()
                if y in seen:
                    continue
                seen.add(y)
                todo.extend(succ[y])
            closed.update((e, y) for y in seen)
        self.pairs = frozenset(closed)

    def less(self, c: str, d: str) -> bool:
        return (c, d) in self.pairs

    def comparable(self, c: str, d: str) -> bool:
        return self.less(c, d) or self.less(d, c)

    @property
    def is_partial_order(self) -> bool:
        return not any((e, e) in self.pairs for e in self.elems)

    def __repr__(self):
        return f"Precedence(level={self.level}, pairs={sorted(self.pairs)})"


def _require(K: BasedADC) -> None:
    if K.dim > 2:
        raise PreconditionViolated("complex has generators above degree 2")
    if not is_strong_steiner(K):
        raise PreconditionViolated("complex is not strong Steiner")


def _as_2cell(v: Cell) -> Cell:
    if v.dim > 2:
        raise PreconditionViolated("expected a cell of dimension at most 2")
    return unit_cell(v, 2) if v.dim < 2 else v


def supports(K: BasedADC, v: Cell) -> Tuple[Support, Support]:
    """2-support (top row) and 1-support of a 2-cell."""
    _require(K)
    v = _as_2cell(v)
    b2 = frozenset(v.minus(2))
    via_minus = set(v.plus(1))
    via_plus = set(v.minus(1))
    for b in b2:
        bd = K.d(b)
        via_minus |= set(bd.negative())
        via_plus |= set(bd.positive())
    if via_minus != via_plus:
        raise PreconditionViolated("the two descriptions of the 1-support disagree")
    return Support(2, b2), Support(1, frozenset(via_minus))


def _generating(K: BasedADC, elems: Sequence[str], level: int):
    rows = {e: K.atom(e).rows[level] for e in elems}
    for c in elems:
        for d in elems:
            if c != d and rows[c][0].meet(rows[d][1]):
                yield c, d


def relation(K: BasedADC, elems: Iterable[str], level: int) -> Precedence:
    elems = sorted(elems)
    return Precedence(level, elems, _generating(K, elems, level))


def precedence(K: BasedADC, v: Cell, level: int) -> Precedence:
    """Level 1: order on the 2-support.  Level 0: order on the 1-support."""
    s2, s1 = supports(K, v)
    if level == 1:
        return relation(K, s2.elems, 1)
    if level == 0:
        return relation(K, s1.elems, 0)
    raise PreconditionViolated("level must be 0 or 1")


def _linear_extensions(elems: Sequence[str], prec: Precedence):
    elems = list(elems)

    def rec(remaining, prefix):
        if not remaining:
            yield tuple(prefix)
            return
        for x in sorted(remaining):
            if any(prec.less(y, x) for y in remaining if y != x):
                continue
            remaining.remove(x)
            prefix.append(x)
            yield from rec(remaining, prefix)
            prefix.pop()
            remaining.add(x)

    yield from rec(set(elems), [])


def orderings(K: BasedADC, v: Cell) -> List[Tuple[str, ...]]:
    """Linear extensions of the level-1 precedence, smaller elements first."""
    prec = precedence(K, v, 1)
    if not prec.is_partial_order:
        raise NotPartialOrder("level-1 precedence has a cycle", sorted(prec.pairs))
    return list(_linear_extensions(prec.elems, prec))


def is_0_comparable(K: BasedADC, v: Cell, b: str) -> bool:
    s2, _ = supports(K, v)
    if b not in s2.elems:
        return False
    prec = precedence(K, v, 1)
    return not any(prec.comparable(b, c) for c in s2.elems if c != b)


# ---------------------------------------------------------------------------
# splitting


def _restrict(x: Chain, keep) -> Chain:
    return Chain(x.deg, {b: c for b, c in x.items() if b in keep})


def _split_rows(K: BasedADC, u: Cell, cls: Dict[str, str], level: int):
    """Split u as ``v *_level w *_level t`` given a class ('v', 'w' or 't') per generator.

    Rows above ``level`` are split by class, row ``level`` is rebuilt from the
    boundary formulas and lower rows are copied.
    """
    n = u.dim
    parts = {}
    for name in "vwt":
        keep = {b for b, c in cls.items() if c == name}
        parts[name] = [(_restrict(u.minus(j), keep), _restrict(u.plus(j), keep))
                       for j in range(level + 1, n + 1)]
    i = level
    vp = u.plus(i)
    vm = vp - K.boundary(parts["v"][0][0])
    wp = vm
    wm = wp - K.boundary(parts["w"][0][0])
    tp = wm
    tm = u.minus(i)
    lower = list(u.rows[:i])
    cells = []
    for name, row in (("v", (vm, vp)), ("w", (wm, wp)), ("t", (tm, tp))):
        arr = SteinerArray(lower + [row] + parts[name])
        ok = is_cell(K, arr)
        if not ok:
            raise NotDecomposable(f"part {name} is not a cell: {ok.witness}", (name, arr))
        cells.append(Cell(K, arr, check=False))
    v, w, t = cells
    if compose_cells(compose_cells(v, w, level), t, level) != u:
        raise NotDecomposable("parts do not recompose", (v, w, t))
    return v, w, t


def split3(K: BasedADC, u: Cell, x: str, level: int, r: Optional[Cell] = None):
    """Split u as ``v *_level w *_level t`` around the 2-generator x.

    v collects generators strictly below x (after it), t those strictly above
    (before it) and w the rest, using the precedence of the reference cell r.
    """
    _require(K)
    u = _as_2cell(u)
    r = u if r is None else _as_2cell(r)
    s2u, s1u = supports(K, u)
    s2r, s1r = supports(K, r)
    if not s1u.elems <= s1r.elems:
        raise PreconditionViolated("1-support of u is not inside that of the reference cell")
    if x not in s2r.elems:
        raise PreconditionViolated(f"{x!r} is not in the 2-support of the reference cell")
    if level == 1:
        prec = relation(K, s2r.elems, 1)
        elems = s2u.elems
    elif level == 0:
        p1 = relation(K, s2r.elems, 1)
        if any(p1.comparable(b, x) for b in s2u.elems if b != x):
            raise PreconditionViolated(f"{x!r} is level-1 comparable with another generator of u")
        prec = relation(K, s1r.elems | s2r.elems, 0)
        elems = s1u.elems | s2u.elems
    else:
        raise PreconditionViolated("level must be 0 or 1")
    cls = {}
    for b in elems:
        if b != x and prec.less(b, x):
            cls[b] = "v"
        elif b != x and prec.less(x, b):
            cls[b] = "t"
        else:
            cls[b] = "w"
    return _split_rows(K, u, cls, level)


def decompose(K: BasedADC, v: Cell, ordering: Sequence[str]) -> List[Cell]:
    """Factor v as ``v_0 *_1 v_1 *_1 ... *_1 v_k`` with v_i carrying only ordering[i].

    Each factor is peeled off by a level-1 split that keeps the current
    minimal generator as the middle class; a level-0 split then certifies
    that the factor is that generator whiskered by 1-cells.
    """
    _require(K)
    v = _as_2cell(v)
    valid = orderings(K, v)
    ordering = tuple(ordering)
    if ordering not in valid:
        raise PreconditionViolated(f"{ordering} is not an ordering of the 2-support")
    if not ordering:
        return []
    s2, s1 = supports(K, v)
    factors = []
    cur = v
    for x in ordering[:-1]:
        cls = {b: ("w" if b == x else "t") for b in cur.minus(2)}
        _, piece, cur = _split_rows(K, cur, cls, 1)
        factors.append(piece)
    factors.append(cur)
    for x, piece in zip(ordering, factors):
        if set(piece.minus(2)) != {x} or piece.minus(2)[x] != v.minus(2)[x]:
            raise NotDecomposable(f"factor for {x!r} has the wrong 2-support", piece)
        before, _, after = split3(K, piece, x, 0)
        if before.minus(2) or after.minus(2):
            raise NotDecomposable(f"factor for {x!r} is not a whiskering", piece)
    total = factors[-1]
    for piece in reversed(factors[:-1]):
        total = compose_cells(piece, total, 1)
    if total != v:
        raise NotDecomposable("factors do not recompose", factors)
    covered = set()
    for piece in factors:
        covered |= set(piece.minus(1)) | set(piece.plus(1))
    if not s1.elems <= covered:
        raise NotDecomposable("some 1-generator of the support is not covered", sorted(s1.elems - covered))
    return factors


def recompose(factors: Sequence[Cell], level: int = 1) -> Cell:
    total = factors[-1]
    for piece in reversed(factors[:-1]):
        total = compose_cells(piece, total, level)
    return total


def single_block_factorizations(K: BasedADC, v: Cell, blocks: Sequence[Cell]) -> List[Tuple[str, ...]]:
    """All ways of writing v as a *_1 string of cells with one 2-generator each.

    ``blocks`` is a pool of candidate single-generator cells (for instance all
    such cells within an enumeration bound).  Returns the generator sequences.
    """
    v = _as_2cell(v)
    by_target: Dict[tuple, List[Cell]] = {}
    for c in blocks:
        top = c.minus(2)
        if len(top) == 1 and top.total() == 1:
            by_target.setdefault((c.rows[0], c.plus(1).key()), []).append(c)
    out = []

    def rec(cur: Cell, seq):
        if not cur.minus(2):
            if cur.minus(1) == cur.plus(1):
                out.append(tuple(seq))
            return
        for c in by_target.get((cur.rows[0], cur.plus(1).key()), ()):
            (g,) = c.minus(2).support()
            if cur.minus(2)[g] < 1:
                continue
            rest_top = cur.minus(2) - c.minus(2)
            arr = SteinerArray([cur.rows[0], (cur.minus(1), c.minus(1)), (rest_top, rest_top)])
            if not is_cell(K, arr):
                continue
            rec(Cell(K, arr, check=False), seq + [g])

    rec(v, [])
    return out
