"""Cells of the strict omega-category attached to a based complex.

An n-cell is a coherent array ``((x_0^-, x_0^+), ..., (x_n, x_n))`` of
nonnegative chains with ``d x_i^a = x_{i-1}^+ - x_{i-1}^-``.
"""
from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .adc import BasedADC, Chain, SteinerArray, Verdict
from .errors import BadDimension, IndexOutOfRange, NotACell, NotComposable


def _sign(sign) -> int:
    if sign in ("-", -1, "minus", "source"):
        return 0
    if sign in ("+", 1, "plus", "target"):
        return 1
    raise ValueError(f"bad sign {sign!r}")


def is_cell(K: BasedADC, a: SteinerArray) -> Verdict:
    """Check positivity, boundary compatibility, top equality and coherence."""
    rows = a.rows
    for i, (m, p) in enumerate(rows):
        for x in (m, p):
            for b in x:
                if b not in K or K.degree(b) != i:
                    return Verdict(False, f"row {i} mentions {b!r}, not a degree-{i} generator")
            if not x.is_positive():
                return Verdict(False, f"row {i} has a negative coefficient")
    n = a.dim
    if rows[n][0] != rows[n][1]:
        return Verdict(False, "top row entries differ")
    for i in range(1, n + 1):
        diff = rows[i - 1][1] - rows[i - 1][0]
        for s in (0, 1):
            if K.boundary(rows[i][s]) != diff:
                return Verdict(False, f"boundary of row {i} ({'-+'[s]}) is not x_{i-1}^+ - x_{i-1}^-")
    if K.augment(rows[0][0]) != 1 or K.augment(rows[0][1]) != 1:
        return Verdict(False, "not coherent: augmentation of row 0 is not 1")
    return Verdict(True)


class Cell:
    """A coherent array over a fixed complex."""

    __slots__ = ("complex", "array")

    def __init__(self, complex: BasedADC, array: SteinerArray, check: bool = True):
        if check:
            v = is_cell(complex, array)
            if not v:
                raise NotACell(v.witness, array)
        self.complex = complex
        self.array = array

    @property
    def dim(self) -> int:
        return self.array.dim

    @property
    def rows(self):
        return self.array.rows

    def minus(self, i: int) -> Chain:
        return self.array.rows[i][0]

    def plus(self, i: int) -> Chain:
        return self.array.rows[i][1]

    def key(self):
        return self.array.key()

    def __eq__(self, other):
        if not isinstance(other, Cell):
            return NotImplemented
        return self.array == other.array and (
            self.complex is other.complex or self.complex == other.complex)

    def __hash__(self):
        return hash(self.array)

    def __repr__(self):
        body = ", ".join(f"({m}, {p})" for m, p in self.array.rows)
        return f"Cell({body})"

    def to_json(self):
        return self.array.to_json()


def atom_cell(K: BasedADC, b: str) -> Cell:
    return Cell(K, K.atom(b))


def cell_from_rows(K: BasedADC, rows) -> Cell:
    """Convenience: rows as pairs of dicts (or chains)."""
    out = []
    for i, (m, p) in enumerate(rows):
        out.append((m if isinstance(m, Chain) else Chain(i, m),
                    p if isinstance(p, Chain) else Chain(i, p)))
    return Cell(K, SteinerArray(out))


def boundary(c: Cell, k: int, sign) -> Cell:
    """``d^sign_k``: keep rows below k and put ``x_k^sign`` on top."""
    if not 0 <= k < c.dim:
        raise IndexOutOfRange(f"boundary index {k} for a {c.dim}-cell")
    x = c.rows[k][_sign(sign)]
    return Cell(c.complex, SteinerArray(c.rows[:k] + ((x, x),)), check=False)


def compose_cells(x: Cell, y: Cell, k: int) -> Cell:
    """``x *_k y``, defined when the k-source of x is the k-target of y (x after y)."""
    n = x.dim
    if y.dim != n:
        raise BadDimension(f"composing a {n}-cell with a {y.dim}-cell")
    if not 0 <= k < n:
        raise IndexOutOfRange(f"composition index {k} for {n}-cells")
    for i in range(k):
        if x.rows[i] != y.rows[i]:
            raise NotComposable(f"row {i} differs", i)
    if x.rows[k][0] != y.rows[k][1]:
        raise NotComposable(f"source of x at level {k} is not the target of y", k)
    rows = list(x.rows[:k])
    rows.append((y.rows[k][0], x.rows[k][1]))
    for i in range(k + 1, n + 1):
        rows.append((x.rows[i][0] + y.rows[i][0], x.rows[i][1] + y.rows[i][1]))
    return Cell(x.complex, SteinerArray(rows), check=False)


def composable(x: Cell, y: Cell, k: int) -> bool:
    return (x.dim == y.dim and k < x.dim and x.rows[:k] == y.rows[:k]
            and x.rows[k][0] == y.rows[k][1])


def unit_cell(x: Cell, m: int) -> Cell:
    if m < x.dim:
        raise BadDimension(f"cannot pad a {x.dim}-cell to dimension {m}")
    rows = list(x.rows)
    for i in range(x.dim + 1, m + 1):
        z = Chain(i)
        rows.append((z, z))
    return Cell(x.complex, SteinerArray(rows), check=False)


def cell_class(c: Cell) -> Chain:
    return c.array.top


# ---------------------------------------------------------------------------
# enumeration


class _Solver:
    """Nonnegative solutions y of ``d y = target`` with ``total(y) <= bound``."""

    def __init__(self, K: BasedADC, bound: int):
        self.K = K
        self.bound = bound
        self._memo: Dict[tuple, List[Chain]] = {}
        self._gens: Dict[int, tuple] = {}

    def _prep(self, deg):
        if deg not in self._gens:
            gens = self.K.ids(deg)
            bds = [self.K.d(g).as_dict() for g in gens]
            last_pos: Dict[str, int] = {}
            last_neg: Dict[str, int] = {}
            for j, bd in enumerate(bds):
                for z, v in bd.items():
                    if v > 0:
                        last_pos[z] = j
                    else:
                        last_neg[z] = j
            self._gens[deg] = (gens, bds, last_pos, last_neg)
        return self._gens[deg]

    def points(self) -> List[Chain]:
        """Degree-0 chains of augmentation 1 within the bound."""
        key = ("points",)
        if key in self._memo:
            return self._memo[key]
        gens = self.K.ids(0)
        es = [self.K.e(g) for g in gens]
        out = []

        neg_after = [any(e < 0 for e in es[j:]) for j in range(len(gens) + 1)]

        def rec(j, budget, acc, coeffs):
            if acc > 1 and not neg_after[j]:
                return
            if j == len(gens):
                if acc == 1:
                    out.append(Chain(0, dict(coeffs)))
                return
            for c in range(budget + 1):
                if c:
                    coeffs.append((gens[j], c))
                rec(j + 1, budget - c, acc + c * es[j], coeffs)
                if c:
                    coeffs.pop()

        rec(0, self.bound, 0, [])
        out.sort()
        self._memo[key] = out
        return out

    def solve(self, deg: int, target: Chain) -> List[Chain]:
        key = (deg, target.key())
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        gens, bds, last_pos, last_neg = self._prep(deg)
        out: List[Chain] = []
        n = len(gens)
        residual = target.as_dict()
        coeffs: List[Tuple[str, int]] = []

        def feasible(idx):
            for z, r in residual.items():
                if r > 0 and last_pos.get(z, -1) < idx:
                    return False
                if r < 0 and last_neg.get(z, -1) < idx:
                    return False
            return True

        def rec(idx, budget):
            if idx == n:
                if not residual:
                    out.append(Chain(deg, dict(coeffs)))
                return
            if not feasible(idx):
                return
            bd = bds[idx]
            rec(idx + 1, budget)
            c = 0
            while c < budget:
                c += 1
                for z, v in bd.items():
                    r = residual.get(z, 0) - v
                    if r:
                        residual[z] = r
                    else:
                        del residual[z]
                coeffs.append((gens[idx], c))
                rec(idx + 1, budget - c)
                coeffs.pop()
            for z, v in bd.items():
                r = residual.get(z, 0) + c * v
                if r:
                    residual[z] = r
                else:
                    del residual[z]

        rec(0, self.bound)
        out.sort()
        self._memo[key] = out
        return out


def enumerate_cells(K: BasedADC, dim: int, bound: Optional[int] = None) -> List[Cell]:
    """All n-cells whose chains each have coefficient sum at most ``bound``.

    The default bound is the size of the basis.  Output is in lexicographic
    order of rows and free of duplicates.
    """
    if dim < 0:
        raise BadDimension("negative dimension")
    if bound is None:
        bound = len(K)
    solver = _Solver(K, bound)
    out: List[Cell] = []

    def rec(rows):
        i = len(rows)
        m, p = rows[-1]
        sols = solver.solve(i, p - m)
        if i == dim:
            for s in sols:
                out.append(Cell(K, SteinerArray(rows + [(s, s)]), check=False))
            return
        for sm in sols:
            for sp in sols:
                rec(rows + [(sm, sp)])

    pts = solver.points()
    if dim == 0:
        return [Cell(K, SteinerArray([(x, x)]), check=False) for x in pts]
    for a in pts:
        for b in pts:
            rec([(a, b)])
    return out


def cell_solver(K: BasedADC, bound: int) -> _Solver:
    return _Solver(K, bound)
