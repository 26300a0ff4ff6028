"""Exact linear algebra over Q.

Elimination runs on sparse integer rows (``{column: int}``) with content
removal after every update, which is much cheaper in pure Python than
``Fraction`` arithmetic.  Results that need rational values (kernels,
solutions) are normalized to ``Fraction``/``int`` at the end.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .poly import MPoly, NotDivisible, _norm, divide_exact


@dataclass(frozen=True)
class QMatrix:
    rows: tuple

    def __init__(self, rows: Iterable[Sequence]):
        rows = tuple(tuple(_norm(c) for c in r) for r in rows)
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rows)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def transpose(self) -> "QMatrix":
        return QMatrix(zip(*self.rows)) if self.rows else QMatrix([])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def apply(self, vec: Sequence) -> list:
        return [_norm(sum(a * b for a, b in zip(r, vec))) for r in self.rows]


# -- sparse integer rows -------------------------------------------------

def _integer_row(entries) -> dict:
    """Scale a sparse rational row to a primitive integer row."""
    items = [(j, c) for j, c in entries if c]
    if not items:
        return {}
    den = 1
    for _, c in items:
        if isinstance(c, Fraction):
            den = den * c.denominator // gcd(den, c.denominator)
    row = {j: int(c * den) for j, c in items}
    return _primitive(row)


def _primitive(row: dict) -> dict:
    g = gcd(*row.values())
    if g > 1:
        return {j: c // g for j, c in row.items()}
    return row


def sparse_row(vec: Sequence) -> dict:
    return _integer_row(enumerate(vec))


class Echelon:
    """Incremental row echelon form.

    Each stored row has its pivot at its smallest column; ``reduce`` returns
    a normal form (up to a nonzero scalar) free of pivot columns.
    """

    def __init__(self):
        self.pivots: dict = {}

    def __len__(self):
        return len(self.pivots)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        row = dict(row)
        pivots = self.pivots
        while row:
            hits = [j for j in row if j in pivots]
            if not hits:
                break
            c = min(hits)
            prow = pivots[c]
            a, b = prow[c], row[c]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {j: v * a for j, v in row.items()} if a != 1 else dict(row)
            for j, v in prow.items():
                w = new.get(j, 0) - b * v
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            row = _primitive(new) if new else new
        return row

    def add(self, row: dict) -> bool:
        """Insert a row; returns False when it is dependent on the stored rows."""
        r = self.reduce(row)
        if not r:
            return False
        self.pivots[min(r)] = r
        return True

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    def rref_rows(self) -> dict:
        """Fully reduced rows with pivot entries equal to 1 (``{pivot: {col: value}}``)."""
        order = sorted(self.pivots)
        rows = {c: dict(self.pivots[c]) for c in order}
        for c in reversed(order):
            prow = rows[c]
            for c2 in order:
                if c2 >= c:
                    break
                r = rows[c2]
                b = r.get(c)
                if not b:
                    continue
                a = prow[c]
                g = gcd(a, b)
                a, b = a // g, b // g
                new = {j: v * a for j, v in r.items()}
                for j, v in prow.items():
                    w = new.get(j, 0) - b * v
                    if w:
                        new[j] = w
                    else:
                        new.pop(j, None)
                rows[c2] = _primitive(new)
        out = {}
        for c in order:
            r = rows[c]
            p = r[c]
            out[c] = {j: _norm(Fraction(v, p)) for j, v in r.items()}
        return out


def rank(rows: Iterable[Sequence]) -> int:
    ech = Echelon()
    for r in rows:
        ech.add(sparse_row(r))
    return ech.rank


def rref(M: QMatrix):
    """(rows of the reduced echelon form as dense lists, pivot columns)."""
    ech = Echelon()
    for r in M.rows:
        ech.add(sparse_row(r))
    red = ech.rref_rows()
    piv = sorted(red)
    dense = []
    for c in piv:
        v = [0] * M.ncols
        for j, x in red[c].items():
            v[j] = x
        dense.append(v)
    return dense, piv


def _kernel_from_rref(red: dict, ncols: int) -> list:
    free = [j for j in range(ncols) if j not in red]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for c, row in red.items():
            x = row.get(f)
            if x:
                v[c] = _norm(-x)
        basis.append(v)
    return basis


def rank_kernel(M: QMatrix):
    """Rank of M and a basis of its right null space {v : Mv = 0}."""
    ech = Echelon()
    for r in M.rows:
        ech.add(sparse_row(r))
    red = ech.rref_rows()
    return len(red), _kernel_from_rref(red, M.ncols)


def kernel_sparse(rows: Iterable[dict], ncols: int) -> list:
    """Right null space of a matrix given as sparse rational rows."""
    ech = Echelon()
    for r in rows:
        ech.add(_integer_row(r.items()))
    return _kernel_from_rref(ech.rref_rows(), ncols)


def solve_columns(columns: Sequence[dict], targets: Sequence[dict]):
    """Solve ``sum_k c_k columns[k] = target`` exactly for every target.

    Columns and targets are sparse vectors ``{row: value}``.  Returns one
    coefficient list per target, or None for targets outside the span.
    The solution is unique when the columns are independent; otherwise the
    free coefficients are set to zero.
    """
    ncol = len(columns)
    # rows of the augmented system [A | B]
    eqs: dict = {}
    for k, col in enumerate(columns):
        for i, v in col.items():
            if v:
                eqs.setdefault(i, {})[k] = v
    for t, tgt in enumerate(targets):
        for i, v in tgt.items():
            if v:
                eqs.setdefault(i, {})[ncol + t] = v
    ech = Echelon()
    for i in sorted(eqs):
        ech.add(_integer_row(eqs[i].items()))
    red = ech.rref_rows()
    out = []
    for t in range(len(targets)):
        if (ncol + t) in red:
            out.append(None)
            continue
        sol = [0] * ncol
        for c, row in red.items():
            if c < ncol:
                sol[c] = row.get(ncol + t, 0)
        out.append(sol)
    return out


# -- determinants ----------------------------------------------------------

def det_q(M: QMatrix):
    """Determinant over Q by Gaussian elimination."""
    n = M.nrows
    if n != M.ncols:
        raise ValueError("square matrix required")
    a = [[Fraction(x) for x in r] for r in M.rows]
    det = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k]), None)
        if p is None:
            return 0
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] / a[k][k]
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return _norm(det)


def det_bareiss(M):
    """Exact determinant of a square QMatrix or a square list of MPoly rows.

    Polynomial matrices use fraction-free Bareiss elimination with row swaps;
    every division in the schedule is exact.
    """
    if isinstance(M, QMatrix):
        return det_q(M)
    rows = [list(r) for r in M]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("square matrix required")
    if n == 0:
        return 1
    vars = next((e.vars for r in rows for e in r if isinstance(e, MPoly)), None)
    if vars is None:
        return det_q(QMatrix(rows))
    a = [[e if isinstance(e, MPoly) else MPoly.const(vars, e) for e in r] for r in rows]
    sign = 1
    prev = MPoly.const(vars, 1)
    for k in range(n - 1):
        if not a[k][k]:
            p = next((i for i in range(k + 1, n) if a[i][k]), None)
            if p is None:
                return MPoly.zero(vars)
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                try:
                    a[i][j] = divide_exact(num, prev)
                except NotDivisible as exc:  # pragma: no cover - would be a bug
                    raise ArithmeticError("inexact Bareiss division") from exc
            a[i][k] = MPoly.zero(vars)
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign == 1 else -d


def det_cofactor(rows):
    """Laplace expansion; used as an independent check in tests."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if not rows[0][j]:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * det_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total
