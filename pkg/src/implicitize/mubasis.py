"""Saturated ideals: the three free generators of the syzygy module.

When I = <x, y, z, w> is saturated its syzygy module is free of rank three,
generated in degrees mu_1 <= mu_2 <= mu_3 with mu_1 + mu_2 + mu_3 = n.  The
generators form the columns of a 4x3 matrix A whose signed maximal minors
are (x, y, z, w) up to a scalar.  The ideals of 1x1 and 2x2 minors of A
cut out the loci V_1(A) and V_2(A) used to classify base points.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Optional, Sequence

from .errors import StructureError
from .ideal import Parametrization, hilbert_dim, is_saturated_graded, syzygies_degree, syzygy_dim
from .linalg import Echelon, _integer_row, det_cofactor
from .poly import ALL, STU, XYZW, MPoly, content_q, monomial_basis, monomial_index, num_monomials


@dataclass(frozen=True)
class MuBasis:
    A: tuple            # 4 rows x 3 columns of forms in s, t, u
    mu: tuple

    @property
    def columns(self) -> tuple:
        return tuple(tuple(self.A[i][j] for i in range(4)) for j in range(3))

    def plane(self, j: int) -> MPoly:
        """Column j as the moving plane a_1 X + a_2 Y + a_3 Z + a_4 W."""
        acc = MPoly.zero(ALL)
        for a, v in zip(self.columns[j], XYZW):
            if a:
                acc = acc + a.change_ambient(ALL) * MPoly.var(ALL, v)
        return acc

    @property
    def planes(self) -> tuple:
        return tuple(self.plane(j) for j in range(3))


@dataclass(frozen=True)
class MinorDiagnostics:
    v1_empty: bool
    v2_empty: bool

    @property
    def case(self) -> int:
        """1: V_1 nonempty; 2: V_2 empty (local complete intersection); 3: otherwise."""
        if not self.v1_empty:
            return 1
        return 2 if self.v2_empty else 3

    def to_dict(self) -> dict:
        return {"v1_empty": self.v1_empty, "v2_empty": self.v2_empty, "case": self.case}


def is_saturated(gens: Sequence[MPoly], bound: Optional[int] = None) -> bool:
    """(I : <s,t,u>)_k == I_k for all k <= bound (default 2n)."""
    n = max(g.degree() for g in gens)
    return is_saturated_graded(gens, 2 * n if bound is None else bound)


def _flat(syz: Sequence[MPoly], d: int) -> dict:
    idx = monomial_index(d, 3)
    nm = num_monomials(d)
    row = {}
    for gi, a in enumerate(syz):
        for e, c in a.terms.items():
            row[gi * nm + idx[e]] = c
    return row


def _multiples(col: Sequence[MPoly], k: int):
    for m in monomial_basis(k, 3):
        mono = MPoly.monomial(STU, m)
        yield tuple(a * mono for a in col)


def _primitive_column(col: Sequence[MPoly]) -> tuple:
    """Scale a syzygy to integer entries without common factor, first nonzero lead positive."""
    flat = MPoly(ALL, {})
    for a, v in zip(col, XYZW):
        flat = flat + a.change_ambient(ALL) * MPoly.var(ALL, v)
    c = content_q(flat)
    lead = next(a for a in col if a).leading()[1]
    if lead < 0:
        c = -c
    return tuple(a.scale(1 / c) for a in col)


def compute_mu_basis(gens: Sequence[MPoly]) -> MuBasis:
    """Minimal generators of Syz(gens), found degree by degree."""
    gens = tuple(gens)
    n = max(g.degree() for g in gens)
    found: list = []        # (degree, column)
    for d in range(1, n):
        ech = Echelon()
        for dj, col in found:
            for mult in _multiples(col, d - dj):
                ech.add(_integer_row(_flat(mult, d).items()))
        for syz in syzygies_degree(gens, d).basis:
            if ech.add(_integer_row(_flat(syz, d).items())):
                found.append((d, _primitive_column(syz)))
        if len(found) > 3:
            raise StructureError(f"more than three minimal syzygies (found {len(found)} by degree {d})",
                                 degrees=[dj for dj, _ in found])
        if len(found) == 3:
            break
    mu = tuple(dj for dj, _ in found)
    if len(found) != 3 or sum(mu) != n:
        raise StructureError(f"syzygy module is not free of the expected shape (degrees {list(mu)}, n={n})",
                             degrees=list(mu), n=n)
    for d in range(n + 3):
        expected = sum(comb(d - m + 2, 2) for m in mu if d >= m)
        got = syzygy_dim(gens, d)
        if got != expected:
            raise StructureError(f"dim Syz_{d} = {got}, a free module of degrees {list(mu)} gives {expected}",
                                 degree=d, got=got, expected=expected)
    A = tuple(tuple(found[j][1][i] for j in range(3)) for i in range(4))
    return MuBasis(A=A, mu=mu)


def signed_minors(A) -> tuple:
    """(Delta_1, .., Delta_4), Delta_k = (-1)^(k-1) det(A without row k)."""
    out = []
    for k in range(4):
        det = det_cofactor([list(r) for i, r in enumerate(A) if i != k])
        out.append(det if k % 2 == 0 else -det)
    return tuple(out)


def hilbert_burch_verify(mb: MuBasis, param: Parametrization):
    """(ok, c) with signed minors of A equal to c * (x, y, z, w)."""
    minors = signed_minors(mb.A)
    scalar = None
    for m, g in zip(minors, param.gens):
        if not g:
            if m:
                return False, None
            continue
        e, c = g.leading()
        ratio = Fraction(m.terms.get(e, 0)) / Fraction(c)
        if not ratio or m != g.scale(ratio):
            return False, None
        if scalar is not None and ratio != scalar:
            return False, None
        scalar = ratio
    if scalar is None:
        return False, None
    return True, scalar.numerator if scalar.denominator == 1 else scalar


def minors(A, size: int) -> list:
    rows, cols = len(A), len(A[0])
    out = []
    for ri in combinations(range(rows), size):
        for ci in combinations(range(cols), size):
            det = det_cofactor([[A[i][j] for j in ci] for i in ri])
            if det:
                out.append(det)
    return out


def minor_variety_empty(A, size: int) -> bool:
    """Do the size x size minors of A have no common zero in P^2?

    With e the largest minor degree, the degree-e part of the minor ideal has
    the same zero set and, when that set is empty, contains a regular
    sequence of three forms of degree e.  Their ideal fills every degree from
    3e - 2 on, so a single Hilbert function value there decides emptiness.
    """
    ms = minors(A, size)
    if not ms:
        return False
    if any(m.is_constant() for m in ms):
        return True
    e = max(m.degree() for m in ms)
    return hilbert_dim(ms, 3 * e - 2) == 0


def minor_diagnostics(mb: MuBasis) -> MinorDiagnostics:
    v1 = minor_variety_empty(mb.A, 1)
    v2 = minor_variety_empty(mb.A, 2)
    return MinorDiagnostics(v1_empty=v1, v2_empty=v2)


def expected_degree(n: int, mu: Sequence[int]) -> Fraction:
    """deg V(I) = (n^2 + mu_1^2 + mu_2^2 + mu_3^2) / 2 for a saturated ideal."""
    return Fraction(n * n + sum(m * m for m in mu), 2)
