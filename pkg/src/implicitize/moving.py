"""The extended method of moving quadrics.

Given x, y, z, w satisfying the base point conditions and a working degree
d, the square matrix built from all moving planes of degree d plus enough
moving quadrics has the implicit equation as its determinant.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Optional, Sequence

from .errors import (BP5Violation, InequalityViolated, NormalizationFailure, PreconditionViolation,
                     RankDeficient, Unsolvable, ZeroDeterminant)
from .ideal import Parametrization, _product_row, bp_report, syzygies_degree
from .linalg import Echelon, QMatrix, _integer_row, det_bareiss, solve_columns
from .poly import ALL, STU, XYZW, MPoly, monomial_basis, monomial_index, normalize, num_monomials

# quadratic monomials in X, Y, Z, W used for the MQ columns
PURE_QUADRICS = ((2, 0, 0, 0), (0, 2, 0, 0), (0, 0, 2, 0), (1, 1, 0, 0), (1, 0, 1, 0), (0, 1, 1, 0))
W_QUADRICS = ((1, 0, 0, 1), (0, 1, 0, 1), (0, 0, 1, 1))
W_SQUARED = (0, 0, 0, 2)


def slot_monomial(ij, d):
    i, j = ij
    return (i, j, d - i - j)


def slot_of(mono):
    return (mono[0], mono[1])


@dataclass(frozen=True)
class IndexSetIw:
    d: int
    members: tuple

    def __contains__(self, ij):
        return tuple(ij) in self.members

    def __len__(self):
        return len(self.members)

    def complement(self) -> tuple:
        return tuple(slot_of(m) for m in monomial_basis(self.d, 3) if slot_of(m) not in self.members)


@dataclass(frozen=True)
class MovingSurface:
    poly: MPoly
    stu_degree: int
    xyzw_degree: int

    def substituted(self, param: Parametrization) -> MPoly:
        """Result of (X, Y, Z, W) <- (x, y, z, w); zero for a genuine moving surface."""
        acc = MPoly.zero(STU)
        for e, coeff in self.poly.split(XYZW).items():
            term = coeff
            for g, k in zip(param.gens, e):
                if k:
                    term = term * g ** k
            acc = acc + term
        return acc

    def row(self) -> list:
        """Coefficients (polynomials in X, Y, Z, W) against monomial_basis(d, 3)."""
        parts = self.poly.split(STU)
        return [parts.get(m, MPoly.zero(XYZW)) for m in monomial_basis(self.stu_degree, 3)]


@dataclass
class MMatrix:
    rows: list          # quadrics first, then planes
    slots: list         # (i, j) slot of each row, parallel to ``rows``
    d: int

    def as_pmatrix(self) -> list:
        """Rows sorted so that row k is the slot of column k (W on the diagonal)."""
        order = {slot_of(m): k for k, m in enumerate(monomial_basis(self.d, 3))}
        ranked = sorted(zip(self.slots, self.rows), key=lambda sr: order[sr[0]])
        return [r.row() for _, r in ranked]

    @property
    def size(self) -> int:
        return len(self.rows)


@dataclass
class MovingOutcome:
    P: MPoly
    det: MPoly
    d: int
    Iw: IndexSetIw
    matrix: MMatrix
    notes: list = field(default_factory=list)


def _plane_poly(coeffs: Sequence[MPoly]) -> MPoly:
    acc = MPoly.zero(ALL)
    for a, v in zip(coeffs, XYZW):
        if a:
            acc = acc + a.change_ambient(ALL) * MPoly.var(ALL, v)
    return acc


def _products(param: Parametrization, d: int, which: Sequence[int]):
    gens = param.gens
    n = param.n
    for gi in which:
        for m in monomial_basis(d, 3):
            yield gi, m, _product_row(m, gens[gi], d + n)


def build_index_set(param: Parametrization, d: int, force: bool = False):
    """Greedy column scan; returns (I_w, MP_Iw).

    The columns m*x, m*y, m*z (m in R_d) start the independent set; each m*w
    is then appended when it raises the rank and its slot goes into I_w
    otherwise.  w-columns are scanned in graded-lex descending order of m.
    """
    ech = Echelon()
    kept = []
    for _, m, row in _products(param, d, (0, 1, 2)):
        if ech.add(_integer_row(row.items())):
            kept.append(row)
        elif not force:
            raise BP5Violation(f"the columns s^i t^j u^(d-i-j) (x, y, z) are dependent in degree {d}", d=d)
    members = []
    for _, m, row in _products(param, d, (3,)):
        if ech.add(_integer_row(row.items())):
            kept.append(row)
        else:
            members.append(slot_of(m))
    width = num_monomials(d + param.n)
    dense = []
    for row in kept:
        v = [0] * width
        for j, c in row.items():
            v[j] = c
        dense.append(v)
    return IndexSetIw(d, tuple(members)), QMatrix(dense)


def _mq_columns(param: Parametrization, Iw: IndexSetIw):
    """Sparse columns of MQ_Iw with labels (slot monomial, XYZW quadratic exponent)."""
    gens = param.gens
    d, n = Iw.d, param.n
    k = d + 2 * n
    idx = monomial_index(k, 3)
    cache = {}

    def prod(e):
        if e not in cache:
            acc = MPoly.const(STU, 1)
            for g, a in zip(gens, e):
                if a:
                    acc = acc * g ** a
            cache[e] = acc
        return cache[e]

    cols, labels = [], []
    for m in monomial_basis(d, 3):
        quads = PURE_QUADRICS + (() if slot_of(m) in Iw else W_QUADRICS)
        for q in quads:
            col = {}
            for e, c in prod(q).terms.items():
                col[idx[tuple(a + b for a, b in zip(m, e))]] = c
            cols.append(col)
            labels.append((m, q))
    return cols, labels, prod


def mq_expected_rank(param: Parametrization, Iw: IndexSetIw, i: int) -> int:
    d, n = Iw.d, param.n
    return 3 * comb(d + n + 2, 2) - 3 * comb(d + 2, 2) - 3 * i


def build_mq_matrix(param: Parametrization, Iw: IndexSetIw) -> QMatrix:
    """Coefficient matrix of MQ_Iw (one column per product); must have full column rank."""
    cols, _, _ = _mq_columns(param, Iw)
    ech = Echelon()
    for c in cols:
        ech.add(_integer_row(c.items()))
    if ech.rank != len(cols):
        raise RankDeficient(f"MQ_Iw has rank {ech.rank} < {len(cols)} columns", rank=ech.rank, cols=len(cols))
    height = num_monomials(Iw.d + 2 * param.n)
    rows = [[0] * len(cols) for _ in range(height)]
    for j, c in enumerate(cols):
        for i, v in c.items():
            rows[i][j] = v
    return QMatrix(rows)


def solve_quadrics(param: Parametrization, Iw: IndexSetIw, slots: Optional[Sequence] = None) -> list:
    """Moving quadrics Q_ij = s^i t^j u^(d-i-j) W^2 + (terms without W^2)."""
    d = Iw.d
    slots = Iw.complement() if slots is None else [tuple(s) for s in slots]
    if not slots:
        return []
    cols, labels, prod = _mq_columns(param, Iw)
    k = d + 2 * param.n
    idx = monomial_index(k, 3)
    w2 = prod(W_SQUARED)
    targets = []
    for ij in slots:
        m = slot_monomial(ij, d)
        targets.append({idx[tuple(a + b for a, b in zip(m, e))]: c for e, c in w2.terms.items()})
    sols = solve_columns(cols, targets)
    out = []
    for ij, sol in zip(slots, sols):
        if sol is None:
            raise Unsolvable(f"s^i t^j u^(d-i-j) w^2 is not in the span of MQ_Iw for slot {ij}", slot=list(ij))
        m = slot_monomial(ij, d)
        q = MPoly.monomial(ALL, tuple(m) + W_SQUARED)
        terms = dict(q.terms)
        for c, (mm, quad) in zip(sol, labels):
            if c:
                e = tuple(mm) + quad
                terms[e] = terms.get(e, 0) - c
        out.append(MovingSurface(MPoly(ALL, terms), d, 2))
    return out


def solve_quadric(param: Parametrization, Iw: IndexSetIw, ij) -> MovingSurface:
    if tuple(ij) in Iw:
        raise ValueError(f"slot {ij} belongs to I_w; it carries a moving plane")
    return solve_quadrics(param, Iw, [ij])[0]


def _normalized_planes(param: Parametrization, d: int, pivot_slots: Sequence, strict: bool):
    """Basis of Syz(I)_d, row-reduced on the W-coefficients at ``pivot_slots``.

    Returns (planes, slots): one plane per pivot slot with W-coefficient 1
    there and 0 at the other pivot slots, followed (non-strict mode only) by
    any remaining planes, whose slot entry is None.
    """
    basis = syzygies_degree(param.gens, d).basis
    monos = monomial_basis(d, 3)
    midx = monomial_index(d, 3)
    npiv = len(pivot_slots)
    rows = []
    for syz in basis:
        row = {}
        for k, ij in enumerate(pivot_slots):
            c = syz[3].terms.get(slot_monomial(ij, d))
            if c:
                row[k] = c
        for gi, a in enumerate(syz):
            for e, c in a.terms.items():
                row[npiv + gi * len(monos) + midx[e]] = c
        rows.append(row)
    ech = Echelon()
    for r in rows:
        ech.add(_integer_row(r.items()))
    red = ech.rref_rows()
    if strict and (len(basis) != npiv or any(k not in red for k in range(npiv))):
        raise NormalizationFailure("W-block of the moving planes restricted to I_w is singular",
                                   m=len(basis), iw=npiv)
    planes, slots = [], []
    for piv in sorted(red):
        row = red[piv]
        coeffs = []
        for gi in range(4):
            off = npiv + gi * len(monos)
            coeffs.append(MPoly(STU, {monos[j]: row[off + j] for j in range(len(monos)) if row.get(off + j)}))
        planes.append(MovingSurface(_plane_poly(coeffs), d, 1))
        slots.append(pivot_slots[piv] if piv < npiv else None)
    return planes, slots


def solve_planes(param: Parametrization, Iw: IndexSetIw) -> list:
    """Moving planes P_ij = s^i t^j u^(d-i-j) W + (no W at other I_w slots), one per slot of I_w."""
    planes, _ = _normalized_planes(param, Iw.d, Iw.members, strict=True)
    return planes


def assemble(param: Parametrization, d: int, force: bool = False) -> tuple:
    """(I_w, MMatrix).  ``force`` skips the base point conditions (diagnostic runs)."""
    size = num_monomials(d)
    Iw, _ = build_index_set(param, d, force=force)
    if not force:
        planes = solve_planes(param, Iw)
        plane_slots = list(Iw.members)
        quad_slots = list(Iw.complement())
    else:
        m = len(syzygies_degree(param.gens, d))
        if m > size:
            raise InequalityViolated(f"{m} moving planes do not fit in a {size}x{size} matrix", m=m, size=size)
        # pivot on every slot whose W-column can be normalized
        planes, slots = _normalized_planes(param, d, [slot_of(x) for x in monomial_basis(d, 3)], strict=False)
        used = {s for s in slots if s is not None}
        free = [slot_of(x) for x in monomial_basis(d, 3) if slot_of(x) not in used]
        plane_slots = []
        for s in slots:
            plane_slots.append(s if s is not None else free.pop(0))
        quad_slots = free
        Iw = IndexSetIw(d, tuple(s for s in slots if s is not None))
    quads = solve_quadrics(param, Iw, quad_slots) if quad_slots else []
    M = MMatrix(rows=quads + planes, slots=list(quad_slots) + plane_slots, d=d)
    return Iw, M


def assemble_and_det(param: Parametrization, d: Optional[int] = None, force: bool = False,
                     report=None) -> MovingOutcome:
    """Build the matrix of moving planes and quadrics and return its normalized determinant."""
    if d is None or not force:
        report = report or bp_report(param)
        if not force and not report.all_ok:
            raise PreconditionViolation("base point conditions fail: " + ", ".join(report.failed()),
                                        failed=report.failed())
        d = report.chosen_d if d is None else d
        if d is None:
            raise PreconditionViolation("no working degree d in {n-2, n-1}")
    Iw, M = assemble(param, d, force=force)
    det = det_bareiss(M.as_pmatrix())
    if not det:
        raise ZeroDeterminant(
            "det of the moving-surface matrix is identically zero (BP5 failure mode: "
            "some row of the matrix does not contain W)", d=d)
    P = normalize(det)
    notes = []
    if report is not None and report.i is not None and report.chosen_d == d:
        n2i = param.n ** 2 - report.i
        if P.degree() != n2i:
            notes.append(f"degree {P.degree()} differs from n^2 - i = {n2i}")
        if (0, 0, 0, n2i) not in P.terms:
            notes.append(f"det lacks the term W^{n2i}")
    return MovingOutcome(P=P, det=det, d=d, Iw=Iw, matrix=M, notes=notes)
