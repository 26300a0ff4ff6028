"""Graded pieces of the ideal generated by a parametrization.

Everything here is linear algebra in a single degree: the degree-k part of
an ideal is spanned by monomial multiples of the generators, syzygies of
degree d are the kernel of the multiplication map, and so on.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Optional, Sequence

from .errors import NonFiniteBasePointLocus, PreconditionViolation
from .linalg import Echelon, _integer_row, kernel_sparse, rank
from .poly import STU, MPoly, monomial_basis, monomial_index, mv_gcd, num_monomials


@dataclass(frozen=True)
class Parametrization:
    x: MPoly
    y: MPoly
    z: MPoly
    w: MPoly

    def __post_init__(self):
        for name in "xyzw":
            p = getattr(self, name)
            if p.vars != STU:
                raise ValueError(f"{name} must be a polynomial in s, t, u")
        if not any(self.gens):
            raise ValueError("all generators are zero")

    @classmethod
    def from_gens(cls, gens: Sequence[MPoly]) -> "Parametrization":
        return cls(*gens)

    @property
    def gens(self) -> tuple:
        return (self.x, self.y, self.z, self.w)

    @property
    def n(self) -> int:
        return max(g.degree() for g in self.gens)

    def permuted(self, order: Sequence[int]) -> "Parametrization":
        g = self.gens
        return Parametrization(*(g[i] for i in order))

    def combined(self, matrix) -> "Parametrization":
        """New generators ``matrix @ (x, y, z, w)``."""
        g = self.gens
        out = []
        for row in matrix:
            acc = MPoly.zero(STU)
            for c, p in zip(row, g):
                if c:
                    acc = acc + p.scale(c)
            out.append(acc)
        return Parametrization(*out)

    def image_point(self, point):
        return tuple(g(*point) for g in self.gens)


@dataclass(frozen=True)
class GradedPiece:
    degree: int
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)


# -- multiplication matrices ------------------------------------------------

def _product_row(mono, g: MPoly, k: int) -> dict:
    idx = monomial_index(k, 3)
    return {idx[tuple(a + b for a, b in zip(mono, e))]: c for e, c in g.terms.items()}


def multiplication_matrix(gens: Sequence[MPoly], d: int):
    """Rows are the coefficient vectors of ``m * g`` (generator-major, m in R_d)."""
    from .linalg import QMatrix

    degs = {g.degree() for g in gens if g}
    if len(degs) != 1:
        raise ValueError("generators must share one degree")
    n = degs.pop()
    width = num_monomials(d + n)
    rows = []
    for g in gens:
        for m in monomial_basis(d, 3):
            r = [0] * width
            for j, c in _product_row(m, g, d + n).items():
                r[j] = c
            rows.append(r)
    return QMatrix(rows)


def _gens_key(gens) -> tuple:
    return tuple(g for g in gens)


@lru_cache(maxsize=512)
def _ideal_echelon(gens: tuple, k: int) -> Echelon:
    ech = Echelon()
    for g in gens:
        if not g:
            continue
        dg = g.degree()
        if dg > k:
            continue
        for m in monomial_basis(k - dg, 3):
            ech.add(_integer_row(_product_row(m, g, k).items()))
            if ech.rank == num_monomials(k):
                return ech
    return ech


def ideal_graded_basis(gens: Sequence[MPoly], k: int) -> GradedPiece:
    """A Q-basis of the degree-k part of the ideal generated by ``gens``."""
    _check_homogeneous(gens)
    ech = _ideal_echelon(_gens_key(gens), k)
    basis = monomial_basis(k, 3)
    polys = []
    for _, row in sorted(ech.rref_rows().items()):
        polys.append(MPoly(STU, {basis[j]: c for j, c in row.items()}))
    return GradedPiece(k, tuple(polys))


def ideal_dim(gens, k: int) -> int:
    return _ideal_echelon(_gens_key(gens), k).rank


def hilbert_dim(gens: Sequence[MPoly], k: int) -> int:
    """dim (R/I)_k."""
    if k < 0:
        return 0
    return num_monomials(k) - ideal_dim(gens, k)


def in_ideal(f: MPoly, gens, k: Optional[int] = None) -> bool:
    if not f:
        return True
    k = f.degree() if k is None else k
    idx = monomial_index(k, 3)
    return _ideal_echelon(_gens_key(gens), k).contains(
        _integer_row((idx[e], c) for e, c in f.terms.items()))


def _check_homogeneous(gens):
    for g in gens:
        if not g.is_homogeneous():
            raise ValueError(f"generator {g} is not homogeneous")


def has_common_factor(gens: Sequence[MPoly]) -> bool:
    g = MPoly.zero(STU)
    for p in gens:
        g = mv_gcd(g, p)
        if g.is_constant():
            return False
    return not g.is_constant()


def basepoint_degree(gens: Sequence[MPoly]) -> int:
    """deg V(I): the stabilized value of the Hilbert function of R/I.

    Scans k = 2n-2, 2n-1, ... and stops at three consecutive equal values;
    the scan is capped at k = 4n.
    """
    _check_homogeneous(gens)
    nz = [g for g in gens if g]
    if not nz:
        raise NonFiniteBasePointLocus("zero ideal")
    if has_common_factor(nz):
        raise NonFiniteBasePointLocus("generators share a common factor", gens=[str(g) for g in nz])
    n = max(g.degree() for g in nz)
    start = max(2 * n - 2, 0)
    cap = max(4 * n, start + 2)
    values = []
    for k in range(start, cap + 1):
        v = hilbert_dim(nz, k)
        if values and v > values[-1]:
            raise NonFiniteBasePointLocus("Hilbert function increases", k=k)
        values.append(v)
        if len(values) >= 3 and values[-1] == values[-2] == values[-3]:
            return v
    raise NonFiniteBasePointLocus("Hilbert function did not stabilize", cap=cap, values=values)


# -- syzygies ------------------------------------------------------------------

def syzygies_degree(gens: Sequence[MPoly], d: int) -> GradedPiece:
    """Basis of {(a_1..a_r) in R_d^r : sum a_i g_i = 0} as tuples of forms."""
    _check_homogeneous(gens)
    if len({g.degree() for g in gens if g}) > 1:
        raise ValueError("generators must share one degree")
    if d < 0:
        return GradedPiece(d, ())
    monos = monomial_basis(d, 3)
    nm = len(monos)
    eqs: dict = {}
    for gi, g in enumerate(gens):
        if not g:
            continue
        k = d + g.degree()
        idx = monomial_index(k, 3)
        for mi, m in enumerate(monos):
            col = gi * nm + mi
            for e, c in g.terms.items():
                row = idx[tuple(a + b for a, b in zip(m, e))]
                eqs.setdefault(row, {})[col] = c
    ncols = len(gens) * nm
    kernel = kernel_sparse([eqs[r] for r in sorted(eqs)], ncols)
    basis = []
    for v in kernel:
        basis.append(tuple(MPoly(STU, {monos[j]: v[gi * nm + j] for j in range(nm) if v[gi * nm + j]})
                           for gi in range(len(gens))))
    return GradedPiece(d, tuple(basis))


def syzygy_dim(gens: Sequence[MPoly], d: int) -> int:
    """dim Syz(gens)_d via rank (no kernel basis); generators of one degree."""
    if d < 0:
        return 0
    nz = [g for g in gens if g]
    rows = []
    for g in nz:
        k = d + g.degree()
        for m in monomial_basis(d, 3):
            rows.append(_product_row(m, g, k))
    ech = Echelon()
    for r in rows:
        ech.add(_integer_row(r.items()))
    zeros = len(gens) - len(nz)
    return len(rows) - ech.rank + zeros * num_monomials(d)


def syzygy_residual(gens, syz) -> MPoly:
    acc = MPoly.zero(STU)
    for a, g in zip(syz, gens):
        acc = acc + a * g
    return acc


# -- saturation and regularity ------------------------------------------

def sat_membership(f: MPoly, gens: Sequence[MPoly], bound: Optional[int] = None) -> bool:
    """Is f in sat(gens)?  Tests f * R_k in I for k = 0..bound (default 2n)."""
    if not f:
        return True
    n = f.degree()
    bound = 2 * n if bound is None else bound
    for k in range(bound + 1):
        if all(in_ideal(f * MPoly.monomial(STU, m), gens, n + k) for m in monomial_basis(k, 3)):
            return True
    return False


def colon_dim(gens: Sequence[MPoly], k: int) -> int:
    """dim (I : <s,t,u>)_k."""
    return num_monomials(k) - _image_rank(gens, k)


def _image_rank(gens, k: int) -> int:
    """Rank of f -> (s f, t f, u f) mod I_{k+1} on R_k."""
    ech = _ideal_echelon(_gens_key(gens), k + 1)
    red = ech.rref_rows()
    idx = monomial_index(k + 1, 3)
    nmon = num_monomials(k + 1)
    out = Echelon()
    for m in monomial_basis(k, 3):
        vec = {}
        for vi in range(3):
            e = list(m)
            e[vi] += 1
            col = idx[tuple(e)]
            nf = _normal_form(red, col)
            for j, c in nf.items():
                vec[vi * nmon + j] = c
        out.add(_integer_row(vec.items()))
    return out.rank


def _normal_form(red: dict, col: int) -> dict:
    """Normal form of the unit vector e_col modulo a reduced echelon basis."""
    row = red.get(col)
    if row is None:
        return {col: 1}
    return {j: -c for j, c in row.items() if j != col}


def is_saturated_graded(gens, bound: int) -> bool:
    """(I : m)_k == I_k for every k <= bound."""
    for k in range(bound + 1):
        if colon_dim(gens, k) != ideal_dim(gens, k):
            return False
    return True


def regularity_test(gens: Sequence[MPoly], m: int) -> bool:
    """Is I m-regular?  Valid only for m >= 2n-2 and r >= 4 minimal degree-n generators."""
    degs = {g.degree() for g in gens}
    if len(degs) != 1 or -1 in degs:
        raise PreconditionViolation("generators must be nonzero forms of one degree")
    n = degs.pop()
    if len(gens) < 4:
        raise PreconditionViolation("need at least four generators")
    if rank([[c for c in _dense(g, n)] for g in gens]) != len(gens):
        raise PreconditionViolation("generators are not minimal (linearly dependent)")
    if n < 2:
        raise PreconditionViolation("need degree n >= 2")
    if m < 2 * n - 2:
        raise PreconditionViolation(f"m={m} < 2n-2={2 * n - 2}; the criterion does not apply")
    return hilbert_dim(gens, m) == basepoint_degree(gens)


def _dense(g: MPoly, n: int) -> list:
    idx = monomial_index(n, 3)
    v = [0] * len(idx)
    for e, c in g.terms.items():
        v[idx[e]] = c
    return v


# -- generic recombination -----------------------------------------------

COEFF_RANGE = 20


def generic_matrix(rng: random.Random) -> list:
    """4x4 matrix replacing x, y, z by random combinations and keeping w."""
    rows = [[rng.randint(-COEFF_RANGE, COEFF_RANGE) for _ in range(4)] for _ in range(3)]
    rows.append([0, 0, 0, 1])
    return rows


def linearly_independent(gens: Sequence[MPoly]) -> bool:
    degs = {g.degree() for g in gens}
    if len(degs) != 1 or -1 in degs:
        return False
    n = degs.pop()
    return rank([_dense(g, n) for g in gens]) == len(gens)


def generic_combine(param: Parametrization, seed) -> Parametrization:
    return param.combined(generic_combination(param, seed))


def generic_combination(param: Parametrization, seed) -> list:
    """The recombination matrix used by :func:`generic_combine` for this seed."""
    rng = random.Random(seed)
    want_independent = linearly_independent(param.gens)
    for _ in range(100):
        M = generic_matrix(rng)
        if not want_independent or linearly_independent(param.combined(M).gens):
            return M
    return M


# -- base point conditions --------------------------------------------------

@dataclass
class BPReport:
    n: int
    bp1: bool
    bp2: bool
    bp3: bool
    bp4: bool
    bp5: bool
    chosen_d: Optional[int]
    m: Optional[int]
    i: Optional[int]
    deg_V: Optional[int]
    regularity_ok: bool
    finite: bool = True
    lci: Optional[bool] = None
    sat_bound: Optional[int] = None
    quotient_dims: dict = field(default_factory=dict)
    bp5_by_degree: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def all_ok(self) -> bool:
        return all((self.bp1, self.bp2, self.bp3, self.bp4, self.bp5)) and self.chosen_d is not None

    def failed(self) -> list:
        return [name for name in ("bp1", "bp2", "bp3", "bp4", "bp5") if not getattr(self, name)]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "bp1": self.bp1, "bp2": self.bp2, "bp3": self.bp3, "bp4": self.bp4, "bp5": self.bp5,
            "chosen_d": self.chosen_d, "m": self.m, "i": self.i, "deg_V": self.deg_V,
            "regularity_ok": self.regularity_ok, "finite": self.finite,
            "lci": "unverified" if self.lci is None else self.lci,
            "sat_bound": self.sat_bound,
            "quotient_dims": {str(k): v for k, v in sorted(self.quotient_dims.items())},
            "bp5_by_degree": {str(k): v for k, v in sorted(self.bp5_by_degree.items())},
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BPReport":
        lci = d.get("lci")
        return cls(
            n=d["n"], bp1=d["bp1"], bp2=d["bp2"], bp3=d["bp3"], bp4=d["bp4"], bp5=d["bp5"],
            chosen_d=d["chosen_d"], m=d["m"], i=d["i"], deg_V=d["deg_V"],
            regularity_ok=d["regularity_ok"], finite=d["finite"],
            lci=None if lci == "unverified" else lci, sat_bound=d["sat_bound"],
            quotient_dims={int(k): v for k, v in d["quotient_dims"].items()},
            bp5_by_degree={int(k): v for k, v in d["bp5_by_degree"].items()},
            notes=list(d["notes"]),
        )


def bp_report(param: Parametrization, sat_bound: Optional[int] = None, lci: Optional[bool] = None) -> BPReport:
    """Evaluate BP1-BP5 and pick the working degree d in {n-2, n-1}.

    ``lci`` carries an external local-complete-intersection certificate (the
    saturated case certifies it through the mu-basis); None means unverified.
    """
    gens = param.gens
    n = param.n
    bound = 2 * n if sat_bound is None else sat_bound
    homog = all(g.is_homogeneous(n) and g for g in gens)
    bp1 = homog and linearly_independent(gens)
    rep = BPReport(n=n, bp1=bp1, bp2=False, bp3=False, bp4=False, bp5=False, chosen_d=None,
                   m=None, i=None, deg_V=None, regularity_ok=False, lci=lci, sat_bound=bound)
    if not homog:
        rep.notes.append("generators are not forms of one common degree")
        return rep
    if has_common_factor(gens):
        rep.finite = False
        rep.notes.append("V(I) is not finite: the generators share a common factor")
        return rep
    rep.deg_V = basepoint_degree(gens)
    rep.bp2 = lci is not False
    if lci is None:
        rep.notes.append("local complete intersection property unverified")

    candidates = []
    for d in (n - 2, n - 1):
        if d < 0:
            continue
        q = hilbert_dim(gens, d + n)
        rep.quotient_dims[d + n] = q
        if q == rep.deg_V:
            candidates.append(d)
    rep.bp3 = bool(candidates)
    rep.bp4 = sat_membership(param.w, gens[:3], bound)

    for d in candidates:
        rep.bp5_by_degree[d] = syzygy_dim(gens[:3], d) == 0
    good = [d for d in candidates if rep.bp5_by_degree[d]]
    if good:
        d = good[0]
        rep.bp5 = True
    elif candidates:
        d = candidates[0]
    else:
        d = None
    rep.chosen_d = d
    if d is not None:
        rep.m = syzygy_dim(gens, d)
        rep.i = hilbert_dim(gens, d + n)
        try:
            rep.regularity_ok = regularity_test(gens, d + n)
        except PreconditionViolation as exc:
            rep.notes.append(f"regularity test not applicable: {exc}")
    return rep


def dimension_identity_holds(gens, d: int) -> bool:
    """i + 4 C(d+2,2) == m + C(d+n+2,2) with m and i computed independently."""
    n = max(g.degree() for g in gens)
    m = len(syzygies_degree(gens, d))
    i = hilbert_dim(gens, d + n)
    return i + len(gens) * comb(d + 2, 2) == m + comb(d + n + 2, 2)
