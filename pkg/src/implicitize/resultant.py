"""Homogeneous resultant of three ternary forms and extraction of P^h.

For forms of degrees d1, d2, d3 in s, t, u the critical degree is
nu = d1 + d2 + d3 - 2.  Each monomial of degree nu is assigned to the first
variable whose exponent reaches the corresponding d_i, and its row holds
the coefficients of (monomial / var^d_i) * f_i.  The resultant is
det(D) / det(D') where D' keeps the monomials reduced in two or more
variables.  Rows and columns share one monomial order, which makes
Res(s^d1, t^d2, u^d3) = 1.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Optional, Sequence

from .errors import (DenominatorVanishes, IdenticallyZero, InterpolationSingular, ReassemblyMismatch,
                     ZeroWithoutCertificate)
from .ideal import hilbert_dim
from .linalg import QMatrix, det_bareiss, det_q
from .poly import (STU, XYZW, MPoly, divide_exact, divides, monomial_basis, monomial_index, mv_gcd,
                   normalize, partial_derivative, linear_form)

MAX_COORDINATE_RETRIES = 5


# -- specialized resultant -------------------------------------------------

def _macaulay_matrices(forms, degrees):
    nu = sum(degrees) - 2
    monos = monomial_basis(nu, 3)
    idx = monomial_index(nu, 3)
    rows = []
    nonreduced = []
    for k, m in enumerate(monos):
        which = next(i for i in range(3) if m[i] >= degrees[i])
        shift = list(m)
        shift[which] -= degrees[which]
        row = [0] * len(monos)
        for e, c in forms[which].terms.items():
            row[idx[tuple(a + b for a, b in zip(shift, e))]] = c
        rows.append(row)
        if sum(1 for i in range(3) if m[i] >= degrees[i]) >= 2:
            nonreduced.append(k)
    sub = [[rows[i][j] for j in nonreduced] for i in nonreduced]
    return rows, sub


def _ratio(forms, degrees):
    rows, sub = _macaulay_matrices(forms, degrees)
    den = det_q(QMatrix(sub)) if sub else 1
    if not den:
        return None
    return Fraction(det_q(QMatrix(rows))) / den


def linear_change(form: MPoly, G) -> MPoly:
    """form(G (s, t, u)^T)."""
    images = [MPoly(STU, {(1, 0, 0): G[i][0], (0, 1, 0): G[i][1], (0, 0, 1): G[i][2]}) for i in range(3)]
    return form.compose(images)


def _det3(G):
    return det_q(QMatrix(G))


def macaulay_resultant_specialized(f: MPoly, g: MPoly, h: MPoly, degrees: Optional[Sequence[int]] = None,
                                   rng: Optional[random.Random] = None):
    """Res(f, g, h) for forms with rational coefficients."""
    forms = (f, g, h)
    if degrees is None:
        degrees = tuple(p.degree() for p in forms)
    degrees = tuple(degrees)
    for p, d in zip(forms, degrees):
        if p and not p.is_homogeneous(d):
            raise ValueError(f"{p} is not a form of degree {d}")
    if not all(forms):
        return 0
    if degrees == (1, 1, 1):
        return det_q(QMatrix([[p.terms.get(e, 0) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))] for p in forms]))
    r = _ratio(forms, degrees)
    if r is not None:
        return _norm(r)
    # a common root makes the resultant zero; I_nu = R_nu exactly when there is none
    if hilbert_dim(list(forms), sum(degrees) - 2) > 0:
        return 0
    rng = rng or random.Random(0)
    power = degrees[0] * degrees[1] * degrees[2]
    for _ in range(MAX_COORDINATE_RETRIES):
        G = [[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)]
        dg = _det3(G)
        if not dg:
            continue
        r = _ratio(tuple(linear_change(p, G) for p in forms), degrees)
        if r is not None:
            return _norm(r / Fraction(dg) ** power)
    raise DenominatorVanishes("Macaulay denominator vanished after coordinate changes",
                              retries=MAX_COORDINATE_RETRIES)


def _norm(c):
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


# -- symbolic resultant ----------------------------------------------------

@dataclass(frozen=True)
class ResultantProblem:
    p: MPoly
    q: MPoly
    r: MPoly
    mu: tuple

    def __post_init__(self):
        for form, m in zip(self.forms, self.mu):
            for e, part in form.split(XYZW).items():
                if sum(e) != 1 or not part.is_homogeneous(m):
                    raise ValueError(f"form is not of bidegree ({m}, 1)")

    @property
    def forms(self) -> tuple:
        return (self.p, self.q, self.r)

    @property
    def degree(self) -> int:
        a, b, c = self.mu
        return a * b + a * c + b * c

    @classmethod
    def from_mu_basis(cls, mb) -> "ResultantProblem":
        p, q, r = mb.planes
        return cls(p, q, r, tuple(mb.mu))

    def coefficient_matrix(self) -> list:
        """The 4x3 matrix of s,t,u-forms multiplying X, Y, Z, W."""
        out = [[MPoly.zero(STU)] * 3 for _ in range(4)]
        for j, form in enumerate(self.forms):
            for e, part in form.split(XYZW).items():
                out[e.index(1)][j] = part
        return out

    def specialize(self, point) -> tuple:
        values = dict(zip(XYZW, point))
        return tuple(f.subs(values).restrict_ambient(STU) for f in self.forms)


def _linear_det(prob: ResultantProblem) -> MPoly:
    rows = []
    for form in prob.forms:
        parts = form.split(STU)
        rows.append([parts.get(e, MPoly.zero(XYZW)) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))])
    return det_bareiss(rows)


def _simplex(D):
    for total in range(D + 1):
        for a in range(total, -1, -1):
            for b in range(total - a, -1, -1):
                yield (a, b, total - a - b)


def _binomial_poly(var: str, origin, k: int, vars) -> MPoly:
    """C(var - origin, k) as a polynomial."""
    acc = MPoly.const(vars, 1)
    x = MPoly.var(vars, var)
    for j in range(k):
        acc = acc * (x - (origin + j))
    f = 1
    for j in range(2, k + 1):
        f *= j
    return acc.scale(Fraction(1, f))


def _interpolate(values: dict, D: int, origin) -> MPoly:
    """Newton interpolation of a degree-<=D polynomial in X, Y, Z on a simplex grid."""
    diffs = dict(values)
    # forward differences, one direction at a time
    for axis in range(3):
        for level in range(1, D + 1):
            new = dict(diffs)
            for key in diffs:
                if key[axis] >= level:
                    lower = list(key)
                    lower[axis] -= 1
                    new[key] = diffs[key] - diffs[tuple(lower)]
            diffs = new
    vars3 = ("X", "Y", "Z")
    acc = MPoly.zero(vars3)
    for key, c in diffs.items():
        if not c:
            continue
        term = MPoly.const(vars3, c)
        for axis in range(3):
            if key[axis]:
                term = term * _binomial_poly(vars3[axis], origin[axis], key[axis], vars3)
        acc = acc + term
    return acc


def _homogenize(p: MPoly, D: int) -> MPoly:
    out = {}
    for e, c in p.terms.items():
        out[e + (D - sum(e),)] = c
    return MPoly(XYZW, out)


def macaulay_resultant_symbolic(prob: ResultantProblem, v1_empty: Optional[bool] = None,
                                rng: Optional[random.Random] = None) -> MPoly:
    """Res(p, q, r) as a form of degree mu1 mu2 + mu1 mu3 + mu2 mu3 in X, Y, Z, W.

    ``v1_empty`` may be supplied by the caller; otherwise the V_1 test is run on
    the coefficient matrix when all evaluations vanish.
    """
    rng = rng or random.Random(0)
    D = prob.degree
    if prob.mu == (1, 1, 1):
        F = _linear_det(prob)
    else:
        F = None
        origins = [(1, 1, 1)] + [tuple(rng.randint(-9, 9) for _ in range(3)) for _ in range(3)]
        for origin in origins:
            try:
                values = {}
                for key in _simplex(D):
                    pt = tuple(o + k for o, k in zip(origin, key)) + (1,)
                    values[key] = macaulay_resultant_specialized(*prob.specialize(pt), degrees=prob.mu, rng=rng)
            except DenominatorVanishes:
                continue
            F = _homogenize(_interpolate(values, D, origin), D)
            break
        if F is None:
            raise InterpolationSingular("no sample grid avoided a degenerate specialization")
        if F:
            _cross_check(prob, F, rng)
    if not F:
        _diagnose_zero(prob, v1_empty)
    return F


def _cross_check(prob, F, rng):
    pt = tuple(rng.randint(-30, 30) for _ in range(4))
    want = macaulay_resultant_specialized(*prob.specialize(pt), degrees=prob.mu, rng=rng)
    if F(*pt) != want:  # pragma: no cover - would be a bug
        raise ArithmeticError("interpolated resultant disagrees with a direct evaluation")


def _diagnose_zero(prob: ResultantProblem, v1_empty: Optional[bool]):
    from .mubasis import minor_variety_empty

    if v1_empty is None:
        v1_empty = minor_variety_empty(prob.coefficient_matrix(), 1)
    if not v1_empty:
        raise IdenticallyZero("the resultant vanishes identically: the entries of A have a common zero",
                              certificate="V1(A) nonempty")
    raise ZeroWithoutCertificate("all evaluations vanished but V1(A) is empty")


# -- power extraction --------------------------------------------------------

@dataclass
class PowerDecomposition:
    P: MPoly
    h: int
    extraneous: list = field(default_factory=list)  # (linear form, multiplicity)
    constant: object = 1

    def reassemble(self) -> MPoly:
        acc = self.P ** self.h
        for l, e in self.extraneous:
            acc = acc * l ** e
        return acc.scale(self.constant)

    @property
    def extraneous_total(self) -> int:
        return sum(e for _, e in self.extraneous)


def squarefree_part(F: MPoly) -> MPoly:
    """F divided by gcd(F, dF/dX, dF/dY, dF/dZ, dF/dW)."""
    g = F
    for v in F.vars:
        d = partial_derivative(F, v)
        if d:
            g = mv_gcd(g, d)
    return normalize(divide_exact(F, g))


def _divisors(n: int) -> list:
    n = abs(n)
    small, large = [], []
    for k in range(1, isqrt(n) + 1):
        if n % k == 0:
            small.append(k)
            if k != n // k:
                large.append(n // k)
    return small + large[::-1]


def rational_roots(coeffs: dict) -> set:
    """Rational roots of a univariate polynomial given as {power: coefficient}."""
    coeffs = {k: Fraction(c) for k, c in coeffs.items() if c}
    if not coeffs:
        return set()
    roots = set()
    low = min(coeffs)
    if low > 0:
        roots.add(Fraction(0))
        coeffs = {k - low: c for k, c in coeffs.items()}
    if len(coeffs) == 1:
        return roots
    den = 1
    for c in coeffs.values():
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = {k: int(c * den) for k, c in coeffs.items()}
    top = max(ints)
    dense = [ints.get(k, 0) for k in range(top, -1, -1)]
    at_one, at_minus_one = sum(dense), sum(c * (-1) ** k for k, c in ints.items())
    for p in _divisors(ints[0]):
        for q in _divisors(ints[top]):
            if _gcd(p, q) != 1:
                continue
            for a in (p, -p):
                # a/q is a root only if (q - a) | f(1) and (q + a) | f(-1)
                if (q != a and at_one % (q - a)) or (q != -a and at_minus_one % (q + a)):
                    continue
                # q^top f(a/q) by Horner in integers
                acc, qpow = 0, 1
                for c in dense:
                    acc = acc * a + c * qpow
                    qpow *= q
                if acc == 0:
                    roots.add(Fraction(a, q))
    return roots


def _gcd(a, b):
    from math import gcd

    return gcd(a, b)


def _restricted(S: MPoly, pivot: str, other: str) -> dict:
    """S at other = 1, pivot = T, remaining variables 0, as {power of T: coeff}."""
    pi, oi = S.vars.index(pivot), S.vars.index(other)
    out: dict = {}
    for e, c in S.terms.items():
        if any(a for i, a in enumerate(e) if i not in (pi, oi)):
            continue
        out[e[pi]] = out.get(e[pi], 0) + c
    return out


def _linear_factor_search(S: MPoly) -> Optional[MPoly]:
    for pivot in ("W", "Z", "Y", "X"):
        if not S.degree_in(pivot):
            continue
        others = [v for v in XYZW if v != pivot]
        cands = []
        for o in others:
            restricted = _restricted(S, pivot, o)
            if not any(restricted.values()):
                cands = None
                break
            cands.append(sorted(rational_roots(restricted) | {Fraction(0)}))
        if cands is None:
            continue
        for a in cands[0]:
            for b in cands[1]:
                for c in cands[2]:
                    coeffs = {pivot: 1, others[0]: -a, others[1]: -b, others[2]: -c}
                    ell = linear_form([coeffs.get(v, 0) for v in XYZW])
                    if divides(ell, S):
                        return normalize(ell)
    return None


def _unit_triangular(rng) -> list:
    return [[1 if i == j else (rng.randint(-3, 3) if j > i else 0) for j in range(4)] for i in range(4)]


def _triangular_inverse(M) -> list:
    n = len(M)
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(n - 1, -1, -1):
        for j in range(i + 1, n):
            if M[i][j]:
                inv[i] = [a - M[i][j] * b for a, b in zip(inv[i], inv[j])]
    return inv


def _apply(S: MPoly, M) -> MPoly:
    """S(M x)."""
    return S.compose([linear_form(row) for row in M])


def find_linear_factor(S: MPoly, rng: Optional[random.Random] = None) -> Optional[MPoly]:
    """A linear form dividing S, or None.

    The form is sought as pivot - sum a_o o; each a_o is a rational root of
    S restricted to the line {o = 1, others = 0}.  When S vanishes on such a
    line the search is repeated after unimodular changes of coordinates.
    """
    if S.degree() < 1:
        return None
    ell = _linear_factor_search(S)
    if ell is not None:
        return ell
    rng = rng or random.Random(S.degree())
    for _ in range(3):
        M = _unit_triangular(rng)
        found = _linear_factor_search(_apply(S, M))
        if found is not None:
            ell = normalize(_apply(found, _triangular_inverse(M)))
            if divides(ell, S):
                return ell
    return None


def _multiplicity(factor: MPoly, F: MPoly) -> int:
    e = 0
    while divides(factor, F):
        F = divide_exact(F, factor)
        e += 1
    return e


def power_extract(F: MPoly, expected_degree: Optional[int] = None, image_points=()) -> PowerDecomposition:
    """Write F = c * P^h * prod(l^e) with the l linear and extraneous.

    ``image_points`` are points (X, Y, Z, W) on the surface; when given they
    decide which component is P.
    """
    if not F:
        raise ValueError("F is zero")
    if expected_degree is not None and F.degree() != expected_degree:
        raise ReassemblyMismatch(f"degree {F.degree()} differs from the expected {expected_degree}")
    S = squarefree_part(F)
    linear = []
    rest = S
    while True:
        ell = find_linear_factor(rest)
        if ell is None:
            break
        linear.append(ell)
        rest = normalize(divide_exact(rest, ell))
    components = ([rest] if rest.degree() >= 1 else []) + linear
    if not components:
        raise ReassemblyMismatch("F is constant")
    P = None
    if image_points:
        on = [c for c in components if all(c(*pt) == 0 for pt in image_points)]
        if len(on) != 1:
            raise ReassemblyMismatch(f"{len(on)} components vanish on the sampled image points",
                                     squarefree=str(S))
        P = on[0]
    elif rest.degree() >= 1:
        P = rest
    else:
        P = max(linear, key=lambda l: _multiplicity(l, F))
    h = _multiplicity(P, F)
    extraneous = [(l, _multiplicity(l, F)) for l in components if l != P]
    dec = PowerDecomposition(P=P, h=h, extraneous=extraneous)
    core = dec.reassemble()
    q = divide_exact(F, core) if divides(core, F) else None
    if q is None or not q.is_constant():
        raise ReassemblyMismatch("F is not a constant times P^h times linear factors", squarefree=str(S))
    dec.constant = q.constant_value()
    return dec
