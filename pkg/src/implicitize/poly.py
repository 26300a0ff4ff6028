"""Exact multivariate polynomials over Q.

A polynomial is a map from exponent tuples to nonzero rational coefficients
over a fixed, ordered tuple of variable names.  Coefficients are kept as
``int`` whenever they are integral and as ``Fraction`` otherwise.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, isqrt
from typing import Iterable, Mapping, Sequence

STU = ("s", "t", "u")
XYZW = ("X", "Y", "Z", "W")
ALL = STU + XYZW


class AmbientMismatch(ValueError):
    pass


class NotDivisible(ArithmeticError):
    pass


def _norm(c):
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def grlex_key(exp):
    return (sum(exp), exp)


@lru_cache(maxsize=None)
def monomial_basis(d: int, nvars: int) -> tuple:
    """All exponent tuples of total degree d, graded-lex descending."""
    if d < 0:
        return ()
    if nvars == 1:
        return ((d,),)
    out = []
    for a in range(d, -1, -1):
        for rest in monomial_basis(d - a, nvars - 1):
            out.append((a,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(d: int, nvars: int) -> dict:
    return {m: i for i, m in enumerate(monomial_basis(d, nvars))}


def num_monomials(d: int, nvars: int = 3) -> int:
    return comb(d + nvars - 1, nvars - 1) if d >= 0 else 0


class MPoly:
    """Immutable polynomial over Q in the variables ``vars``."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple, object] | None = None):
        self.vars = tuple(vars)
        clean = {}
        if terms:
            n = len(self.vars)
            for e, c in terms.items():
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match {self.vars}")
                if c:
                    clean[tuple(e)] = _norm(c)
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def _raw(cls, vars, terms):
        p = object.__new__(cls)
        p.vars = vars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, vars):
        return cls._raw(tuple(vars), {})

    @classmethod
    def const(cls, vars, c):
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def var(cls, vars, name):
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls._raw(vars, {tuple(e): 1})

    @classmethod
    def monomial(cls, vars, exp, c=1):
        return cls(vars, {tuple(exp): c})

    @classmethod
    def from_vector(cls, vec, d, vars=STU):
        """Inverse of :meth:`coeff_vector`."""
        basis = monomial_basis(d, len(vars))
        return cls(vars, {m: c for m, c in zip(basis, vec) if c})

    # -- basic protocol -----------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self.terms
            return self.terms == {(0,) * len(self.vars): other}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"MPoly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)

    def _coerce(self, other):
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                raise AmbientMismatch(f"{self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.const(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _norm(v)
            else:
                out.pop(e, None)
        return MPoly._raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MPoly(self.vars, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MPoly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c):
        c = _norm(c)
        if not c:
            return MPoly.zero(self.vars)
        return MPoly._raw(self.vars, {e: _norm(v * c) for e, v in self.terms.items()})

    def __truediv__(self, c):
        if isinstance(c, MPoly):
            return divide_exact(self, c)
        return self.scale(Fraction(1) / Fraction(c))

    # -- inspection ----------------------------------------------------
    def sorted_terms(self):
        """Terms in graded-lex descending order."""
        return sorted(self.terms.items(), key=lambda ec: grlex_key(ec[0]), reverse=True)

    def leading(self):
        """(exponent, coefficient) of the graded-lex leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, var) -> int:
        i = self.vars.index(var) if isinstance(var, str) else var
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return d is None or degs == {d}

    def homogeneous_degree(self):
        """Common total degree of all terms, or None when not homogeneous."""
        degs = {sum(e) for e in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * len(self.vars), 0)

    def variables_used(self):
        used = set()
        for e in self.terms:
            used.update(i for i, a in enumerate(e) if a)
        return used

    def coefficients(self):
        return list(self.terms.values())

    # -- evaluation and substitution ------------------------------------
    def __call__(self, *point):
        return evaluate(self, point)

    def subs(self, values: Mapping[str, object]):
        """Substitute constants for some variables; ambient is unchanged."""
        idx = {self.vars.index(v): c for v, c in values.items()}
        out: dict = {}
        for e, c in self.terms.items():
            coeff = c
            ne = list(e)
            for i, val in idx.items():
                if e[i]:
                    coeff = coeff * Fraction(val) ** e[i]
                    ne[i] = 0
            ne = tuple(ne)
            out[ne] = out.get(ne, 0) + coeff
        return MPoly(self.vars, out)

    def compose(self, images: Sequence["MPoly"]):
        """Replace each variable by a polynomial (all in a common ambient)."""
        if len(images) != len(self.vars):
            raise ValueError("need one image per variable")
        target = images[0].vars
        powers = [dict() for _ in images]
        result = MPoly.zero(target)
        for e, c in self.terms.items():
            term = MPoly.const(target, c)
            for i, k in enumerate(e):
                if k:
                    if k not in powers[i]:
                        powers[i][k] = images[i] ** k
                    term = term * powers[i][k]
            result = result + term
        return result

    def change_ambient(self, vars: Sequence[str]):
        """Re-express in a larger/different variable list (names must exist there)."""
        vars = tuple(vars)
        pos = [vars.index(v) for v in self.vars]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(vars)
            for i, a in enumerate(e):
                if a:
                    ne[pos[i]] = a
            out[tuple(ne)] = c
        return MPoly._raw(vars, out)

    def restrict_ambient(self, vars: Sequence[str]):
        """Drop variables that do not occur; raises if an occurring one is dropped."""
        vars = tuple(vars)
        keep = [self.vars.index(v) for v in vars]
        dropped = set(range(len(self.vars))) - set(keep)
        out = {}
        for e, c in self.terms.items():
            if any(e[i] for i in dropped):
                raise ValueError("polynomial uses a dropped variable")
            out[tuple(e[i] for i in keep)] = c
        return MPoly._raw(vars, out)

    def split(self, inner: Sequence[str]):
        """Group terms by their exponent in the ``inner`` variables.

        Returns a dict mapping exponent tuples in ``inner`` to polynomials in
        the remaining variables.
        """
        inner = tuple(inner)
        ii = [self.vars.index(v) for v in inner]
        outer_vars = tuple(v for v in self.vars if v not in inner)
        oi = [self.vars.index(v) for v in outer_vars]
        groups: dict = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i in ii)
            groups.setdefault(key, {})[tuple(e[i] for i in oi)] = c
        return {k: MPoly._raw(outer_vars, v) for k, v in groups.items()}


def poly_arith(a: MPoly, b, op: str) -> MPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown op {op!r}")


def evaluate(p: MPoly, point: Sequence) -> Fraction | int:
    if len(point) != len(p.vars):
        raise ValueError("point length does not match ambient")
    point = [_norm(x) for x in point]
    total = 0
    for e, c in p.terms.items():
        v = c
        for x, k in zip(point, e):
            if k:
                v = v * x ** k
        total += v
    return _norm(total)


def coeff_vector(p: MPoly, d: int) -> list:
    """Coefficients of a degree-d form, indexed by ``monomial_basis(d, nvars)``."""
    n = len(p.vars)
    idx = monomial_index(d, n)
    vec = [0] * len(idx)
    for e, c in p.terms.items():
        if sum(e) != d:
            raise ValueError(f"not homogeneous of degree {d}")
        vec[idx[e]] = c
    return vec


def partial_derivative(p: MPoly, var) -> MPoly:
    i = p.vars.index(var) if isinstance(var, str) else var
    out = {}
    for e, c in p.terms.items():
        if e[i]:
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = c * e[i]
    return MPoly._raw(p.vars, out)


def _monomial_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def divide_exact(p: MPoly, q: MPoly) -> MPoly:
    """Exact quotient p/q; raises NotDivisible when q does not divide p."""
    if p.vars != q.vars:
        raise AmbientMismatch(f"{p.vars} vs {q.vars}")
    if not q:
        raise ZeroDivisionError("division by zero polynomial")
    lq, cq = q.leading()
    if q.is_constant():
        return p.scale(Fraction(1) / Fraction(cq))
    rem = dict(p.terms)
    quot = {}
    qterms = list(q.terms.items())
    while rem:
        lr = max(rem, key=grlex_key)
        if not _monomial_divides(lq, lr):
            raise NotDivisible("remainder term not divisible by leading term")
        m = tuple(a - b for a, b in zip(lr, lq))
        c = Fraction(rem[lr]) / cq
        c = _norm(c)
        quot[m] = c
        for e, cc in qterms:
            ee = tuple(a + b for a, b in zip(e, m))
            v = rem.get(ee, 0) - c * cc
            if v:
                rem[ee] = v
            else:
                rem.pop(ee, None)
    return MPoly(p.vars, quot)


def divides(q: MPoly, p: MPoly) -> bool:
    try:
        divide_exact(p, q)
    except NotDivisible:
        return False
    return True


def content_q(p: MPoly) -> Fraction:
    """Rational content: p / content is primitive with integer coefficients."""
    if not p:
        return Fraction(0)
    den = 1
    for c in p.terms.values():
        if isinstance(c, Fraction):
            den = den * c.denominator // gcd(den, c.denominator)
    num = 0
    for c in p.terms.values():
        num = gcd(num, int(c * den))
    return Fraction(num, den)


def normalize(p: MPoly) -> MPoly:
    """Primitive integer polynomial with positive graded-lex leading coefficient."""
    if not p:
        return p
    c = content_q(p)
    if p.leading()[1] < 0:
        c = -c
    return p.scale(1 / c)


# -- gcd ---------------------------------------------------------------

def _as_univariate(p: MPoly, i: int) -> dict:
    out: dict = {}
    for e, c in p.terms.items():
        k = e[i]
        ne = e[:i] + (0,) + e[i + 1:]
        out.setdefault(k, {})[ne] = c
    return {k: MPoly._raw(p.vars, v) for k, v in out.items()}


def _from_univariate(coeffs: dict, i: int, vars) -> MPoly:
    out = {}
    for k, c in coeffs.items():
        for e, v in c.terms.items():
            out[e[:i] + (k,) + e[i + 1:]] = v
    return MPoly._raw(vars, out)


def _shift(p: MPoly, i: int, k: int) -> MPoly:
    return MPoly._raw(p.vars, {e[:i] + (e[i] + k,) + e[i + 1:]: c for e, c in p.terms.items()})


def _content_in(p: MPoly, i: int) -> MPoly:
    g = MPoly.zero(p.vars)
    for c in _as_univariate(p, i).values():
        g = mv_gcd(g, c)
        if g.is_constant():
            return MPoly.const(p.vars, 1)
    return g


def _prem(a: MPoly, b: MPoly, i: int) -> MPoly:
    db = b.degree_in(i)
    lb = _as_univariate(b, i)[db]
    r = a
    while r and r.degree_in(i) >= db:
        dr = r.degree_in(i)
        lr = _as_univariate(r, i)[dr]
        r = r * lb - _shift(lr * b, i, dr - db)
    return r


def _primitive_in(p: MPoly, i: int) -> MPoly:
    c = _content_in(p, i)
    return divide_exact(p, c) if not c.is_constant() else p


def _univariate_values(p: MPoly, i: int, point) -> dict:
    """p with every variable but the i-th set from ``point``, as {power: value}."""
    out: dict = {}
    for e, c in p.terms.items():
        v = Fraction(c)
        for j, a in enumerate(e):
            if j != i and a:
                v *= Fraction(point[j]) ** a
        out[e[i]] = out.get(e[i], 0) + v
    return {k: v for k, v in out.items() if v}


def _univariate_gcd_degree(a: dict, b: dict) -> int:
    def rem(x, y):
        x = dict(x)
        dy = max(y)
        while x and max(x) >= dy:
            dx = max(x)
            f = x[dx] / y[dy]
            for k, v in y.items():
                w = x.get(k + dx - dy, 0) - f * v
                if w:
                    x[k + dx - dy] = w
                else:
                    x.pop(k + dx - dy, None)
        return x

    while b:
        a, b = b, rem(a, b)
    return max(a) if a else 0


def _coprime_by_evaluation(p: MPoly, q: MPoly, common) -> bool:
    """Sound one-sided test: True only when gcd(p, q) is certainly constant.

    For a point keeping both leading coefficients in x_i nonzero, the image
    of gcd(p, q) divides the gcd of the images; a constant image gcd rules
    out x_i from the true gcd.
    """
    import random

    rng = random.Random(len(p.terms) * 7919 + len(q.terms))
    for i in common:
        dp, dq = p.degree_in(i), q.degree_in(i)
        for _ in range(3):
            point = [rng.randint(-97, 97) for _ in p.vars]
            a, b = _univariate_values(p, i, point), _univariate_values(q, i, point)
            if a.get(dp) and b.get(dq):
                if _univariate_gcd_degree(a, b) == 0:
                    break
                return False
        else:
            return False
    return True


def _int_terms(p: MPoly) -> dict:
    c = content_q(p)
    return {e: int(v / c) for e, v in p.terms.items()}


def _int_content(f: dict) -> int:
    g = 0
    for c in f.values():
        g = gcd(g, c)
    return g


def _heu_eval(f: dict, i: int, xi: int) -> dict:
    out: dict = {}
    for e, c in f.items():
        k = e[:i] + (0,) + e[i + 1:]
        out[k] = out.get(k, 0) + c * xi ** e[i]
    return {e: c for e, c in out.items() if c}


def _heu_lift(h: dict, i: int, xi: int) -> dict:
    """Inverse of evaluation at x_i = xi, reading each coefficient in symmetric base xi."""
    out = {}
    half = xi // 2
    for e, c in h.items():
        k = 0
        while c:
            r = c % xi
            if r > half:
                r -= xi
            if r:
                out[e[:i] + (k,) + e[i + 1:]] = r
            c = (c - r) // xi
            k += 1
    return out


def _heu_gcd(f: dict, g: dict, left: tuple, vars):
    """Heuristic gcd of integer polynomials; None when no candidate verified."""
    if not left:
        zero = next(iter(f))
        return {zero: gcd(f[zero], g[zero])}
    # integer contents are handled apart so the candidate can be made primitive
    cf, cg = _int_content(f), _int_content(g)
    f = {e: c // cf for e, c in f.items()}
    g = {e: c // cg for e, c in g.items()}
    common = gcd(cf, cg)
    i, rest = left[-1], left[:-1]
    bound = min(max(abs(c) for c in f.values()), max(abs(c) for c in g.values()))
    xi = 2 * bound + 29
    for _ in range(6):
        fe, ge = _heu_eval(f, i, xi), _heu_eval(g, i, xi)
        if fe and ge:
            h = _heu_gcd(fe, ge, rest, vars)
            if h is not None:
                H = _heu_lift(h, i, xi)
                if H:
                    Hp = MPoly._raw(vars, H)
                    c = content_q(Hp)
                    Hp = Hp.scale(1 / c)
                    if divides(Hp, MPoly._raw(vars, f)) and divides(Hp, MPoly._raw(vars, g)):
                        return {e: common * c for e, c in _int_terms(Hp).items()}
        xi = xi * 73794 * isqrt(isqrt(xi)) // 27011
    return None


def mv_gcd(p: MPoly, q: MPoly) -> MPoly:
    """Normalized gcd: heuristic evaluation gcd, else primitive pseudo-remainder sequences."""
    if p.vars != q.vars:
        raise AmbientMismatch(f"{p.vars} vs {q.vars}")
    if not p:
        return normalize(q)
    if not q:
        return normalize(p)
    up, uq = p.variables_used(), q.variables_used()
    if not up or not uq:
        return MPoly.const(p.vars, 1)
    common = up & uq
    if not common or _coprime_by_evaluation(p, q, common):
        return MPoly.const(p.vars, 1)
    used = tuple(sorted(up | uq))
    h = _heu_gcd(_int_terms(p), _int_terms(q), used, p.vars)
    if h is not None:
        return normalize(MPoly._raw(p.vars, h))
    i = min(common, key=lambda j: min(p.degree_in(j), q.degree_in(j)))
    cp, cq = _content_in(p, i), _content_in(q, i)
    g_content = mv_gcd(cp, cq)
    a = divide_exact(p, cp) if not cp.is_constant() else p
    b = divide_exact(q, cq) if not cq.is_constant() else q
    if a.degree_in(i) < b.degree_in(i):
        a, b = b, a
    while True:
        r = _prem(a, b, i)
        if not r:
            break
        if r.degree_in(i) == 0:
            b = MPoly.const(p.vars, 1)
            break
        a, b = b, _primitive_in(r, i)
    g = b if b.is_constant() else _primitive_in(b, i)
    return normalize(g * g_content)


def format_poly(p: MPoly) -> str:
    """Graded-lex descending, explicit ``*`` and ``^``."""
    if not p.terms:
        return "0"
    parts = []
    for e, c in p.sorted_terms():
        mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(p.vars, e) if k)
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        if isinstance(a, Fraction) and mono and a != 1:
            body = f"({a})*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


def stu(name: str) -> MPoly:
    return MPoly.var(STU, name)


def xyzw(name: str) -> MPoly:
    return MPoly.var(XYZW, name)


def linear_form(coeffs: Iterable, vars=XYZW) -> MPoly:
    vars = tuple(vars)
    out = {}
    for i, c in enumerate(coeffs):
        e = [0] * len(vars)
        e[i] = 1
        out[tuple(e)] = c
    return MPoly(vars, out)
