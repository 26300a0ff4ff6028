import itertools
import random
from fractions import Fraction

import pytest
import sympy

from conftest import random_form, random_point
from implicitize import fixtures
from implicitize.errors import IdenticallyZero, ReassemblyMismatch
from implicitize.linalg import det_bareiss, det_q, QMatrix
from implicitize.mubasis import compute_mu_basis, minor_diagnostics
from implicitize.resultant import (ResultantProblem, find_linear_factor, linear_change,
                                   macaulay_resultant_specialized, macaulay_resultant_symbolic, power_extract,
                                   rational_roots, squarefree_part)
from implicitize.parser import parse_polynomial
from implicitize.poly import ALL, STU, MPoly, normalize, stu, xyzw

s, t, u = stu("s"), stu("t"), stu("u")
X, Y, Z, W = (xyzw(v) for v in "XYZW")
LIN = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def random_linear(rng):
    return MPoly(STU, {e: rng.randint(-4, 4) for e in LIN})


def det_of(a, b, c):
    return det_q(QMatrix([[p.terms.get(e, 0) for e in LIN] for p in (a, b, c)]))


def product(fs):
    acc = MPoly.const(STU, 1)
    for f in fs:
        acc = acc * f
    return acc


def has_common_root(forms):
    """Decide a common zero in P^2 with sympy Groebner bases on the three affine charts."""
    a, b, c = sympy.symbols("a b c")
    exprs = [sum(sympy.Rational(str(v)) * a ** e[0] * b ** e[1] * c ** e[2] for e, v in f.terms.items())
             for f in forms]
    charts = [({c: 1}, (a, b)), ({c: 0, b: 1}, (a,)), ({c: 0, b: 0, a: 1}, ())]
    for sub, gens in charts:
        eqs = [sympy.expand(e.subs(sub)) for e in exprs]
        if not gens:
            if all(e == 0 for e in eqs):
                return True
            continue
        gb = sympy.groebner([e for e in eqs if e != 0] or [0], *gens, order="lex")
        if list(gb.exprs) != [1]:
            return True
    return False


class TestSpecialized:
    def test_coordinate_forms(self):
        assert macaulay_resultant_specialized(s, t, u) == 1

    def test_shared_zero(self):
        assert macaulay_resultant_specialized(s, t, s + t) == 0

    def test_powers(self):
        assert macaulay_resultant_specialized(s, t, u ** 2) == 1
        assert macaulay_resultant_specialized(s ** 2, t ** 2, u ** 2) == 1
        assert macaulay_resultant_specialized(s ** 2, t ** 3, u ** 2) == 1

    def test_common_root(self):
        assert macaulay_resultant_specialized(s + t, t - u, u ** 2 + s * t) == 0

    def test_zero_form(self):
        assert macaulay_resultant_specialized(MPoly.zero(STU), t, u, degrees=(1, 1, 1)) == 0

    def test_product_formula(self):
        # Res(prod a_i, prod b_j, prod c_k) = prod det(a_i, b_j, c_k)
        rng = random.Random(31)
        for _ in range(20):
            mu = rng.choice([(1, 1, 2), (1, 2, 2), (2, 2, 2), (1, 1, 3), (1, 2, 3)])
            fac = [[random_linear(rng) for _ in range(m)] for m in mu]
            want = 1
            for a, b, c in itertools.product(*fac):
                want *= det_of(a, b, c)
            got = macaulay_resultant_specialized(*(product(f) for f in fac), degrees=mu)
            assert got == want

    def test_zero_iff_common_root(self):
        rng = random.Random(32)
        for k in range(20):
            mu = rng.choice([(1, 1, 2), (1, 2, 2), (2, 2, 2)])
            forms = [random_form(rng, m, density=0.7) for m in mu]
            if k % 2:
                # plant a common root at a random integer point
                pt = tuple(rng.randint(-3, 3) for _ in range(3))
                if not any(pt):
                    pt = (1, 0, 0)
                planted = []
                for f, m in zip(forms, mu):
                    j = next(i for i in range(3) if pt[i])
                    e = tuple(m if i == j else 0 for i in range(3))
                    planted.append(f - MPoly.monomial(STU, e).scale(Fraction(f(*pt), pt[j] ** m)))
                forms = planted
            if any(not f for f in forms):
                continue
            res = macaulay_resultant_specialized(*forms, degrees=mu)
            assert (res == 0) == has_common_root(forms)

    def test_scaling(self):
        rng = random.Random(33)
        for _ in range(15):
            mu = rng.choice([(1, 1, 2), (1, 2, 2), (2, 1, 3)])
            f, g, h = (random_form(rng, m, density=0.8) for m in mu)
            c = Fraction(rng.randint(1, 7), rng.randint(1, 3)) * rng.choice([1, -1])
            base = macaulay_resultant_specialized(f, g, h, degrees=mu)
            assert macaulay_resultant_specialized(f.scale(c), g, h, degrees=mu) == c ** (mu[1] * mu[2]) * base

    def test_coordinate_change(self):
        rng = random.Random(34)
        for _ in range(10):
            mu = (1, 2, 2)
            forms = [random_form(rng, m, density=0.8) for m in mu]
            G = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)]
            dg = det_q(QMatrix(G))
            changed = [linear_change(p, G) for p in forms]
            assert (macaulay_resultant_specialized(*changed, degrees=mu)
                    == dg ** (mu[0] * mu[1] * mu[2]) * macaulay_resultant_specialized(*forms, degrees=mu))


class TestSymbolic:
    def test_extraneous_plane_example(self):
        prob = ResultantProblem.from_mu_basis(compute_mu_basis(fixtures.load("ex53").gens))
        F = macaulay_resultant_symbolic(prob)
        want = fixtures.xyzw_poly(fixtures.EX53_IMPLICIT) * fixtures.xyzw_poly(fixtures.EX53_EXTRANEOUS)
        assert normalize(F) == normalize(want)
        printed = det_bareiss([[fixtures.xyzw_poly(e) for e in row] for row in fixtures.EX53_RESULTANT_MATRIX])
        assert normalize(printed) == normalize(want)

    def test_identically_zero(self):
        prob = ResultantProblem.from_mu_basis(compute_mu_basis(fixtures.load("ex44").gens))
        with pytest.raises(IdenticallyZero) as info:
            macaulay_resultant_symbolic(prob)
        assert info.value.details["certificate"] == "V1(A) nonempty"

    def test_cubic_is_syzygy_determinant(self):
        p = fixtures.load("ex38")
        F = macaulay_resultant_symbolic(ResultantProblem.from_mu_basis(compute_mu_basis(p.gens)))
        rows = fixtures.ex38_syzygy_rows()
        assert normalize(F) == normalize(det_bareiss(rows))
        assert F.degree() == 3

    @pytest.mark.parametrize("name", ["hb112", "hb122"])
    def test_interpolation_consistency(self, name):
        prob = ResultantProblem.from_mu_basis(compute_mu_basis(fixtures.load(name).gens))
        F = macaulay_resultant_symbolic(prob)
        assert F.is_homogeneous(prob.degree)
        rng = random.Random(35)
        for _ in range(10):
            pt = random_point(rng, 4)
            assert F(*pt) == macaulay_resultant_specialized(*prob.specialize(pt), degrees=prob.mu)

    def test_vanishes_on_image(self):
        p = fixtures.load("hb112")
        F = macaulay_resultant_symbolic(ResultantProblem.from_mu_basis(compute_mu_basis(p.gens)))
        rng = random.Random(36)
        for _ in range(20):
            assert F(*p.image_point(random_point(rng, 3))) == 0

    def test_bidegree_checked(self):
        with pytest.raises(ValueError):
            ResultantProblem(*(parse_polynomial(f, ALL) for f in ("s*X", "t*X*Y", "u*Z")), (1, 1, 1))

    def test_coefficient_matrix(self):
        mb = compute_mu_basis(fixtures.load("ex53").gens)
        prob = ResultantProblem.from_mu_basis(mb)
        A = prob.coefficient_matrix()
        assert [[str(e) for e in r] for r in A] == [[str(e) for e in r] for r in mb.A]


class TestPowerExtract:
    def test_square(self):
        P = W ** 2 * (Z - W) - X ** 2 * Y
        dec = power_extract(P ** 2)
        assert dec.P == normalize(P) and dec.h == 2 and dec.extraneous == []

    def test_pure_power(self):
        dec = power_extract(X ** 3)
        assert dec.P == X and dec.h == 3

    def test_extraneous_plane_example(self):
        p = fixtures.load("ex53")
        F = macaulay_resultant_symbolic(ResultantProblem.from_mu_basis(compute_mu_basis(p.gens)))
        dec = power_extract(F)
        assert dec.P == normalize(fixtures.xyzw_poly(fixtures.EX53_IMPLICIT)) and dec.h == 1
        assert dec.extraneous == [(normalize(fixtures.xyzw_poly(fixtures.EX53_EXTRANEOUS)), 1)]
        assert dec.reassemble() == F

    def test_power_with_linear_factor(self):
        P = X * W - Y * Z + Z ** 2
        F = (P ** 3 * (X + Y)).scale(-5)
        dec = power_extract(F)
        assert dec.h == 3 and dec.extraneous_total == 1
        assert dec.reassemble() == F

    def test_image_points_pick_component(self):
        # on the image points (a, -a, b, c) the factor X + Y vanishes but P does not
        P = X * W - Y * Z + Z ** 2
        F = P * (X + Y) ** 2
        dec = power_extract(F, image_points=[(1, -1, 2, 3), (2, -2, 1, 5)])
        assert dec.P == X + Y and dec.h == 2

    def test_not_a_power(self):
        with pytest.raises(ReassemblyMismatch):
            power_extract(X ** 2, expected_degree=3)

    def test_squarefree(self):
        assert squarefree_part(X ** 3 * Y) == X * Y
        assert squarefree_part((X + W) ** 2 * (Y * Z - W ** 2)) == normalize((X + W) * (Y * Z - W ** 2))

    def test_rational_roots(self):
        # 6x^2 - 5x + 1 = (2x - 1)(3x - 1)
        assert rational_roots({2: 6, 1: -5, 0: 1}) == {Fraction(1, 2), Fraction(1, 3)}

    def test_linear_factor(self):
        ell = 2 * X - 3 * Z + W
        S = ell * (X * Y - Z * W + Y ** 2)
        assert find_linear_factor(S, random.Random(0)) == normalize(ell)
        assert find_linear_factor(X * Y - Z * W, random.Random(0)) is None

    def test_degree_ledger_for_lci_fixtures(self):
        for name in ("ex38", "hb112", "hb122"):
            mb = compute_mu_basis(fixtures.load(name).gens)
            assert minor_diagnostics(mb).v2_empty
            prob = ResultantProblem.from_mu_basis(mb)
            dec = power_extract(macaulay_resultant_symbolic(prob))
            assert dec.h * dec.P.degree() == prob.degree and dec.extraneous == []
