import random
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from implicitize.poly import STU, MPoly, monomial_basis

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_ints = st.integers(min_value=-5, max_value=5)
rationals = st.fractions(min_value=-6, max_value=6, max_denominator=5)


@st.composite
def polys(draw, vars=STU, max_degree=3, max_terms=5, homogeneous=None):
    n = len(vars)
    terms = {}
    for _ in range(draw(st.integers(min_value=0, max_value=max_terms))):
        d = homogeneous if homogeneous is not None else draw(st.integers(0, max_degree))
        e = draw(st.sampled_from(monomial_basis(d, n)))
        terms[e] = draw(small_ints)
    return MPoly(vars, terms)


@st.composite
def forms(draw, d, vars=STU, nonzero=True):
    basis = monomial_basis(d, len(vars))
    coeffs = draw(st.lists(small_ints, min_size=len(basis), max_size=len(basis)))
    if nonzero and not any(coeffs):
        coeffs[0] = 1
    return MPoly(vars, dict(zip(basis, coeffs)))


def random_form(rng, d, vars=STU, lo=-4, hi=4, density=1.0):
    basis = monomial_basis(d, len(vars))
    out = {e: rng.randint(lo, hi) for e in basis if rng.random() < density}
    if not any(out.values()):
        out[basis[0]] = 1
    return MPoly(vars, out)


def random_hb_matrix(rng, mu):
    """4x3 matrix with column j a random form of degree mu[j] in each row."""
    return [[random_form(rng, m, density=0.8) for m in mu] for _ in range(4)]


def random_point(rng, k, lo=-9, hi=9):
    return tuple(Fraction(rng.randint(lo, hi), rng.randint(1, 3)) for _ in range(k))


@pytest.fixture
def rng():
    return random.Random(20240917)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
