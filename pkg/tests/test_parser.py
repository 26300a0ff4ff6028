import random
from fractions import Fraction

import pytest
from hypothesis import given

from conftest import forms, random_form
from implicitize import fixtures
from implicitize.errors import DegreeMismatch, NonHomogeneous, ParseError
from implicitize.ideal import Parametrization
from implicitize.parser import format_parametrization, parse_definitions, parse_parametrization, parse_polynomial
from implicitize.poly import ALL, XYZW, format_poly, stu

s, t, u = stu("s"), stu("t"), stu("u")


def test_quadric_example():
    p = parse_parametrization("x = s*t\ny = u^2\nz = s^2 + t*u\nw = t*u\n")
    assert p.n == 2 and p.x == s * t and p.z == s ** 2 + t * u


def test_order_of_definitions_is_free():
    p = parse_parametrization("w = t*u\nz = s^2 + t*u\ny = u^2\nx = s*t\n")
    assert p.w == t * u and p.x == s * t


def test_comments_and_blank_lines():
    p = parse_parametrization("# a quadric\n\nx = s*t  # first\ny = u^2\nz = s^2 + t*u\nw = t*u\n")
    assert p.y == u ** 2


def test_precedence_and_parentheses():
    assert parse_polynomial("-s^2*t + (s - t)^2") == -(s ** 2) * t + s ** 2 - 2 * s * t + t ** 2
    assert parse_polynomial("2^3*s") == 8 * s
    assert parse_polynomial("-(-s)") == s


def test_rational_constants():
    assert parse_polynomial("s/2 + 3/4*t") == s.scale(Fraction(1, 2)) + t.scale(Fraction(3, 4))


def test_other_ambients():
    assert parse_polynomial("X*W - Y^2", XYZW) == parse_polynomial("W*X - Y*Y", XYZW)
    assert parse_polynomial("s*X", ALL).vars == ALL


class TestErrors:
    def test_implicit_multiplication(self):
        with pytest.raises(ParseError) as info:
            parse_parametrization("x = 2s\ny = t\nz = u\nw = s\n")
        assert (info.value.line, info.value.column) == (1, 6)

    def test_python_power(self):
        with pytest.raises(ParseError) as info:
            parse_polynomial("s**2", line=3, column_offset=4)
        assert (info.value.line, info.value.column) == (3, 6)

    def test_unknown_variable(self):
        with pytest.raises(ParseError) as info:
            parse_parametrization("x = s\ny = t\nz = u\nw = v\n")
        assert info.value.line == 4

    def test_bad_character(self):
        with pytest.raises(ParseError) as info:
            parse_polynomial("s + $")
        assert info.value.column == 5

    def test_unbalanced(self):
        with pytest.raises(ParseError):
            parse_polynomial("(s + t")
        with pytest.raises(ParseError):
            parse_polynomial("s + t)")

    def test_trailing_operator(self):
        with pytest.raises(ParseError):
            parse_polynomial("s +")

    def test_division_by_variable(self):
        with pytest.raises(ParseError):
            parse_polynomial("s / t")

    def test_negative_exponent(self):
        with pytest.raises(ParseError):
            parse_polynomial("s^-1")

    def test_missing_generator(self):
        with pytest.raises(ParseError):
            parse_parametrization("x = s\ny = t\nz = u\n")

    def test_duplicate(self):
        with pytest.raises(ParseError) as info:
            parse_definitions("x = s\nx = t\n")
        assert info.value.line == 2

    def test_missing_equals(self):
        with pytest.raises(ParseError):
            parse_definitions("x s + t\n")

    def test_non_homogeneous(self):
        with pytest.raises(NonHomogeneous):
            parse_parametrization("x = s + t^2\ny = t\nz = u\nw = s\n")

    def test_zero_generator(self):
        with pytest.raises(NonHomogeneous):
            parse_parametrization("x = s - s\ny = t\nz = u\nw = s\n")

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatch):
            parse_parametrization("x = s^2\ny = t^2\nz = u^2\nw = s\n")

    def test_kind_names(self):
        assert ParseError("x").kind == "SyntaxError"


def test_round_trip_random_parametrizations():
    rng = random.Random(12)
    for _ in range(50):
        n = rng.randint(1, 4)
        gens = []
        while len(gens) < 4:
            g = random_form(rng, n, density=0.6)
            if rng.random() < 0.3:
                g = g.scale(Fraction(1, rng.randint(2, 5)))
            if g:
                gens.append(g)
        p = Parametrization(*gens)
        assert parse_parametrization(format_parametrization(p)) == p


@given(forms(3))
def test_round_trip_forms(f):
    assert parse_polynomial(format_poly(f)) == f


@pytest.mark.parametrize("name", fixtures.names())
def test_fixture_files_parse(name):
    from pathlib import Path

    files = list((Path(__file__).parent.parent / "inputs").glob(f"{name}_*.txt"))
    assert len(files) == 1
    assert parse_parametrization(files[0].read_text()) == fixtures.load(name)
