"""Worked parametrizations used by the tests, the CLI inputs and the scripts.

Each fixture is stored as source text in the input-file grammar so that the
parser is exercised on the same data the library is tested with.
"""
from __future__ import annotations

from .ideal import Parametrization
from .parser import parse_definitions, parse_parametrization
from .poly import STU, XYZW

SOURCES = {
    # five-fold monomial map: regularity too high for the moving method
    "ex31": """\
x = s^5
y = t^5
z = s*u^4
w = s*t^2*u^2
""",
    # base points of multiplicities 2, 3, 1; fails BP5 for every choice
    "ex32": """\
x = s*u^2
y = t^2*(s + u)
z = s*t*(s + u)
w = t*u*(s + u)
""",
    # quadric map with one simple base point
    "ex36": """\
x = s*t
y = u^2
z = s^2 + t*u
w = t*u
""",
    # cubic map with a double base point at (0:1:0)
    "ex37": """\
x = s^3
y = t^2*u
z = s^2*t + u^3
w = s*t*u
""",
    # cubic surface through six base points
    "ex38": """\
x = s^2*t + 2*t^3 + s^2*u + 4*s*t*u + 4*t^2*u + 3*s*u^2 + 2*t*u^2 + 2*u^3
y = -s^3 - 2*s*t^2 - 2*s^2*u - s*t*u + s*u^2 - 2*t*u^2 + 2*u^3
z = -s^3 - 2*s^2*t - 3*s*t^2 - 3*s^2*u - 3*s*t*u + 2*t^2*u - 2*s*u^2 - 2*t*u^2
w = s^3 + s^2*t + t^3 + s^2*u + t^2*u - s*u^2 - t*u^2 - u^3
""",
    # saturated, not a local complete intersection at (0:0:1)
    "ex44": """\
x = s*t^3 - s^4 - 2*s^2*t^2 + s^2*t*u + 4*s^3*t - 2*t^3*u
y = s^2*t*u - s^3*t - 2*s^3*u + 3*s*t^2*u - t^3*u
z = s^3*u - s*t^3 - 4*s^2*t*u + 6*t^3*u - s*t^2*u
w = s^3*u - 3*s*t^3 - 2*s*t^2*u + 6*s^2*t^2 + t^4 - t*s^3
""",
    # saturated with one extraneous plane in the resultant
    "ex53": """\
x = s*t^2 - t^3 - t*u^2
y = t^3 - s*t*u - t^2*u + t*u^2 + u^3
z = s*t*u - 2*t*u^2
w = t^2*u - 2*t*u^2 + u^3
""",
    # Hilbert-Burch constructions with n > 3 (see HB_MATRICES)
    "hb112": None,
    "hb122": None,
}

# 4x3 Hilbert-Burch matrices, one row per line, entries separated by ';'
HB_MATRICES = {
    "ex44": """\
s ; 2*s ; t*u
s ; t ; s^2
2*t ; s ; t^2
t ; 3*t ; s*u
""",
    "ex53": """\
-u ; t ; 0
-u ; -s + t + u ; -u
t - u ; -s - t + 2*u ; -u
u ; s - u ; t + u
""",
    "hb112": """\
s + t ; u ; s^2 + t*u
t - u ; s + 2*u ; t^2 - s*u
u ; t - s ; u^2 + s*t
s ; t ; s*u - t^2 + u^2
""",
    "hb122": """\
s ; t^2 + u^2 ; s*t - u^2
t ; s*u ; t^2 + s*u
u ; s^2 - t*u ; u^2
s + t - u ; t*u ; s^2 + t*u
""",
}

# rows of the printed degree-one syzygies of the cubic surface, in X,Y,Z,W
EX38_SYZYGIES = (
    "s*X + t*Y + u*Z",
    "s*(Y + W) + t*(2*Y - Z) + u*(Y + 2*W)",
    "s*(Z - Y) + t*(-X + 2*W) + u*(X - Y)",
)

# the displayed matrix of moving planes for generators (x, y, w)
EX38_MMATRIX = (
    ("Z - Y", "-X + 2*W", "X - Y"),
    ("-Y - W", "Z - 2*Y", "-Y - 2*W"),
    ("X", "Y", "Z"),
)

# the displayed resultant matrix and its factorization
EX53_RESULTANT_MATRIX = (
    ("0", "-Y - Z + W", "0"),
    ("Z", "X + Y - Z", "W"),
    ("-X - Y - Z + W", "Y + 2*Z - W", "-Y - Z + W"),
)
EX53_IMPLICIT = "-Y*Z - Z^2 + X*W + Y*W + 2*Z*W - W^2"
EX53_EXTRANEOUS = "Y + Z - W"

IMPLICIT = {
    "ex36": "W^2*(Z - W) - X^2*Y",
    "ex37": "W^7 - X^2*Y^3*Z*W + X^3*Y^4",
}


def hb_matrix(name: str) -> list:
    """A 4x3 matrix of forms in s, t, u."""
    from .parser import parse_polynomial

    rows = []
    for line in HB_MATRICES[name].strip().splitlines():
        rows.append([parse_polynomial(e, STU) for e in line.split(";")])
    return rows


def hilbert_burch_gens(A) -> tuple:
    """Signed maximal minors (Delta_1, .., Delta_4) of a 4x3 matrix."""
    from .linalg import det_cofactor

    out = []
    for k in range(4):
        minor = [row for i, row in enumerate(A) if i != k]
        det = det_cofactor(minor)
        out.append(det if k % 2 == 0 else -det)
    return tuple(out)


def load(name: str) -> Parametrization:
    src = SOURCES[name]
    if src is None:
        return Parametrization(*hilbert_burch_gens(hb_matrix(name)))
    return parse_parametrization(src)


def source(name: str) -> str:
    src = SOURCES[name]
    if src is None:
        from .parser import format_parametrization

        return format_parametrization(load(name))
    return src


def xyzw_poly(text: str):
    from .parser import parse_polynomial

    return parse_polynomial(text, XYZW)


def ex38_syzygy_rows():
    """The printed syzygies as rows of coefficients (in X..W) against s, t, u."""
    from .parser import parse_polynomial
    from .poly import ALL

    rows = []
    for text in EX38_SYZYGIES:
        p = parse_polynomial(text, ALL)
        parts = p.split(STU)
        rows.append([parts.get(e, None) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))])
    return rows


def names() -> tuple:
    return tuple(SOURCES)


__all__ = ["SOURCES", "HB_MATRICES", "IMPLICIT", "load", "source", "hb_matrix", "hilbert_burch_gens",
           "xyzw_poly", "ex38_syzygy_rows", "names", "parse_definitions"]
