import itertools
import random
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from conftest import random_form, random_point
from implicitize import fixtures
from implicitize.ideal import multiplication_matrix
from implicitize.linalg import QMatrix, det_bareiss, det_cofactor, det_q, rank, rank_kernel, rref, solve_columns
from implicitize.poly import XYZW, MPoly, xyzw

X, Y, Z, W = (xyzw(v) for v in "XYZW")

matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)))


def minor_rank(rows):
    """Largest k with a nonzero k x k minor."""
    r, c = len(rows), len(rows[0])
    for k in range(min(r, c), 0, -1):
        for ri in itertools.combinations(range(r), k):
            for ci in itertools.combinations(range(c), k):
                if det_cofactor([[rows[i][j] for j in ci] for i in ri]):
                    return k
    return 0


def test_identity():
    rk, ker = rank_kernel(QMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
    assert rk == 3 and ker == []


def test_mp_matrix_of_the_quadric_example():
    M = multiplication_matrix(fixtures.load("ex36").gens, 1).transpose()
    # rows: coefficient vectors of the 12 products, as displayed
    assert M.nrows == 10 and M.ncols == 12
    rk, ker = rank_kernel(M)
    assert rk == 9 and len(ker) == 3


def test_random_rank_against_minors():
    rng = random.Random(1)
    for _ in range(30):
        rows = [[rng.choice([0, 0, 1, -1, 2]) for _ in range(4)] for _ in range(6)]
        assert rank(rows) == minor_rank(rows)


@given(matrices)
def test_kernel_vectors(rows):
    M = QMatrix(rows)
    rk, ker = rank_kernel(M)
    assert rk + len(ker) == M.ncols
    for v in ker:
        assert all(x == 0 for x in M.apply(v))
    if ker:
        assert rank(ker) == len(ker)


@given(matrices)
def test_rref_pivots(rows):
    dense, piv = rref(QMatrix(rows))
    for r, p in zip(dense, piv):
        assert r[p] == 1
        assert all(r[j] == 0 for j in range(p))
    assert len(piv) == minor_rank(rows)


def test_solve_columns():
    cols = [{0: 1, 1: 1}, {1: 1, 2: 1}]
    sol = solve_columns(cols, [{0: 2, 1: 5, 2: 3}, {0: 1}])
    assert sol[0] == [2, 3]
    assert sol[1] is None


def test_det_diagonal():
    a, b, c = X + Y, Z, W - X
    zero = MPoly.zero(XYZW)
    assert det_bareiss([[a, zero, zero], [zero, b, zero], [zero, zero, c]]) == a * b * c


def test_det_needs_row_swap():
    zero = MPoly.zero(XYZW)
    assert det_bareiss([[zero, X], [Y, Z]]) == -(X * Y)


def test_det_of_displayed_moving_plane_matrix():
    M = [[fixtures.xyzw_poly(e) for e in row] for row in fixtures.EX38_MMATRIX]
    assert det_bareiss(M) == det_cofactor(M)


def test_det_commutes_with_specialization():
    rng = random.Random(2)
    for _ in range(10):
        size = rng.randint(2, 5)
        M = [[random_form(rng, 1, XYZW, density=0.6) for _ in range(size)] for _ in range(size)]
        D = det_bareiss(M)
        assert D == det_cofactor(M)
        pt = random_point(rng, 4)
        spec = QMatrix([[e(*pt) for e in row] for row in M])
        assert D(*pt) == det_bareiss(spec)


def test_det_q_matches_cofactor():
    rng = random.Random(4)
    for _ in range(20):
        n = rng.randint(1, 5)
        rows = [[Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(n)] for _ in range(n)]
        assert det_q(QMatrix(rows)) == det_cofactor(rows)
