"""Randomized identities, each checked on at least TRIALS exact instances.

The ``check_*`` functions are shared with the acceptance suite; each returns
the number of instances it verified.
"""
import random
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from conftest import random_form, random_hb_matrix, random_point
from implicitize.errors import ImplicitizationError
from implicitize.ideal import (Parametrization, basepoint_degree, bp_report, dimension_identity_holds, hilbert_dim, ideal_dim,
                               syzygies_degree, syzygy_residual)
from implicitize.linalg import QMatrix, det_bareiss, rank_kernel
from implicitize.moving import assemble_and_det
from implicitize.mubasis import (MuBasis, compute_mu_basis, expected_degree, is_saturated, minor_variety_empty,
                                 signed_minors)
from implicitize.poly import STU, MPoly, monomial_basis
from implicitize.resultant import (ResultantProblem, macaulay_resultant_specialized, macaulay_resultant_symbolic,
                                   power_extract)

TRIALS = 50


def plant_base_points(rng, gens, count):
    """Replace the forms by random forms through ``count`` distinct random points."""
    n = gens[0].degree()
    pts = set()
    while len(pts) < count:
        pts.add((rng.randint(-3, 3), rng.randint(-3, 3), 1))
    if not pts:
        return gens
    basis = monomial_basis(n, 3)
    evals = QMatrix([[MPoly.monomial(STU, m)(*pt) for m in basis] for pt in sorted(pts)])
    _, kernel = rank_kernel(evals)
    out = []
    for _ in gens:
        weights = [rng.randint(-9, 9) for _ in kernel]
        vec = [sum(w * v[j] for w, v in zip(weights, kernel)) for j in range(len(basis))]
        out.append(MPoly.from_vector(vec, n))
    return out


def random_parametrization(rng, n, base_points=0):
    while True:
        gens = plant_base_points(rng, [random_form(rng, n, density=0.8) for _ in range(4)], base_points)
        if all(gens) and all(g.is_homogeneous(n) for g in gens):
            return Parametrization(*gens)


def random_lci_matrix(rng, mu):
    """A Hilbert-Burch matrix whose minors have no common zero in any pair of rows."""
    while True:
        A = random_hb_matrix(rng, mu)
        gens = signed_minors(A)
        if all(gens) and minor_variety_empty(A, 1):
            return A, Parametrization(*gens)


def check_dimension_identity(rng, trials=TRIALS):
    for k in range(trials):
        p = random_parametrization(rng, rng.randint(2, 3), base_points=k % 3)
        for d in range(p.n):
            assert dimension_identity_holds(p.gens, d)
    return trials


def check_syzygy_residual(rng, trials=TRIALS):
    for k in range(trials):
        p = random_parametrization(rng, 2, base_points=k % 4)
        for d in range(3):
            for syz in syzygies_degree(p.gens, d).basis:
                assert syzygy_residual(p.gens, syz) == 0
    return trials


def check_vanishing_on_image(rng, trials=TRIALS):
    """det of the moving-surface matrix, and so P, vanishes on image points."""
    done = 0
    while done < trials:
        p = random_parametrization(rng, 2, base_points=done % 2)
        rep = bp_report(p)
        if not rep.all_ok:
            continue
        out = assemble_and_det(p, report=rep)
        assert out.det == det_bareiss(out.matrix.as_pmatrix())
        for _ in range(3):
            img = p.image_point(random_point(rng, 3))
            assert out.det(*img) == 0 and out.P(*img) == 0
        assert out.P.degree() == p.n ** 2 - rep.i
        done += 1
    return done


def monomial_count(exps, k):
    return sum(1 for m in monomial_basis(k, 3) if any(all(a >= b for a, b in zip(m, g)) for g in exps))


def check_hilbert_monomial(rng, trials=TRIALS):
    for _ in range(trials):
        exps = [tuple(rng.randint(0, 4) for _ in range(3)) for _ in range(rng.randint(1, 5))]
        gens = [MPoly.monomial(STU, e) for e in exps]
        for k in range(8):
            assert ideal_dim(gens, k) == monomial_count(exps, k)
            assert hilbert_dim(gens, k) == len(monomial_basis(k, 3)) - monomial_count(exps, k)
    return trials


def random_problem(rng):
    mu = rng.choice([(1, 1, 2), (1, 2, 2), (1, 1, 3)])
    A = random_hb_matrix(rng, mu)
    return ResultantProblem.from_mu_basis(MuBasis(A=tuple(map(tuple, A)), mu=mu))


def check_interpolation(rng, trials=TRIALS):
    done = 0
    while done < trials:
        prob = random_problem(rng)
        try:
            F = macaulay_resultant_symbolic(prob, rng=rng)
        except ImplicitizationError:
            continue
        pt = random_point(rng, 4)
        assert F(*pt) == macaulay_resultant_specialized(*prob.specialize(pt), degrees=prob.mu)
        done += 1
    return done


def check_degree_formula(rng, trials=TRIALS):
    """deg V(I) = (n^2 + sum mu^2) / 2 for saturated Hilbert-Burch ideals."""
    for k in range(trials):
        mu = (1, 1, 1) if k % 3 else (1, 1, 2)
        _, p = random_lci_matrix(rng, mu)
        assert is_saturated(p.gens)
        mb = compute_mu_basis(p.gens)
        assert mb.mu == mu
        assert basepoint_degree(p.gens) == expected_degree(p.n, mu)
    return trials


def check_reassembly(rng, trials=TRIALS):
    """Res(p, q, r) = c P^h prod(l^e), from the pipeline and from constructed powers."""
    done = 0
    while done < trials:
        if done % 2:
            mu = rng.choice([(1, 1, 1), (1, 1, 2)])
            A, p = random_lci_matrix(rng, mu)
            prob = ResultantProblem.from_mu_basis(MuBasis(tuple(map(tuple, A)), mu))
            F = macaulay_resultant_symbolic(prob)
            dec = power_extract(F)
            assert dec.h * dec.P.degree() + dec.extraneous_total == F.degree() == prob.degree
        else:
            P = random_form(rng, rng.randint(2, 3), ("X", "Y", "Z", "W"), density=0.7)
            if len(P.terms) < 3:
                continue
            h = rng.randint(1, 3)
            F = (P ** h).scale(Fraction(rng.randint(1, 9), rng.randint(1, 4)))
            dec = power_extract(F)
            if dec.extraneous:
                continue   # P happened to have a linear factor
            assert dec.h == h
        assert dec.reassemble() == F
        done += 1
    return done


def test_dimension_identity():
    assert check_dimension_identity(random.Random(101)) >= TRIALS


def test_syzygy_residual():
    assert check_syzygy_residual(random.Random(102)) >= TRIALS


def test_vanishing_on_image():
    assert check_vanishing_on_image(random.Random(103)) >= TRIALS


def test_hilbert_monomial():
    assert check_hilbert_monomial(random.Random(104)) >= TRIALS


def test_interpolation():
    assert check_interpolation(random.Random(105)) >= TRIALS


def test_degree_formula():
    assert check_degree_formula(random.Random(106)) >= TRIALS


def test_reassembly():
    assert check_reassembly(random.Random(107)) >= TRIALS


@given(st.integers(0, 10 ** 6))
def test_planted_base_points_are_seen(seed):
    # special weights can add base points, never remove them
    rng = random.Random(seed)
    p = random_parametrization(rng, 2, base_points=seed % 3)
    assert hilbert_dim(p.gens, 6) == basepoint_degree(p.gens) >= seed % 3
