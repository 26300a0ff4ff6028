"""Random search over saturated Hilbert-Burch parametrizations.

For each degree type mu, draws random 4x3 matrices, keeps those whose minors
generate a saturated ideal, and records whether the moving-surface row count
C(d+2, 2) reaches dim Syz_d for d = n-2 and d = n-1.

    python scripts/moving_degree_search.py --trials 20 --seed 1
"""
import argparse
import random
from collections import Counter

from implicitize.fixtures import hilbert_burch_gens
from implicitize.ideal import Parametrization
from implicitize.mubasis import is_saturated
from implicitize.pipeline import moving_degree_search
from implicitize.poly import MPoly, monomial_basis

TYPES = ((1, 1, 1), (1, 1, 2), (1, 2, 2), (1, 1, 3), (2, 2, 2))


def random_form(rng, k):
    return MPoly.from_vector([rng.randint(-5, 5) for _ in monomial_basis(k, 3)], k)


def search(mu, trials, rng):
    tally = Counter()
    while sum(tally.values()) < trials:
        A = [[random_form(rng, m) for m in mu] for _ in range(4)]
        gens = hilbert_burch_gens(A)
        if not all(gens) or not is_saturated(gens):
            continue
        res = moving_degree_search(Parametrization(*gens))
        tally[tuple(d for d, v in sorted(res.items()) if v["holds"])] += 1
    return tally


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    for mu in TYPES:
        n = sum(mu)
        tally = search(mu, args.trials, rng)
        shown = ", ".join(f"holds for d in {list(k) or 'none'}: {v}" for k, v in sorted(tally.items()))
        print(f"mu = {mu}  n = {n}  {shown}")


if __name__ == "__main__":
    main()
