from fractions import Fraction
import random

import pytest
from hypothesis import strategies as st

from contactloc import WeightedSphere


def random_weights(rng: random.Random, n: int, bound: int = 50):
    return [Fraction(rng.randint(1, bound), rng.randint(1, bound)) for _ in range(n + 1)]


def random_sphere(rng: random.Random, nmax: int = 4, bound: int = 50, regular: bool = False,
                  beta_bound: int = 6) -> WeightedSphere:
    """Random sphere with distinct lambdas (and 0 regular if asked)."""
    while True:
        n = rng.randint(1, nmax)
        w = random_weights(rng, n, bound)
        beta = [rng.randint(-beta_bound, beta_bound) for _ in range(n + 1)]
        lam = [Fraction(b) / x for b, x in zip(beta, w)]
        if len(set(lam)) != len(lam):
            continue
        if regular and (0 in lam or min(lam) > 0 or max(lam) < 0):
            continue
        return WeightedSphere(tuple(w), tuple(beta))


@pytest.fixture
def s3():
    return WeightedSphere((Fraction(3, 2), Fraction(1)), (-1, 1))


small_fraction = st.fractions(min_value=Fraction(1, 20), max_value=20, max_denominator=20)
