import math
import random
from fractions import Fraction

import numpy as np
import pytest

from contactloc import (ExactScalar, LambdaZero, LocalizationTerm, MathPreconditionError, Poly,
                        RationalFn, S, U, WeightedSphere, jkres, pushforward, quotient_pairing,
                        regular_isotropy_order)
from contactloc.residue import term_residue

from conftest import random_sphere

PHI = Poly.var("phi")


def term(lam, num, den):
    return LocalizationTerm(0, Fraction(lam), RationalFn(Poly.coerce(num), Poly.coerce(den), "phi"))


def test_jkres_examples():
    w = Fraction(3, 2)
    c = ExactScalar(4, 0, 2) / (1 + w)
    assert jkres([term(1 / w, c, PHI)]) == c
    assert jkres([term(-1, -c, PHI)]).is_zero()
    assert jkres([term(2, PHI, PHI)]).is_zero()


def test_jkres_rejects_zero_exponent():
    with pytest.raises(LambdaZero):
        jkres([term(0, 1, PHI)])


def _contour(terms, nodes=4096, radius=1.0):
    th = 2 * np.pi * np.arange(nodes) / nodes
    z = radius * np.exp(1j * th)
    f = sum(np.array([t.evaluate(x) for x in z]) for t in terms)
    return np.mean(f * z)


def test_jkres_against_contour_integral():
    rng = random.Random(21)
    for _ in range(20):
        s = random_sphere(rng, nmax=3, regular=True, bound=8)
        eta = Poly.monomial(1, u=rng.randint(0, 2), s=rng.randint(0, 3)) + rng.randint(-3, 3)
        pos = [t for t in pushforward(s, eta) if t.exponent_lambda > 0]
        exact = complex(jkres(pos))
        assert abs(_contour(pos) - exact) <= 1e-9 * max(1.0, abs(exact))


@pytest.mark.parametrize("w", [Fraction(3, 2), Fraction(5, 7), Fraction(1), Fraction(11, 3)])
def test_s3_pairing(w):
    s = WeightedSphere((w, Fraction(1)), (-1, 1))
    assert quotient_pairing(s, 1) == ExactScalar(2 / (1 + w), 0, 1)


def test_s3_default_value(s3):
    assert quotient_pairing(s3, 1) == ExactScalar(Fraction(4, 5), 0, 1)
    assert quotient_pairing(s3, s3.ideal_generator()).is_zero()


def test_depends_only_on_common_constant_term():
    """On S^3(w, 1) any class pairs to 2 pi c / (1 + w), c = eta(0, 0)."""
    rng = random.Random(22)
    for _ in range(100):
        w = Fraction(rng.randint(1, 20), rng.randint(1, 20))
        s = WeightedSphere((w, Fraction(1)), (-1, 1))
        c = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
        eta = Poly.const(c)
        for _ in range(rng.randint(0, 4)):
            eta = eta + Poly.monomial(rng.randint(-5, 5), u=rng.randint(0, 3), s=rng.randint(0, 3))
        eta = eta - Poly.const(eta.constant_term() - c) if not eta.is_zero() else eta
        assert quotient_pairing(s, eta) == ExactScalar(2 * c / (1 + w), 0, 1)


def test_cone_independence():
    rng = random.Random(23)
    for _ in range(100):
        s = random_sphere(rng, regular=True)
        eta = Poly.monomial(Fraction(rng.randint(-4, 4)), u=rng.randint(0, 2), s=rng.randint(0, s.n))
        eta = eta + rng.randint(-3, 3)
        assert quotient_pairing(s, eta, cone=1) == quotient_pairing(s, eta, cone=-1)


def test_isotropy_factor():
    base = WeightedSphere((Fraction(3, 2), Fraction(1)), (-1, 1))
    doubled = WeightedSphere((Fraction(3, 2), Fraction(1)), (-2, 2))
    assert regular_isotropy_order(doubled) == 2
    # same quotient; the gcd factor undoes the doubled circle
    assert quotient_pairing(doubled, 1) == quotient_pairing(base, 1)


def test_preconditions():
    with pytest.raises(LambdaZero):
        quotient_pairing(WeightedSphere((Fraction(1), Fraction(1)), (0, 1)), 1)
    with pytest.raises(MathPreconditionError):
        quotient_pairing(WeightedSphere((Fraction(1), Fraction(2)), (1, 3)), 1)
