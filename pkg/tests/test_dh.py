import math
import random
from fractions import Fraction

import numpy as np
import pytest
from scipy import integrate

from contactloc import (ExactScalar, I, LambdaZero, Poly, WeightedSphere, closed_form_volume,
                        dh_distribution, evaluate_pushforward, gaussian_tail_bound, i_power,
                        pushforward, quotient_pairing, regular_isotropy_order)
from contactloc.dh import (I_epsilon, I_epsilon_from_distribution, asymptotic_report,
                           fit_decay, gaussian_moments, local_polynomial_limit)

from conftest import random_sphere


def inverse_transform(Q, phi):
    """Oracle: int P(y) exp(i y phi) dy by adaptive quadrature, plus atoms."""
    total = 0j
    for k, p in enumerate(Q.pieces):
        a, b = float(Q.breakpoints[k]), float(Q.breakpoints[k + 1])
        if p.is_zero():
            continue
        re = integrate.quad(lambda y: (Q.reduced_values(y)[0] * np.exp(1j * y * phi)).real,
                            a, b, epsabs=0, epsrel=1e-12, limit=200)[0]
        im = integrate.quad(lambda y: (Q.reduced_values(y)[0] * np.exp(1j * y * phi)).imag,
                            a, b, epsabs=0, epsrel=1e-12, limit=200)[0]
        total += re + 1j * im
    for (loc, order), c in Q.atoms.items():
        # int delta^(e)(y - l) exp(i y phi) dy = (-i phi)^e exp(i l phi)
        total += complex(c) * (-1j * phi) ** order * np.exp(1j * float(loc) * phi)
    return total


def test_s3_flat_piece(s3):
    Q = dh_distribution(s3)
    assert Q.breakpoints == (Fraction(-1), Fraction(2, 3))
    assert Q.pieces == (Poly.const(I * ExactScalar(Fraction(8, 5), 0, 2)),)
    assert not Q.atoms
    # Q itself is sqrt(2 pi) P = i (2 pi)^(5/2) / (1 + w)
    assert Q(0.0)[0] == pytest.approx(1j * (2 * math.pi) ** 2.5 / 2.5, rel=1e-14)


def test_support_and_breakpoints():
    rng = random.Random(31)
    for _ in range(50):
        s = random_sphere(rng, regular=True)
        Q = dh_distribution(s)
        lam = s.lambdas
        assert Q.support[0] >= -max(lam) and Q.support[1] <= -min(lam)
        assert 0 not in Q.breakpoints
        assert Q.piece_index(Q.support[0] - 1) == -1 and Q.piece_index(Q.support[1]) == -1


def test_total_mass_is_volume():
    rng = random.Random(32)
    for _ in range(30):
        s = random_sphere(rng, regular=rng.random() < 0.5)
        Q = dh_distribution(s) if all(x != 0 for x in s.lambdas) else None
        if Q is None:
            continue
        assert Q.reduced_integral() == i_power(s.n) * 2 ** s.n * closed_form_volume(s)


def test_q0_identity():
    rng = random.Random(33)
    for _ in range(30):
        s = random_sphere(rng, regular=True)
        eta = Poly.monomial(rng.randint(-3, 3), u=rng.randint(0, 2), s=rng.randint(0, 2)) + 1
        Q = dh_distribution(s, eta)
        lhs = Q.exact_piece_at(0).constant_term() * regular_isotropy_order(s) \
            / ExactScalar(2, 0, 1) * i_power(-1)
        assert lhs == quotient_pairing(s, eta)


@pytest.mark.parametrize("seed", range(4))
def test_inverse_transform_recovers_pushforward(seed):
    rng = random.Random(40 + seed)
    s = random_sphere(rng, nmax=3, regular=True, bound=6)
    eta = Poly.monomial(1, u=rng.randint(0, 1), s=rng.randint(0, s.n + 2))
    Q = dh_distribution(s, eta)
    terms = pushforward(s, eta)
    for phi in np.linspace(-4.3, 5.1, 20):
        want = evaluate_pushforward(terms, phi)
        got = inverse_transform(Q, phi)
        assert abs(got - want) <= 1e-6 * max(1.0, abs(want))


def test_high_degree_class_gives_atoms(s3):
    Q = dh_distribution(s3, Poly.var("u") ** 3)
    assert Q.atoms and all(p.is_zero() for p in Q.pieces)
    for phi in (0.4, 1.7, -2.2):
        want = evaluate_pushforward(pushforward(s3, Poly.var("u") ** 3), phi)
        assert abs(inverse_transform(Q, phi) - want) <= 1e-9 * max(1.0, abs(want))


def test_lambda_zero_rejected():
    with pytest.raises(LambdaZero):
        dh_distribution(WeightedSphere((Fraction(1), Fraction(1)), (0, 1)))


def test_gaussian_moments_against_quad():
    for a, b in [(-1.0, 0.5), (0.3, 2.0), (-3.0, -0.2)]:
        for eps in (0.02, 0.3, 2.0):
            m = gaussian_moments(a, b, 5, eps)
            for k in range(6):
                ref = integrate.quad(lambda y: y ** k * math.exp(-y * y / (2 * eps)), a, b,
                                     epsabs=1e-14, epsrel=1e-12)[0]
                assert m[k] == pytest.approx(ref, rel=1e-10, abs=1e-13)


def test_I_epsilon_against_quad():
    rng = random.Random(34)
    for _ in range(8):
        s = random_sphere(rng, nmax=3, regular=True, bound=6)
        # total degree below n keeps the distribution free of point masses
        d = rng.randint(0, s.n - 1)
        eta = Poly.monomial(1, u=d - (k := rng.randint(0, d)), s=k)
        Q = dh_distribution(s, eta)
        assert not Q.atoms
        for eps in (0.2, 0.05):
            num = 0j
            for k in range(len(Q.pieces)):
                a, b = float(Q.breakpoints[k]), float(Q.breakpoints[k + 1])
                for part in (np.real, np.imag):
                    val = integrate.quad(lambda y: part(Q(y)[0]) * math.exp(-y * y / (2 * eps)),
                                         a, b, epsabs=0, epsrel=1e-13, limit=200)[0]
                    num += val if part is np.real else 1j * val
            ref = num / (2j * math.pi * math.sqrt(eps) * 2 * math.pi)
            got = I_epsilon_from_distribution(Q, eps)
            assert abs(got - ref) <= 1e-10 * abs(ref)


def test_I_epsilon_vanishes_for_large_epsilon(s3):
    vals = [abs(I_epsilon(s3, 1, e)) for e in (1e2, 1e4, 1e6)]
    assert vals[0] > vals[1] > vals[2]
    assert vals[2] < 1e-2


def test_I_epsilon_rejects_nonpositive(s3):
    with pytest.raises(ValueError):
        I_epsilon(s3, 1, 0.0)


def test_asymptotic_limit_and_decay(s3):
    r = asymptotic_report(s3, 1, [0.2, 0.1, 0.05, 0.025])
    assert r.limit == ExactScalar(Fraction(4, 5), 0, 1)
    assert all(x > y for x, y in zip(r.residuals, r.residuals[1:]))
    assert r.decay_exponent_estimate > 0 and r.r_squared > 0.99


def test_local_polynomial_for_sloped_piece():
    s = WeightedSphere((Fraction(1), Fraction(2), Fraction(3)), (-1, 1, 2))
    Q = dh_distribution(s)
    loc = local_polynomial_limit(Q)
    n0 = regular_isotropy_order(s)
    assert loc.constant_term() == quotient_pairing(s, 1) / n0
    r = asymptotic_report(s, 1, [0.1, 0.05, 0.025, 0.0125])
    assert r.residuals[-1] < 1e-3 * abs(complex(r.limit))


def test_fit_decay_recovers_parameters():
    eps = np.array([0.2, 0.1, 0.05, 0.025])
    c, A, r2 = fit_decay(eps, 3.0 * eps ** -0.5 * np.exp(-0.7 / eps))
    assert c == pytest.approx(0.7) and A == pytest.approx(3.0) and r2 == pytest.approx(1.0)


def test_tail_bound_grid():
    for n in range(5):
        for d in (0.25, 0.5, 1.0, 2.0, 3.0):
            for a in (0.25, 0.5, 1.0, 3.0, 10.0):
                num = integrate.quad(lambda x: x ** n * math.exp(-a * x * x), d, math.inf,
                                     epsabs=0, epsrel=1e-12)[0]
                assert num <= gaussian_tail_bound(n, d, a)


def test_tail_n1_closed_form():
    for d, a in [(0.5, 1.0), (2.0, 3.0), (1.0, 0.5)]:
        num = integrate.quad(lambda x: x * math.exp(-a * x * x), d, math.inf,
                             epsabs=0, epsrel=1e-13)[0]
        assert num == pytest.approx(math.exp(-a * d * d) / (2 * a), rel=1e-10)
