import math
import random
from fractions import Fraction

import numpy as np
import pytest
from scipy import integrate

from contactloc import (McConfig, WeightedSphere, closed_form_volume, dh_distribution,
                        mc_contact_volume, mc_dh_histogram)
from contactloc.mc import CHUNK, chunk_rng, default_workers, round_sphere_volume, sample_sphere

from conftest import random_sphere


def sph(w, beta):
    return WeightedSphere(tuple(Fraction(x) for x in w), tuple(beta))


def test_config_validation():
    with pytest.raises(ValueError):
        McConfig(samples=0)
    with pytest.raises(ValueError):
        McConfig(seed=-1)
    with pytest.raises(ValueError):
        McConfig(workers=0)


def test_default_workers(monkeypatch):
    monkeypatch.setenv("CONTACTLOC_THREADS", "3")
    assert default_workers() == 3
    monkeypatch.delenv("CONTACTLOC_THREADS")
    assert default_workers() == 1


@pytest.mark.parametrize("n", [1, 2, 4])
def test_uniform_sampler_moments(n):
    z = sample_sphere(n, chunk_rng(5, 0), 200_000)
    r2 = np.abs(z) ** 2
    assert np.allclose(r2.sum(axis=1), 1.0)
    # |z_0|^2 is Beta(1, n): mean 1/(n+1), sd sqrt(n / ((n+1)^2 (n+2)))
    sd = math.sqrt(n / ((n + 1) ** 2 * (n + 2)) / len(r2))
    assert abs(r2[:, 0].mean() - 1 / (n + 1)) < 4 * sd
    # phases are uniform
    assert abs(np.exp(1j * np.angle(z[:, 0])).mean()) < 4 / math.sqrt(len(z))


def test_volume_weights_2_3_5():
    s = sph([2, 3, 5], [0, 0, 0])
    est = mc_contact_volume(s, McConfig(seed=1, samples=400_000))
    assert abs(est.mean_weight - 1 / 30) <= 3 * est.mean_weight_stderr
    assert abs(est.value - float(closed_form_volume(s))) <= 3 * est.stderr


def test_random_volumes():
    rng = random.Random(51)
    for k in range(20):
        s = random_sphere(rng, nmax=3, bound=5)
        est = mc_contact_volume(s, McConfig(seed=100 + k, samples=100_000))
        assert abs(est.value - float(closed_form_volume(s))) <= 4 * est.stderr


def test_stderr_scaling():
    s = sph([1, 2], [0, 0])
    a = mc_contact_volume(s, McConfig(seed=3, samples=4 * CHUNK))
    b = mc_contact_volume(s, McConfig(seed=3, samples=8 * CHUNK))
    assert a.stderr / b.stderr == pytest.approx(math.sqrt(2), rel=0.05)


def test_determinism_across_workers(s3):
    cfg = dict(seed=7, samples=3 * CHUNK + 123)
    v = [mc_contact_volume(s3, McConfig(workers=k, **cfg)) for k in (1, 2, 4)]
    assert v[0] == v[1] == v[2]
    h = [mc_dh_histogram(s3, McConfig(workers=k, **cfg)) for k in (1, 4)]
    assert np.array_equal(h[0].density, h[1].density)
    assert np.array_equal(h[0].stderr, h[1].stderr)


def test_seed_changes_result(s3):
    a = mc_contact_volume(s3, McConfig(seed=1, samples=CHUNK))
    b = mc_contact_volume(s3, McConfig(seed=2, samples=CHUNK))
    assert a.value != b.value


def test_histogram_total_mass(s3):
    h = mc_dh_histogram(s3, McConfig(seed=4, samples=200_000))
    want = 2 * float(closed_form_volume(s3))
    assert h.total_mass == pytest.approx(want, rel=0.01)
    assert h.outside_mass == 0.0
    assert np.sum(h.density * np.diff(h.edges)) == pytest.approx(h.total_mass)


def test_histogram_matches_density(s3):
    h = mc_dh_histogram(s3, McConfig(seed=9, samples=500_000, histogram_bins=20))
    flat = (2 * math.pi) ** 2 / 2.5
    assert np.all(np.abs(h.density - flat) <= 5 * h.stderr)


def test_histogram_sloped_profile():
    s = sph([1, 2, 3], [-1, 1, 2])
    Q = dh_distribution(s)
    h = mc_dh_histogram(s, McConfig(seed=11, samples=500_000, histogram_bins=25))
    expected = (Q.bin_averages(h.edges) / (1j) ** s.n).real
    cuts = [float(b) for b in Q.breakpoints]
    ok = [k for k in range(len(h.density))
          if not any(h.edges[k] < c < h.edges[k + 1] for c in cuts) and h.stderr[k] > 0]
    assert all(abs(h.density[k] - expected[k]) <= 5 * h.stderr[k] + 1e-12 for k in ok)


def test_degenerate_histogram():
    s = sph([1, 1], [1, 1])
    h = mc_dh_histogram(s, McConfig(seed=2, samples=50_000, histogram_bins=5))
    assert h.edges[0] == -1.5 and h.edges[-1] == -0.5
    assert np.count_nonzero(h.density) == 1
    assert h.total_mass == pytest.approx(2 * float(closed_form_volume(s)), rel=1e-12)


def _alpha_coeffs(theta, w1, w2):
    """alpha_w = a1 dphi1 + a2 dphi2 in Hopf coordinates."""
    c2, s2 = np.cos(theta) ** 2, np.sin(theta) ** 2
    h = w1 * c2 + w2 * s2
    return c2 / h, s2 / h


def _volume_density(theta, w1, w2, d=1e-6):
    """Coefficient of dphi1 ^ dtheta ^ dphi2 in alpha ^ d alpha, by central differences."""
    a1, a2 = _alpha_coeffs(theta, w1, w2)
    p1, p2 = _alpha_coeffs(theta + d, w1, w2)
    m1, m2 = _alpha_coeffs(theta - d, w1, w2)
    return a1 * (p2 - m2) / (2 * d) - a2 * (p1 - m1) / (2 * d)


@pytest.mark.parametrize("w1,w2", [(1.0, 1.0), (1.5, 1.0), (2.0, 3.0), (0.3, 7.0)])
def test_volume_form_density_n1(w1, w2):
    """alpha_w ^ d alpha_w = h^-2 alpha_1 ^ d alpha_1, checked pointwise and integrated."""
    th = np.linspace(0.05, 1.5, 30)
    h = w1 * np.cos(th) ** 2 + w2 * np.sin(th) ** 2
    ratio = _volume_density(th, w1, w2) / _volume_density(th, 1.0, 1.0)
    assert np.allclose(ratio, h ** -2, rtol=1e-7)
    total = 4 * math.pi ** 2 * integrate.quad(lambda t: _volume_density(t, w1, w2), 0,
                                              math.pi / 2, epsrel=1e-10)[0]
    # vol = (1/2) int alpha ^ d alpha for n = 1
    s = WeightedSphere((Fraction(w1).limit_denominator(), Fraction(w2).limit_denominator()), (0, 0))
    assert total / 2 == pytest.approx(float(closed_form_volume(s)), rel=1e-7)
    assert round_sphere_volume(1) == pytest.approx(2 * math.pi ** 2)
