"""Verification suite behind ``contactloc verify``.

Each check returns a :class:`Check` with the measured and expected values;
the suite passes only if every check does.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List

import numpy as np
from scipy import integrate

from .dh import asymptotic_report, dh_distribution, gaussian_tail_bound
from .exact import i_power
from .localization import (closed_form_volume, contact_volume, localization_identity_check,
                           localization_identity_sum, pair_alpha_eta)
from .mc import McConfig, mc_contact_volume, mc_dh_histogram
from .poly import Poly
from .residue import VOLUME_OF_G, quotient_pairing
from .sphere import (S, U, WeightedSphere, check_zero_regular, critical_circles,
                     regular_isotropy_order)


@dataclass
class Check:
    name: str
    passed: bool
    measured: str
    expected: str

    def __post_init__(self):
        self.passed = bool(self.passed)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: measured {self.measured}; expected {self.expected}"


def _check(name: str, fn: Callable[[], Check]) -> Check:
    try:
        return fn()
    except Exception as exc:  # a crash is a failed check, not a crashed suite
        return Check(name, False, f"{type(exc).__name__}: {exc}", "no error")


def run_suite(sphere: WeightedSphere, eta: Poly, mc: McConfig, quick: bool = False,
              perturb_euler: Fraction = Fraction(0),
              epsilons=(0.2, 0.1, 0.05, 0.025)) -> List[Check]:
    sigmas = 5.0 if quick else 3.0
    checks: List[Check] = []

    def volume():
        v, c = contact_volume(sphere), closed_form_volume(sphere)
        return Check("contact volume (localization vs closed form)", v == c, str(v), str(c))

    def identity():
        val = localization_identity_sum(sphere.w, sphere.beta, perturb_euler)
        ok = localization_identity_check(sphere, perturb_euler)
        return Check("localization identity", ok, str(val), str((-1) ** sphere.n))

    def restriction():
        gen = sphere.ideal_generator()
        bad = [c.index for c in critical_circles(sphere)
               if not c.restrict(gen).is_zero() or c.euler_class.evaluate(u=1) == 0]
        return Check("restrictions kill the relation; Euler classes invertible",
                     not bad, f"failing circles {bad}", "none")

    def polynomiality():
        p1 = pair_alpha_eta(sphere, eta)
        p2 = pair_alpha_eta(sphere, eta + (U + S * 3) * sphere.ideal_generator())
        return Check("pairing polynomial and representative independent", p1 == p2,
                     str(p2), str(p1))

    def cones():
        a = quotient_pairing(sphere, eta, cone=+1)
        b = quotient_pairing(sphere, eta, cone=-1)
        return Check("quotient pairing independent of cone", a == b, str(b), str(a))

    def q0():
        Q = dh_distribution(sphere, eta)
        n0 = regular_isotropy_order(sphere)
        lhs = (Q.exact_piece_at(0).constant_term() * n0 / VOLUME_OF_G) * i_power(-1)
        rhs = quotient_pairing(sphere, eta)
        return Check("Q(0) identity vs residue formula", lhs == rhs, str(lhs), str(rhs))

    def support():
        Q = dh_distribution(sphere, eta)
        lam = sphere.lambdas
        ok = Q.support[0] >= -max(lam) and Q.support[1] <= -min(lam) and 0 not in Q.breakpoints
        return Check("DH support inside -mu(M), 0 not a breakpoint", ok,
                     f"[{Q.support[0]}, {Q.support[1]}]", f"within [{-max(lam)}, {-min(lam)}]")

    def mass():
        Q = dh_distribution(sphere, 1)
        got = Q.reduced_integral()
        want = i_power(sphere.n) * 2 ** sphere.n * closed_form_volume(sphere)
        return Check("DH total mass vs contact volume", got == want, str(got), str(want))

    def histogram():
        h = mc_dh_histogram(sphere, mc)
        Q = dh_distribution(sphere, 1)
        expected = (Q.bin_averages(h.edges) / complex(i_power(sphere.n))).real
        cuts = [float(b) for b in Q.breakpoints]
        interior = [k for k in range(len(h.density))
                    if not any(h.edges[k] < c < h.edges[k + 1] for c in cuts)]
        rel = max(abs(h.density[k] - expected[k]) / abs(expected[k]) for k in interior)
        tol = max(0.02, max(sigmas * h.stderr[k] / abs(expected[k]) for k in interior))
        return Check("MC DH histogram vs exact density (L_inf rel)", rel <= tol,
                     f"{rel:.3e}", f"<= {tol:.3e}")

    def mc_volume():
        est = mc_contact_volume(sphere, mc)
        exact = float(closed_form_volume(sphere))
        dev = abs(est.value - exact)
        return Check(f"MC contact volume within {sigmas:g} sigma", dev <= sigmas * est.stderr,
                     f"{est.value:.15g} +- {est.stderr:.3g}", f"{exact:.15g}")

    def determinism():
        small = McConfig(seed=mc.seed, samples=min(mc.samples, 200_000), workers=1,
                         histogram_bins=mc.histogram_bins)
        a = mc_dh_histogram(sphere, small)
        b = mc_dh_histogram(sphere, McConfig(small.seed, small.samples, 4, small.histogram_bins))
        ok = np.array_equal(a.density, b.density) and np.array_equal(a.stderr, b.stderr)
        return Check("MC bitwise identical for 1 and 4 workers", ok, str(ok), "True")

    def asymptotics():
        r = asymptotic_report(sphere, eta, epsilons)
        mono = all(x > y for x, y in zip(r.residuals, r.residuals[1:]))
        ok = mono and r.decay_exponent_estimate > 0 and r.r_squared > 0.99
        return Check("I(eps) decay signature", ok,
                     f"monotone={mono}, c={r.decay_exponent_estimate:.4g}, R2={r.r_squared:.5f}",
                     "monotone, c > 0, R2 > 0.99")

    def tail():
        worst = -math.inf
        for n in range(5):
            for d in (0.5, 1.0, 2.0):
                for a in (0.5, 1.0, 3.0):
                    num = integrate.quad(lambda x: x ** n * math.exp(-a * x * x), d, math.inf,
                                         epsabs=1e-14, epsrel=1e-12)[0]
                    worst = max(worst, num - gaussian_tail_bound(n, d, a))
        return Check("Gaussian tail bound dominates quadrature", worst <= 0,
                     f"max(integral - bound) = {worst:.3e}", "<= 0")

    tasks = [("contact volume", volume), ("localization identity", identity),
             ("restriction", restriction), ("polynomiality", polynomiality)]
    if check_zero_regular(sphere):
        tasks += [("cone independence", cones), ("Q(0) identity", q0), ("support", support),
                  ("total mass", mass), ("histogram", histogram), ("asymptotics", asymptotics)]
    tasks += [("MC volume", mc_volume), ("determinism", determinism), ("tail bound", tail)]
    for name, fn in tasks:
        checks.append(_check(name, fn))
    return checks
