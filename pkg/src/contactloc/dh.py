"""Duistermaat-Heckman distribution, the Gaussian-damped integral
``I(eps)``, its small-``eps`` asymptotics, and the Gaussian tail bound.

Fourier convention: ``(F f)(y) = (2 pi)^(-1/2) int f(phi) exp(-i y phi) dphi``.
Every pole ``phi**-p`` is regularized as ``(phi - i0)**-p``, whose transform is

    F[(phi - i0)^-p](t) = (2 pi)^(1/2) * i * (-i t)^(p-1) / (p-1)! * H(-t).

The same prescription is used for every term, so the distributional sum is the
true transform of the (entire) pushforward and is compactly supported.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import numpy as np
from numpy.polynomial import hermite
from scipy import special

from .errors import LambdaZero
from .exact import ExactScalar, ONE, ZERO, I, TWO_PI, i_power
from .localization import LocalizationTerm, pushforward
from .poly import Poly, ZERO_POLY
from .residue import VOLUME_OF_G, quotient_pairing
from .sphere import WeightedSphere, regular_isotropy_order

Y = Poly.var("y")
SQRT_2PI = math.sqrt(2 * math.pi)


@dataclass(frozen=True)
class PiecewisePolynomial:
    """``Q(y) = sqrt(2 pi) * P(y)`` with ``P`` stored exactly.

    ``pieces[k]`` is the polynomial in ``y`` on ``[breakpoints[k],
    breakpoints[k+1])``; ``P`` vanishes outside the support.  ``atoms`` maps
    ``(location, order)`` to the coefficient of ``delta^(order)(y - location)``;
    these only appear when ``eta`` has high degree.  Values exactly at
    breakpoints are not meaningful.
    """

    breakpoints: Tuple[Fraction, ...]
    pieces: Tuple[Poly, ...]
    atoms: Dict[Tuple[Fraction, int], ExactScalar] = field(default_factory=dict)

    @property
    def support(self) -> Tuple[Fraction, Fraction]:
        return self.breakpoints[0], self.breakpoints[-1]

    def piece_index(self, y) -> int:
        """Index of the piece containing ``y``, or -1 outside the support."""
        b = self.breakpoints
        if y < b[0] or y >= b[-1]:
            return -1
        k = 0
        while y >= b[k + 1]:
            k += 1
        return k

    def exact_piece_at(self, y) -> Poly:
        k = self.piece_index(y)
        return ZERO_POLY if k < 0 else self.pieces[k]

    def degree(self) -> int:
        return max((p.degree() for p in self.pieces), default=-1)

    def reduced_values(self, y) -> np.ndarray:
        """``P(y)`` (without the ``sqrt(2 pi)``) at the points ``y``."""
        y = np.atleast_1d(np.asarray(y, dtype=float))
        out = np.zeros(y.shape, dtype=complex)
        edges = [float(b) for b in self.breakpoints]
        for k, p in enumerate(self.pieces):
            mask = (y >= edges[k]) & (y < edges[k + 1])
            if mask.any():
                out[mask] = _polyval(p, y[mask])
        return out

    def __call__(self, y) -> np.ndarray:
        return SQRT_2PI * self.reduced_values(y)

    def bin_averages(self, edges) -> np.ndarray:
        """Average of ``P`` over each bin ``[edges[k], edges[k+1]]``."""
        edges = np.asarray(edges, dtype=float)
        nodes, weights = np.polynomial.legendre.leggauss(max(self.degree(), 0) // 2 + 2)
        cuts = [float(b) for b in self.breakpoints]
        out = np.zeros(len(edges) - 1, dtype=complex)
        for k, (lo, hi) in enumerate(zip(edges[:-1], edges[1:])):
            pts = [lo] + [c for c in cuts if lo < c < hi] + [hi]
            total = 0j
            for a, b in zip(pts[:-1], pts[1:]):
                mid, half = (a + b) / 2, (b - a) / 2
                # interior nodes only, so breakpoint values never enter
                total += half * np.dot(weights, self.reduced_values(mid + half * nodes))
            out[k] = total / (hi - lo)
        return out

    def reduced_integral(self) -> ExactScalar:
        """Exact ``int P(y) dy`` (order-0 atoms included)."""
        total = ZERO
        for k, p in enumerate(self.pieces):
            a, b = self.breakpoints[k], self.breakpoints[k + 1]
            for e, c in _ycoeffs(p).items():
                total = total + c * ((Fraction(b) ** (e + 1) - Fraction(a) ** (e + 1)) / (e + 1))
        for (loc, order), c in self.atoms.items():
            if order == 0:
                total = total + c
        return total


def _ycoeffs(p: Poly) -> Dict[int, ExactScalar]:
    return p.scalar_coefficients("y") if not p.is_zero() else {}


def _polyval(p: Poly, y: np.ndarray) -> np.ndarray:
    coeffs = _ycoeffs(p)
    if not coeffs:
        return np.zeros_like(y, dtype=complex)
    arr = np.zeros(max(coeffs) + 1, dtype=complex)
    for e, c in coeffs.items():
        arr[e] = complex(c)
    return np.polynomial.polynomial.polyval(y, arr)


def _term_transform(term: LocalizationTerm):
    """Half-line polynomial (valid on ``y < ell``) and atoms of one term, both
    without the common ``sqrt(2 pi)``."""
    ell = Fraction(term.exponent_lambda)
    t = Y - ell
    piece = ZERO_POLY
    atoms = {}
    for e, c in term.amplitude.laurent().items():
        if e < 0:
            p = -e
            piece = piece + (I * c) * ((-I) * t) ** (p - 1) * Fraction(1, math.factorial(p - 1))
        else:
            atoms[(ell, e)] = c * i_power(e)
    return ell, piece, atoms


def transform_terms(terms: Sequence[LocalizationTerm]) -> PiecewisePolynomial:
    """Fourier transform of ``sum_j exp(i ell_j phi) A_j(phi)``."""
    parts = [_term_transform(t) for t in terms]
    breaks = tuple(sorted({ell for ell, _, _ in parts}))
    left = ZERO_POLY
    for _, piece, _ in parts:
        left = left + piece
    if not left.is_zero():
        raise ArithmeticError(f"transform does not vanish left of the support: {left}")
    pieces = []
    for k in range(len(breaks) - 1):
        acc = ZERO_POLY
        for ell, piece, _ in parts:
            if ell > breaks[k]:
                acc = acc + piece
        pieces.append(acc)
    atoms: Dict[Tuple[Fraction, int], ExactScalar] = {}
    for _, _, a in parts:
        for key, c in a.items():
            atoms[key] = atoms.get(key, ZERO) + c
    atoms = {k: c for k, c in atoms.items() if not c.is_zero()}
    if len(breaks) == 1:
        breaks = breaks + breaks
    return PiecewisePolynomial(breaks, tuple(pieces), atoms)


def dh_distribution(sphere: WeightedSphere, eta=1) -> PiecewisePolynomial:
    """``Q^eta = F[pushforward of eta ^ exp(i d_G alpha)]`` as a piecewise polynomial."""
    for j, lam in enumerate(sphere.lambdas):
        if lam == 0:
            raise LambdaZero(f"lambda_{j} = 0")
    return transform_terms(pushforward(sphere, eta))


# -- Gaussian integrals -------------------------------------------------------

def gaussian_moments(a: float, b: float, kmax: int, eps: float) -> np.ndarray:
    """``M_k = int_a^b y^k exp(-y^2 / (2 eps)) dy`` for ``k = 0..kmax``.

    Upward recursion ``M_k = (k-1) eps M_{k-2} - eps [y^(k-1) g]_a^b``.
    """
    s = math.sqrt(2 * eps)
    if a >= 0:
        m0 = special.erfc(a / s) - special.erfc(b / s)
    elif b <= 0:
        m0 = special.erfc(-b / s) - special.erfc(-a / s)
    else:
        m0 = special.erf(b / s) - special.erf(a / s)
    ga, gb = math.exp(-a * a / (2 * eps)), math.exp(-b * b / (2 * eps))
    m = np.zeros(kmax + 1)
    m[0] = math.sqrt(math.pi * eps / 2) * m0
    if kmax >= 1:
        m[1] = eps * (ga - gb)
    for k in range(2, kmax + 1):
        m[k] = (k - 1) * eps * m[k - 2] - eps * (b ** (k - 1) * gb - a ** (k - 1) * ga)
    return m


def _gaussian_derivative(order: int, y: float, eps: float) -> float:
    """``d^order/dy^order exp(-y^2 / (2 eps))`` via Hermite polynomials."""
    s = math.sqrt(2 * eps)
    c = np.zeros(order + 1)
    c[order] = 1.0
    return (-1) ** order * s ** (-order) * hermite.hermval(y / s, c) * math.exp(-y * y / (2 * eps))


def gaussian_pairing(Q: PiecewisePolynomial, eps: float) -> complex:
    """``int Q(y) exp(-y^2 / (2 eps)) dy``."""
    total = 0j
    for k, p in enumerate(Q.pieces):
        coeffs = _ycoeffs(p)
        if not coeffs:
            continue
        m = gaussian_moments(float(Q.breakpoints[k]), float(Q.breakpoints[k + 1]),
                             max(coeffs), eps)
        total += sum(complex(c) * m[e] for e, c in coeffs.items())
    for (loc, order), c in Q.atoms.items():
        total += complex(c) * (-1) ** order * _gaussian_derivative(order, float(loc), eps)
    return SQRT_2PI * total


def I_epsilon_from_distribution(Q: PiecewisePolynomial, eps: float) -> complex:
    if not eps > 0:
        raise ValueError("epsilon must be positive")
    vol = complex(VOLUME_OF_G)
    return gaussian_pairing(Q, eps) / (2j * math.pi * math.sqrt(eps) * vol)


def I_epsilon(sphere: WeightedSphere, eta, epsilon: float) -> complex:
    """``I^eta(eps) = 1/(2 pi i sqrt(eps) vol G) int Q(y) exp(-y^2/2eps) dy``."""
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    return I_epsilon_from_distribution(dh_distribution(sphere, eta), epsilon)


def local_polynomial_limit(Q: PiecewisePolynomial) -> Poly:
    """``I_0(eps)`` as an exact polynomial in ``eps``: the Gaussian integral of
    the polynomial that agrees with ``Q`` near ``y = 0``."""
    if 0 in Q.breakpoints:
        raise LambdaZero("y = 0 is a breakpoint of the distribution")
    p0 = Q.exact_piece_at(0)
    out = ZERO_POLY
    # sqrt(2 pi) * sqrt(2 pi eps) / (2 pi i sqrt(eps) vol G) = 1 / (i vol G)
    pref = (I * VOLUME_OF_G).inverse()
    for e, c in _ycoeffs(p0).items():
        if e % 2 == 0:
            dfact = math.prod(range(e - 1, 0, -2))
            out = out + Poly.monomial(c * pref * dfact, eps=e // 2)
    return out


@dataclass
class AsymptoticReport:
    epsilons: List[float]
    I_values: List[complex]
    limit: ExactScalar
    decay_exponent_estimate: float
    prefactor_estimate: float = float("nan")
    r_squared: float = float("nan")
    local_polynomial: Poly = ZERO_POLY
    residuals: List[float] = field(default_factory=list)


def fit_decay(epsilons: Sequence[float], residuals: Sequence[float]):
    """Least-squares fit of ``|r| = A eps^(-1/2) exp(-c / eps)``.

    Returns ``(c, A, R^2)`` of the linear fit of ``log|r| + log(eps)/2``
    against ``1/eps``.
    """
    eps = np.asarray(epsilons, dtype=float)
    r = np.abs(np.asarray(residuals, dtype=float))
    if np.any(r <= 0) or len(eps) < 3:
        return float("nan"), float("nan"), float("nan")
    x = 1.0 / eps
    yv = np.log(r) + 0.5 * np.log(eps)
    slope, icept = np.polyfit(x, yv, 1)
    pred = slope * x + icept
    ss_res = float(np.sum((yv - pred) ** 2))
    ss_tot = float(np.sum((yv - yv.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else float("nan")
    return float(-slope), float(math.exp(icept)), r2


def asymptotic_report(sphere: WeightedSphere, eta, epsilon_grid: Sequence[float]) -> AsymptoticReport:
    Q = dh_distribution(sphere, eta)
    local = local_polynomial_limit(Q)
    limit = local.constant_term()
    n0 = regular_isotropy_order(sphere)
    expected = quotient_pairing(sphere, eta) * Fraction(1, n0)
    if limit != expected:
        raise ArithmeticError(f"local limit {limit} differs from quotient pairing / n0 = {expected}")
    eps = [float(e) for e in epsilon_grid]
    vals = [I_epsilon_from_distribution(Q, e) for e in eps]
    res = [abs(v - local.evaluate(eps=e)) for v, e in zip(vals, eps)]
    c, A, r2 = fit_decay(eps, res)
    return AsymptoticReport(eps, vals, limit, c, A, r2, local, res)


def gaussian_tail_bound(n: int, delta: float, a: float) -> float:
    """Upper bound ``p_n(1/sqrt(a)) exp(-delta^2 a / 2)`` for
    ``int_delta^inf x^n exp(-a x^2) dx``, with ``p_0 = sqrt(pi / 4a)``,
    ``p_1 = 1/(2a)`` and ``p_n = delta^(n-1)/(2a) + (n-1)/(2a) p_(n-2)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    p = [math.sqrt(math.pi / (4 * a)), 1 / (2 * a)]
    for k in range(2, n + 1):
        p.append(delta ** (k - 1) / (2 * a) + (k - 1) / (2 * a) * p[k - 2])
    return p[n] * math.exp(-delta * delta * a / 2)


# -- CSV export -----------------------------------------------------------------

def write_profile_csv(Q: PiecewisePolynomial, path, num: int = 201) -> None:
    """Samples ``(y, Re Q, Im Q)`` on a uniform grid over the support."""
    lo, hi = (float(x) for x in Q.support)
    pad = 0.05 * max(hi - lo, 1.0)
    ys = np.linspace(lo - pad, hi + pad, num)
    vals = Q(ys)
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(["y", "re_Q", "im_Q"])
        for y, v in zip(ys, vals):
            wr.writerow([f"{y:.15g}", f"{v.real:.15g}", f"{v.imag:.15g}"])


def write_asymptotics_csv(report: AsymptoticReport, path) -> None:
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(["epsilon", "re_I", "im_I"])
        for e, v in zip(report.epsilons, report.I_values):
            wr.writerow([f"{e:.15g}", f"{v.real:.15g}", f"{v.imag:.15g}"])
