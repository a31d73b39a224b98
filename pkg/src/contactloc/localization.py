"""Fixed-point localization on weighted spheres.

Every integral over the sphere is replaced by a sum over the critical
circles ``C_j``::

    int_M alpha ^ eta = sum_j (2 pi / w_j) * eta|_{C_j}(u) / e_j(u)

with ``eta|_{C_j}`` obtained by ``s -> -lambda_j u``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence

from .errors import NonPolynomialResult
from .exact import ExactScalar, ZERO
from .poly import Poly, RationalFn, ZERO_POLY
from .sphere import (EquivariantClass, WeightedSphere, critical_circles, S)


@dataclass(frozen=True)
class LocalizationTerm:
    """One summand ``exp(i * exponent_lambda * phi) * amplitude(phi)``."""

    circle_index: int
    exponent_lambda: Fraction
    amplitude: RationalFn

    def evaluate(self, phi: complex) -> complex:
        import cmath
        return cmath.exp(1j * float(self.exponent_lambda) * phi) * self.amplitude.evaluate(phi)


def _as_poly(eta) -> Poly:
    if isinstance(eta, EquivariantClass):
        return eta.rep
    if isinstance(eta, str):
        from .textform import parse_poly
        return parse_poly(eta)
    return Poly.coerce(eta)


def pair_alpha_eta(sphere: WeightedSphere, eta) -> Poly:
    """``int_M alpha ^ eta`` as a polynomial in ``u``.

    Raises
    ------
    NonPolynomialResult
        If the fixed-point sum keeps a pole at ``u = 0``.
    """
    eta = _as_poly(eta)
    total = RationalFn(ZERO_POLY, var="u")
    for c in critical_circles(sphere):
        total = total + RationalFn(c.restrict(eta) * c.alpha_integral,
                                   c.euler_class, var="u")
    if not total.is_polynomial():
        raise NonPolynomialResult(
            f"fixed-point sum for eta={eta} retains the denominator {total.denominator}")
    return total.to_poly()


def pushforward(sphere: WeightedSphere, eta) -> List[LocalizationTerm]:
    """Fixed-point terms of the pushforward of ``eta ^ exp(i d_G alpha)``.

    ``term_j = exp(-i lambda_j phi) (2 pi / w_j) eta(phi, -lambda_j phi) / e_j(phi)``.
    """
    eta = _as_poly(eta)
    phi = Poly.var("phi")
    terms = []
    for c in critical_circles(sphere):
        num = c.restrict(eta).substitute("u", phi) * c.alpha_integral
        den = c.euler_class.substitute("u", phi)
        terms.append(LocalizationTerm(c.index, -c.mu_value, RationalFn(num, den, "phi")))
    return terms


def evaluate_pushforward(terms: Sequence[LocalizationTerm], phi) -> complex:
    return sum(t.evaluate(phi) for t in terms)


def closed_form_volume(sphere: WeightedSphere) -> ExactScalar:
    """``2 pi^(n+1) / (n! prod w_j)``."""
    n = sphere.n
    prod = math.prod(sphere.w, start=Fraction(1))
    return ExactScalar(Fraction(2, math.factorial(n)) / prod, 0, n + 1)


def auxiliary_beta(w: Sequence[Fraction], start=lambda j: j + 1, step: int = 1):
    """Integer action weights with pairwise distinct ``beta_j / w_j``."""
    used, beta = set(), []
    for j, wj in enumerate(w):
        b = start(j)
        while Fraction(b) / wj in used:
            b += step
        used.add(Fraction(b) / wj)
        beta.append(b)
    return tuple(beta)


def localization_identity_sum(w: Sequence, beta: Sequence[int],
                              perturb_euler: Fraction = Fraction(0)) -> Fraction:
    """``sum_j beta_j^n / prod_{k != j} (beta_k w_j / w_k - beta_j)``.

    ``perturb_euler`` rescales the j = 0 denominator by ``1 + perturb_euler``;
    it only exists as a negative control.
    """
    w = [Fraction(x) for x in w]
    n = len(w) - 1
    total = Fraction(0)
    for j in range(n + 1):
        den = Fraction(1)
        for k in range(n + 1):
            if k != j:
                den *= Fraction(beta[k]) * w[j] / w[k] - beta[j]
        if j == 0:
            den *= 1 + Fraction(perturb_euler)
        total += Fraction(beta[j]) ** n / den
    return total


def localization_identity_check(sphere: WeightedSphere,
                                perturb_euler: Fraction = Fraction(0)) -> bool:
    if not sphere.distinct_lambdas:
        from .errors import DegenerateCriticalSet
        raise DegenerateCriticalSet("identity needs pairwise distinct lambda_j")
    return localization_identity_sum(sphere.w, sphere.beta, perturb_euler) == (-1) ** sphere.n


def volume_by_localization(sphere: WeightedSphere) -> ExactScalar:
    """``(1 / (2^n n!)) int_M alpha ^ (d alpha)^n`` via the fixed-point sum
    for ``eta = s^n``; needs distinct ``lambda_j``."""
    n = sphere.n
    p = pair_alpha_eta(sphere, S ** n)
    if not p.is_constant():
        raise NonPolynomialResult(f"top-degree pairing is not a constant: {p}")
    return p.constant_term() * Fraction(1, 2 ** n * math.factorial(n))


def volume_by_identity(sphere: WeightedSphere) -> ExactScalar:
    """Same volume from the beta-sum form of the localization formula."""
    n = sphere.n
    prod = math.prod(sphere.w, start=Fraction(1))
    ssum = localization_identity_sum(sphere.w, sphere.beta)
    value = Fraction(2 ** (n + 1) * (-1) ** n) / prod * ssum
    return ExactScalar(value / (2 ** n * math.factorial(n)), 0, n + 1)


def contact_volume(sphere: WeightedSphere) -> ExactScalar:
    """Contact volume of ``(S^{2n+1}, alpha_w)``.

    The action weights of ``sphere`` are ignored; two auxiliary circle actions
    are used instead and the localization answers must agree with each other
    and with the closed form.
    """
    results = []
    for start in (lambda j: j + 1, lambda j: -(2 * j + 3)):
        aux = WeightedSphere(sphere.w, auxiliary_beta(sphere.w, start))
        results.append(volume_by_localization(aux))
        results.append(volume_by_identity(aux))
    closed = closed_form_volume(sphere)
    if any(r != closed for r in results):
        raise ArithmeticError(
            f"localization volumes {[str(r) for r in results]} disagree with {closed}")
    return results[0]
