"""Rank-one Jeffrey-Kirwan residue and the pairing on the contact quotient."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .errors import LambdaZero, MathPreconditionError
from .exact import ExactScalar, TWO_PI, ZERO
from .localization import LocalizationTerm, pushforward
from .poly import Poly, residue_at_zero
from .sphere import (WeightedSphere, regular_isotropy_order,
                     zero_regularity_problem)

VOLUME_OF_G = TWO_PI
_Z = Poly.var("z")


def term_residue(term: LocalizationTerm) -> ExactScalar:
    """Ordinary residue at 0 of one term (its only possible pole)."""
    md = term.amplitude.monomial_denominator()
    if md is None:
        raise ValueError("amplitude must have a monomial denominator (pole only at 0)")
    c, m = md
    if m == 0:
        return ZERO
    num = term.amplitude.numerator.substitute("phi", _Z)
    r = residue_at_zero(num, term.exponent_lambda, m, var="z")
    return r.constant_term() * c.inverse()


def jkres(terms: Iterable[LocalizationTerm], cone: int = +1) -> ExactScalar:
    """JK residue for the cone ``{t > 0}`` (``cone=+1``) or ``{t < 0}`` (``cone=-1``).

    For ``{t > 0}`` only terms with positive exponent contribute, each by the
    sum of its residues; for ``{t < 0}`` the negative-exponent terms
    contribute with the orientation of ``dphi`` reversed.
    """
    if cone not in (1, -1):
        raise ValueError("cone must be +1 or -1")
    total = ZERO
    for t in terms:
        if t.exponent_lambda == 0:
            raise LambdaZero(f"term for circle {t.circle_index} has exponent 0")
        if (t.exponent_lambda > 0) == (cone > 0):
            total = total + term_residue(t)
    return total if cone > 0 else -total


def quotient_pairing(sphere: WeightedSphere, eta, cone: int = +1) -> ExactScalar:
    """``int_{M_0} alpha_0 ^ eta_0 ^ exp(i d alpha_0) = (n_0 / 2 pi) jkres(...)``."""
    problem = zero_regularity_problem(sphere)
    if problem is not None:
        raise LambdaZero(problem) if any(x == 0 for x in sphere.lambdas) \
            else MathPreconditionError(problem)
    n0 = regular_isotropy_order(sphere)
    return jkres(pushforward(sphere, eta), cone) * Fraction(n0) / VOLUME_OF_G

