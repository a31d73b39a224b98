"""Weighted Sasakian spheres with a circle action.

The sphere ``S^{2n+1} in C^{n+1}`` carries the contact form
``alpha_w = (i/2) sum(z d(zbar) - zbar dz) / h(z)``, ``h(z) = sum w_j |z_j|^2``,
and the circle acts with integer weights ``beta``.  Everything here is exact
except :func:`moment_map`, which is a numeric evaluation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import List, Sequence, Tuple

import numpy as np

from .errors import DegenerateCriticalSet
from .exact import ExactScalar, ONE
from .poly import Poly, ONE_POLY, ZERO_POLY
from .textform import parse_poly, format_poly
from .exact import as_fraction

U = Poly.var("u")
S = Poly.var("s")


@dataclass(frozen=True)
class WeightedSphere:
    """Reeb weights ``w`` (positive rationals) and action weights ``beta``."""

    w: Tuple[Fraction, ...]
    beta: Tuple[int, ...]

    def __post_init__(self):
        w = tuple(as_fraction(x) for x in self.w)
        beta = tuple(int(b) for b in self.beta)
        if any(b != bb for b, bb in zip(self.beta, beta)):
            raise ValueError("action weights must be integers")
        if len(w) == 0:
            raise ValueError("need at least one weight")
        if len(w) != len(beta):
            raise ValueError(f"len(w)={len(w)} differs from len(beta)={len(beta)}")
        if any(x <= 0 for x in w):
            raise ValueError(f"Reeb weights must be positive, got {[str(x) for x in w]}")
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "beta", beta)

    @property
    def n(self) -> int:
        return len(self.w) - 1

    @property
    def lambdas(self) -> Tuple[Fraction, ...]:
        """Critical values ``lambda_j = beta_j / w_j``."""
        return tuple(b / w for b, w in zip(self.beta, self.w))

    @property
    def distinct_lambdas(self) -> bool:
        lam = self.lambdas
        return len(set(lam)) == len(lam)

    def ideal_generator(self) -> Poly:
        """``prod_j (beta_j u + w_j s)``, the relation of the cohomology ring."""
        g = ONE_POLY
        for b, w in zip(self.beta, self.w):
            g = g * (U * b + S * w)
        return g

    def to_json(self) -> dict:
        return {"n": self.n, "w": [str(x) for x in self.w], "beta": list(self.beta)}

    @classmethod
    def from_json(cls, data: dict) -> "WeightedSphere":
        try:
            w, beta = data["w"], data["beta"]
        except KeyError as exc:
            raise ValueError(f"sphere config lacks field {exc}") from None
        for b in beta:
            if isinstance(b, bool) or not isinstance(b, int):
                raise ValueError(f"action weight {b!r} is not an integer")
        sphere = cls(tuple(w), tuple(beta))
        if "n" in data and data["n"] != sphere.n:
            raise ValueError(f"n={data['n']} but {len(sphere.w)} weights given")
        return sphere


@dataclass(frozen=True)
class CriticalCircle:
    """Coordinate circle ``C_j`` and its localization data."""

    index: int
    mu_value: Fraction
    euler_class: Poly
    restriction_slope: Fraction
    alpha_integral: ExactScalar

    def restrict(self, eta: Poly) -> Poly:
        """Restriction to ``C_j``: ``s -> restriction_slope * u``."""
        return eta.substitute("s", U * self.restriction_slope)


class EquivariantClass:
    """Class in ``R[u, s] / <prod_j (beta_j u + w_j s)>``."""

    __slots__ = ("sphere", "rep")

    def __init__(self, sphere: WeightedSphere, rep):
        if isinstance(rep, str):
            rep = parse_poly(rep)
        rep = Poly.coerce(rep)
        extra = set(rep.variables) - {"u", "s"}
        if extra:
            raise ValueError(f"class representative uses variables {sorted(extra)}")
        self.sphere = sphere
        self.rep = rep

    def reduced(self) -> "EquivariantClass":
        return class_reduce(self, self.sphere)

    def __add__(self, other):
        return EquivariantClass(self.sphere, self.rep + _rep(other))

    def __mul__(self, other):
        return EquivariantClass(self.sphere, self.rep * _rep(other))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, EquivariantClass):
            return NotImplemented
        if other.sphere != self.sphere:
            return False
        diff = EquivariantClass(self.sphere, self.rep - other.rep)
        return class_reduce(diff, self.sphere).rep.is_zero()

    __hash__ = None

    def __repr__(self):
        return f"EquivariantClass({format_poly(self.rep)})"


def _rep(x) -> Poly:
    return x.rep if isinstance(x, EquivariantClass) else Poly.coerce(x)


def moment_map(sphere: WeightedSphere, z) -> np.ndarray:
    """``mu(z) = sum beta_j |z_j|^2 / sum w_j |z_j|^2`` for points on the unit sphere.

    ``z`` has shape ``(n+1,)`` or ``(N, n+1)``.
    """
    z = np.asarray(z, dtype=complex)
    r2 = np.abs(z) ** 2
    if r2.shape[-1] != sphere.n + 1:
        raise ValueError(f"points must have {sphere.n + 1} complex coordinates")
    if np.any(np.abs(r2.sum(axis=-1) - 1.0) > 1e-9):
        raise ValueError("point is not on the unit sphere (|z|^2 != 1 within 1e-9)")
    beta = np.array([float(b) for b in sphere.beta])
    w = np.array([float(x) for x in sphere.w])
    return (r2 @ beta) / (r2 @ w)


def check_zero_regular(sphere: WeightedSphere) -> bool:
    lam = sphere.lambdas
    return all(x != 0 for x in lam) and min(lam) < 0 < max(lam)


def zero_regularity_problem(sphere: WeightedSphere):
    """Human-readable reason why 0 is not a regular value, or None."""
    lam = sphere.lambdas
    for j, x in enumerate(lam):
        if x == 0:
            return f"lambda_{j} = beta_{j}/w_{j} = 0 is a critical value"
    if min(lam) > 0:
        return f"all lambda_j > 0 (min lambda = {min(lam)}); 0 is not in the image of mu"
    if max(lam) < 0:
        return f"all lambda_j < 0 (max lambda = {max(lam)}); 0 is not in the image of mu"
    return None


def critical_circles(sphere: WeightedSphere) -> List[CriticalCircle]:
    if not sphere.distinct_lambdas:
        lam = sphere.lambdas
        dup = sorted({str(x) for x in lam if lam.count(x) > 1})
        raise DegenerateCriticalSet(f"coincident critical values lambda = {dup}")
    n = sphere.n
    scale = ExactScalar(Fraction(1, 2 ** n), 0, -n)          # (2*pi)^(-n)
    out = []
    for j, (bj, wj) in enumerate(zip(sphere.beta, sphere.w)):
        lam_j = Fraction(bj) / wj
        prod = Fraction(1)
        for k, (bk, wk) in enumerate(zip(sphere.beta, sphere.w)):
            if k != j:
                prod *= bk - lam_j * wk
        out.append(CriticalCircle(
            index=j,
            mu_value=lam_j,
            euler_class=Poly.monomial(scale * prod, u=n) if n else Poly.const(scale * prod),
            restriction_slope=-lam_j,
            alpha_integral=ExactScalar(2 / wj, 0, 1),
        ))
    return out


def regular_isotropy_order(sphere: WeightedSphere) -> int:
    return reduce(math.gcd, (abs(b) for b in sphere.beta), 0)


def class_reduce(c: EquivariantClass, sphere: WeightedSphere = None) -> EquivariantClass:
    """Remainder of ``c`` on division by the ideal generator, as a polynomial
    in ``s``; the result has s-degree at most ``n``."""
    sphere = sphere or c.sphere
    gen = sphere.ideal_generator()
    top = sphere.n + 1
    lead = reduce(lambda a, b: a * b, sphere.w, Fraction(1))
    r = c.rep
    while r.degree("s") >= top:
        d = r.degree("s")
        lc = r.coefficient("s", d)
        r = r - lc * (S ** (d - top)) * gen * (1 / lead)
    return EquivariantClass(sphere, r)
