"""Exact scalars: Gaussian rationals graded by integer powers of pi.

A value is a finite formal sum ``sum_k (re_k + i*im_k) * pi**k``.  Most values
met in practice are homogeneous (a single power of pi); the formal sum keeps
addition total without ever turning pi into a float.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

Number = Union[int, Fraction]


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


class ExactScalar:
    """Immutable Gaussian rational times a formal power of pi.

    Parameters
    ----------
    re, im : int, Fraction or str
        Real and imaginary rational parts.
    pi_power : int
        Power of pi multiplying ``re + i*im``.
    """

    __slots__ = ("_parts", "_hash")

    def __init__(self, re: Number = 0, im: Number = 0, pi_power: int = 0):
        re, im = as_fraction(re), as_fraction(im)
        parts = {} if (re == 0 and im == 0) else {int(pi_power): (re, im)}
        self._set(parts)

    def _set(self, parts: dict) -> None:
        items = tuple(sorted((k, re, im) for k, (re, im) in parts.items()
                             if re != 0 or im != 0))
        object.__setattr__(self, "_parts", items)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("ExactScalar is immutable")

    @classmethod
    def _from_parts(cls, parts: dict) -> "ExactScalar":
        obj = cls.__new__(cls)
        obj._set(parts)
        return obj

    @classmethod
    def coerce(cls, x) -> "ExactScalar":
        if isinstance(x, ExactScalar):
            return x
        if isinstance(x, complex):
            raise TypeError("floats and complex floats are not exact")
        return cls(as_fraction(x))

    # -- structure -----------------------------------------------------------

    @property
    def parts(self) -> tuple:
        """Homogeneous components as ``(pi_power, re, im)`` triples."""
        return self._parts

    def is_zero(self) -> bool:
        return not self._parts

    def is_homogeneous(self) -> bool:
        return len(self._parts) <= 1

    def _single(self):
        if not self._parts:
            return 0, Fraction(0), Fraction(0)
        if len(self._parts) > 1:
            raise ValueError(f"{self} is a mixed sum over several powers of pi")
        return self._parts[0]

    @property
    def pi_power(self) -> int:
        return self._single()[0]

    @property
    def re(self) -> Fraction:
        return self._single()[1]

    @property
    def im(self) -> Fraction:
        return self._single()[2]

    def is_rational(self) -> bool:
        """True if the value is a plain rational (no pi, no imaginary part)."""
        return self.is_zero() or (self.is_homogeneous() and self.pi_power == 0
                                  and self.im == 0)

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational number")
        return self.re

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        parts = {k: (re, im) for k, re, im in self._parts}
        for k, re, im in other._parts:
            a, b = parts.get(k, (0, 0))
            parts[k] = (a + re, b + im)
        return ExactScalar._from_parts(parts)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar._from_parts({k: (-re, -im) for k, re, im in self._parts})

    def __sub__(self, other):
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return ExactScalar.coerce(other) - self

    def __mul__(self, other):
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        parts: dict = {}
        for k1, a, b in self._parts:
            for k2, c, d in other._parts:
                re0, im0 = parts.get(k1 + k2, (0, 0))
                parts[k1 + k2] = (re0 + a * c - b * d, im0 + a * d + b * c)
        return ExactScalar._from_parts(parts)

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        """Multiplicative inverse; only homogeneous nonzero values qualify."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of exact zero")
        k, a, b = self._single()
        norm = a * a + b * b
        return ExactScalar(a / norm, -b / norm, -k)

    def __truediv__(self, other):
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return ExactScalar.coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self) -> "ExactScalar":
        return ExactScalar._from_parts({k: (re, -im) for k, re, im in self._parts})

    # -- comparison / hashing --------------------------------------------------

    def __eq__(self, other):
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self._parts == other._parts

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(("ExactScalar", self._parts)))
        return self._hash

    def __bool__(self):
        return bool(self._parts)

    # -- numeric views -------------------------------------------------------

    def __complex__(self):
        total = 0j
        for k, re, im in self._parts:
            total += complex(float(re), float(im)) * math.pi ** k
        return total

    def to_complex(self) -> complex:
        return complex(self)

    def __float__(self):
        z = complex(self)
        if any(im != 0 for _, _, im in self._parts):
            raise ValueError(f"{self} has a nonzero imaginary part")
        return z.real

    def __repr__(self):
        return f"ExactScalar({self})"

    def __str__(self):
        from .textform import format_scalar
        return format_scalar(self)


ZERO = ExactScalar()
ONE = ExactScalar(1)
I = ExactScalar(0, 1)
PI = ExactScalar(1, 0, 1)
TWO_PI = ExactScalar(2, 0, 1)


def i_power(k: int) -> ExactScalar:
    """``i**k`` for any integer ``k``."""
    return [ONE, I, -ONE, -I][k % 4]


def exact_sum(values: Iterable) -> ExactScalar:
    total = ZERO
    for v in values:
        total = total + v
    return total
