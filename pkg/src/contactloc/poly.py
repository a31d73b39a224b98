"""Sparse multivariate polynomials over ExactScalar, one-variable rational
functions, and residues of ``q(z) exp(i*lam*z) / z**m`` at the origin."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple

from .exact import ExactScalar, ONE, ZERO, I, as_fraction

# Module-level variable registry; fixes the column order of exponent vectors.
_REGISTRY: list = ["u", "s", "phi", "z", "y", "eps"]


def register_variable(name: str) -> int:
    if not name.isidentifier() or name in ("pi", "I"):
        raise ValueError(f"invalid variable name {name!r}")
    if name not in _REGISTRY:
        _REGISTRY.append(name)
    return _REGISTRY.index(name)


def _order(names: Iterable[str]) -> Tuple[str, ...]:
    return tuple(sorted(set(names), key=register_variable))


class Poly:
    """Immutable sparse polynomial with ExactScalar coefficients.

    ``terms`` maps exponent vectors (aligned with ``variables``) to nonzero
    coefficients.  Variables that do not occur are dropped, so two equal
    polynomials always have identical representations.
    """

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Iterable[str] = (), terms: Mapping = None):
        variables = tuple(variables)
        raw: Dict[tuple, ExactScalar] = {}
        for exps, c in (terms or {}).items():
            c = ExactScalar.coerce(c)
            if len(exps) != len(variables):
                raise ValueError("exponent vector length does not match variables")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent in polynomial")
            key = tuple(int(e) for e in exps)
            raw[key] = raw.get(key, ZERO) + c
        raw = {k: c for k, c in raw.items() if not c.is_zero()}
        used = [v for i, v in enumerate(variables) if any(k[i] for k in raw)]
        order = _order(used)
        idx = [variables.index(v) for v in order]
        final = {tuple(k[i] for i in idx): c for k, c in raw.items()}
        object.__setattr__(self, "variables", order)
        object.__setattr__(self, "terms", final)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors ----------------------------------------------------------

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((), {(): c})

    @classmethod
    def var(cls, name: str) -> "Poly":
        register_variable(name)
        return cls((name,), {(1,): ONE})

    @classmethod
    def monomial(cls, c, **powers: int) -> "Poly":
        names = tuple(powers)
        for v in names:
            register_variable(v)
        return cls(names, {tuple(powers[v] for v in names): c})

    @classmethod
    def from_univariate(cls, var: str, coeffs: Mapping[int, object]) -> "Poly":
        """Build ``sum_k coeffs[k] * var**k``."""
        register_variable(var)
        return cls((var,), {(k,): c for k, c in coeffs.items()})

    @classmethod
    def coerce(cls, x) -> "Poly":
        if isinstance(x, Poly):
            return x
        return cls.const(x)

    # -- structure -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.variables

    def constant_term(self) -> ExactScalar:
        return self.terms.get((0,) * len(self.variables), ZERO)

    def degree(self, var: str = None) -> int:
        """Total degree, or degree in ``var``.  The zero polynomial has degree -1."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(k) for k in self.terms)
        if var not in self.variables:
            return 0
        i = self.variables.index(var)
        return max(k[i] for k in self.terms)

    def _aligned(self, variables: Tuple[str, ...]) -> Dict[tuple, ExactScalar]:
        pos = [variables.index(v) for v in self.variables]
        out = {}
        for k, c in self.terms.items():
            full = [0] * len(variables)
            for p, e in zip(pos, k):
                full[p] = e
            out[tuple(full)] = c
        return out

    def coefficients(self, var: str) -> Dict[int, "Poly"]:
        """Split as ``sum_k c_k * var**k``; returns ``{k: c_k}`` with Poly c_k."""
        if var not in self.variables:
            return {0: self} if self.terms else {}
        i = self.variables.index(var)
        rest = self.variables[:i] + self.variables[i + 1:]
        buckets: Dict[int, dict] = {}
        for k, c in self.terms.items():
            buckets.setdefault(k[i], {})[k[:i] + k[i + 1:]] = c
        return {d: Poly(rest, t) for d, t in buckets.items()}

    def coefficient(self, var: str, k: int) -> "Poly":
        return self.coefficients(var).get(k, ZERO_POLY)

    def scalar_coefficients(self, var: str) -> Dict[int, ExactScalar]:
        """Univariate view; raises if other variables are present."""
        extra = [v for v in self.variables if v != var]
        if extra:
            raise ValueError(f"polynomial involves {extra} besides {var!r}")
        return {k[0] if k else 0: c for k, c in self.terms.items()}

    # -- arithmetic --------------------------------------------------------------

    def __add__(self, other):
        other = Poly.coerce(other)
        vs = _order(self.variables + other.variables)
        a, b = self._aligned(vs), other._aligned(vs)
        for k, c in b.items():
            a[k] = a.get(k, ZERO) + c
        return Poly(vs, a)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.variables, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-Poly.coerce(other))

    def __rsub__(self, other):
        return Poly.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = ExactScalar.coerce(other)
            return Poly(self.variables, {k: v * c for k, v in self.terms.items()})
        vs = _order(self.variables + other.variables)
        a, b = self._aligned(vs), other._aligned(vs)
        out: Dict[tuple, ExactScalar] = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = tuple(x + y for x, y in zip(ka, kb))
                out[k] = out.get(k, ZERO) + ca * cb
        return Poly(vs, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if not other.is_constant():
                raise TypeError("division by a non-constant polynomial")
            other = other.constant_term()
        inv = ExactScalar.coerce(other).inverse()
        return self * inv

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result, base = ONE_POLY, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def substitute(self, var: str, value) -> "Poly":
        """Replace ``var`` by the polynomial ``value`` (exact, Horner-style)."""
        if var not in self.variables:
            return self
        value = Poly.coerce(value)
        coeffs = self.coefficients(var)
        result = ZERO_POLY
        for d in range(max(coeffs), -1, -1):
            result = result * value + coeffs.get(d, ZERO_POLY)
        return result

    def derivative(self, var: str) -> "Poly":
        if var not in self.variables:
            return ZERO_POLY
        i = self.variables.index(var)
        out = {}
        for k, c in self.terms.items():
            if k[i]:
                kk = list(k)
                kk[i] -= 1
                out[tuple(kk)] = c * k[i]
        return Poly(self.variables, out)

    def evaluate(self, **values) -> complex:
        """Numeric evaluation; every variable must be given."""
        total = 0j
        for k, c in self.terms.items():
            term = complex(c)
            for v, e in zip(self.variables, k):
                term *= values[v] ** e
            total += term
        return total

    # -- comparison ----------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Poly):
            try:
                other = Poly.const(other)
            except TypeError:
                return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(
                self, "_hash", hash((self.variables, frozenset(self.terms.items()))))
        return self._hash

    def sorted_terms(self):
        """Terms in graded-lex order, highest first."""
        return sorted(self.terms.items(), key=lambda kc: (sum(kc[0]), kc[0]),
                      reverse=True)

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        from .textform import format_poly
        return format_poly(self)


ZERO_POLY = Poly()
ONE_POLY = Poly.const(ONE)


class RationalFn:
    """Quotient of univariate polynomials in ``var``.

    Common powers of ``var`` are always cancelled; no further gcd reduction
    is attempted.
    """

    __slots__ = ("var", "numerator", "denominator")

    def __init__(self, numerator, denominator=ONE_POLY, var: str = "phi"):
        numerator, denominator = Poly.coerce(numerator), Poly.coerce(denominator)
        for p in (numerator, denominator):
            if set(p.variables) - {var}:
                raise ValueError(f"RationalFn must be univariate in {var!r}")
        if denominator.is_zero():
            raise ZeroDivisionError("zero denominator")
        if numerator.is_zero():
            denominator = ONE_POLY
        else:
            shift = min(_low_degree(numerator, var), _low_degree(denominator, var))
            if shift:
                numerator = _shift_down(numerator, var, shift)
                denominator = _shift_down(denominator, var, shift)
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "denominator", denominator)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFn is immutable")

    def is_polynomial(self) -> bool:
        return self.denominator.is_constant()

    def to_poly(self) -> Poly:
        if not self.is_polynomial():
            raise ValueError("rational function has a nonconstant denominator")
        return self.numerator / self.denominator.constant_term()

    def monomial_denominator(self):
        """Return ``(c, m)`` if the denominator is ``c * var**m``, else None."""
        t = self.denominator.terms
        if len(t) != 1:
            return None
        (k, c), = t.items()
        return c, (k[0] if k else 0)

    def laurent(self) -> Dict[int, ExactScalar]:
        """Laurent coefficients ``{e: c_e}`` when the denominator is a monomial."""
        md = self.monomial_denominator()
        if md is None:
            raise ValueError("Laurent expansion needs a monomial denominator")
        c, m = md
        inv = c.inverse()
        return {k - m: a * inv
                for k, a in self.numerator.scalar_coefficients(self.var).items()}

    def __add__(self, other):
        if not isinstance(other, RationalFn):
            other = RationalFn(Poly.coerce(other), var=self.var)
        a, b = self.monomial_denominator(), other.monomial_denominator()
        if a is not None and b is not None:
            (ca, ma), (cb, mb) = a, b
            m = max(ma, mb)
            xa = Poly.monomial(cb, **{self.var: m - ma}) if m > ma else Poly.const(cb)
            xb = Poly.monomial(ca, **{self.var: m - mb}) if m > mb else Poly.const(ca)
            num = self.numerator * xa + other.numerator * xb
            den = Poly.monomial(ca * cb, **{self.var: m}) if m else Poly.const(ca * cb)
            return RationalFn(num, den, self.var)
        num = self.numerator * other.denominator + other.numerator * self.denominator
        return RationalFn(num, self.denominator * other.denominator, self.var)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.numerator, self.denominator, self.var)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RationalFn):
            return RationalFn(self.numerator * other.numerator,
                              self.denominator * other.denominator, self.var)
        return RationalFn(self.numerator * other, self.denominator, self.var)

    __rmul__ = __mul__

    def evaluate(self, x: complex) -> complex:
        return (self.numerator.evaluate(**{self.var: x})
                / self.denominator.evaluate(**{self.var: x}))

    def __eq__(self, other):
        if not isinstance(other, RationalFn):
            return NotImplemented
        return (self.numerator * other.denominator
                == other.numerator * self.denominator)

    __hash__ = None

    def __repr__(self):
        return f"RationalFn(({self.numerator}) / ({self.denominator}))"


def _low_degree(p: Poly, var: str) -> int:
    if var not in p.variables:
        return 0
    i = p.variables.index(var)
    return min(k[i] for k in p.terms)


def _shift_down(p: Poly, var: str, shift: int) -> Poly:
    i = p.variables.index(var)
    return Poly(p.variables, {k[:i] + (k[i] - shift,) + k[i + 1:]: c
                              for k, c in p.terms.items()})


def residue_at_zero(q: Poly, lam, m: int, var: str = "z") -> Poly:
    r"""Residue at ``var = 0`` of ``q * exp(i*lam*var) / var**m``.

    Equals the ``var**(m-1)`` Taylor coefficient of ``q * exp(i*lam*var)``:
    ``sum_{k<m} q_k (i*lam)**(m-1-k) / (m-1-k)!``.  ``q`` may carry further
    variables; the result is a polynomial in those.
    """
    if m < 1:
        raise ValueError("pole order m must be >= 1")
    try:
        lam = as_fraction(lam)
    except TypeError:
        raise TypeError("non-rational lambda: use residue_at_zero_float") from None
    ilam = I * lam
    coeffs = q.coefficients(var)
    total = ZERO_POLY
    for k, qk in coeffs.items():
        if k < m:
            d = m - 1 - k
            total = total + qk * (ilam ** d / math.factorial(d))
    return total


def residue_at_zero_float(q_coeffs, lam: float, m: int) -> complex:
    """Float twin of :func:`residue_at_zero` for univariate ``q`` given as a
    coefficient sequence ``q_coeffs[k]`` (accurate to ~1e-12 relative)."""
    if m < 1:
        raise ValueError("pole order m must be >= 1")
    total = 0j
    for k, qk in enumerate(q_coeffs):
        if k < m:
            d = m - 1 - k
            total += complex(qk) * (1j * lam) ** d / math.factorial(d)
    return total
