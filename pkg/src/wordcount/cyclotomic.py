"""Exact arithmetic in Z[zeta_e] (and Q[zeta_e] where divisions appear).

A value is stored as a length-e coefficient vector over the non-reduced
spanning set 1, zeta, ..., zeta^(e-1); multiplication is cyclic convolution.
Equality and rational extraction go through reduction modulo the e-th
cyclotomic polynomial, which is the only place the relation between the
powers of zeta is used.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import NonIntegral


@lru_cache(maxsize=None)
def cyclotomic_polynomial(e):
    """Coefficients (low to high) of the e-th cyclotomic polynomial."""
    # Phi_e = (x^e - 1) / prod_{d | e, d < e} Phi_d, all divisions exact
    poly = [-1] + [0] * (e - 1) + [1]
    for d in range(1, e):
        if e % d == 0:
            poly = _exact_div(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _exact_div(num, den):
    """Exact division of integer polynomials (den monic up to sign)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        assert c % lead == 0
        q = c // lead
        out[i] = q
        if q:
            for j, dj in enumerate(den):
                num[i + j] -= q * dj
    assert all(v == 0 for v in num)
    return out


def _reduce(order, coeffs):
    """Remainder of sum(coeffs[j] x^j) modulo Phi_order, low-to-high tuple."""
    phi = cyclotomic_polynomial(order)
    deg = len(phi) - 1
    rem = list(coeffs)
    for i in range(len(rem) - 1, deg - 1, -1):
        c = rem[i]
        if c:
            rem[i] = 0
            for j in range(deg):
                rem[i - deg + j] -= c * phi[j]
    return tuple(rem[:deg])


@dataclass(frozen=True)
class Cyclotomic:
    """An element of Q[zeta_order]; character values keep integer coeffs."""

    order: int
    coeffs: tuple

    @staticmethod
    def zero(order):
        return Cyclotomic(order, (0,) * order)

    @staticmethod
    def from_rational(order, value):
        return Cyclotomic(order, (value,) + (0,) * (order - 1))

    @staticmethod
    def root(order, power=1):
        c = [0] * order
        c[power % order] = 1
        return Cyclotomic(order, tuple(c))

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                raise ValueError("mixed cyclotomic orders")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.from_rational(self.order, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Cyclotomic(self.order,
                          tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.order, tuple(a * other for a in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        e = self.order
        out = [0] * e
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % e] += a * b
        return Cyclotomic(e, tuple(out))

    __rmul__ = __mul__

    def conjugate(self):
        e = self.order
        out = [0] * e
        for j, a in enumerate(self.coeffs):
            out[(-j) % e] += a
        return Cyclotomic(e, tuple(out))

    def reduced(self):
        """Canonical coefficient tuple in the power basis 1..zeta^(phi(e)-1)."""
        return _reduce(self.order, self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.from_rational(self.order, other)
        if not isinstance(other, Cyclotomic) or other.order != self.order:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.order, self.reduced()))

    def is_zero(self):
        return all(v == 0 for v in self.reduced())

    def is_rational(self):
        red = self.reduced()
        return all(v == 0 for v in red[1:])

    def to_rational(self):
        red = self.reduced()
        if any(v != 0 for v in red[1:]):
            raise NonIntegral(f"value is not rational: {self!r}")
        v = red[0]
        return v if isinstance(v, Fraction) else Fraction(v)

    def to_integer(self):
        v = self.to_rational()
        if v.denominator != 1:
            raise NonIntegral(f"value is not an integer: {v}")
        return v.numerator

    def scale_div(self, num, den):
        """Exact (num/den) * self with integrality of coefficients not required."""
        f = Fraction(num, den)
        return Cyclotomic(self.order, tuple(a * f for a in self.coeffs))

    def __repr__(self):
        terms = [f"{a}*z{self.order}^{j}" for j, a in enumerate(self.coeffs) if a]
        return "Cyc(" + (" + ".join(terms) or "0") + ")"
