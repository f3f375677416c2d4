"""Outward-rounded interval arithmetic with rational endpoints.

Endpoints are Fractions, so addition and multiplication are exact; only
square roots round, and they round outward to a dyadic grid of 2**-PREC.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import as_rat, fmt_rat

PREC = 96


def _sqrt_floor(x: Fraction, prec: int = PREC) -> Fraction:
    # floor(sqrt(x) * 2**prec) / 2**prec, computed with integers only
    scale = 1 << (2 * prec)
    n = (x.numerator * scale) // x.denominator
    return Fraction(math.isqrt(n), 1 << prec)


def _sqrt_ceil(x: Fraction, prec: int = PREC) -> Fraction:
    lo = _sqrt_floor(x, prec)
    if lo * lo == x:
        return lo
    return lo + Fraction(1, 1 << prec)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> "Interval":
        x = as_rat(x)
        return cls(x, x)

    @classmethod
    def sqrt_of(cls, x) -> "Interval":
        x = as_rat(x)
        if x < 0:
            raise ValueError("sqrt of negative number")
        return cls(_sqrt_floor(x), _sqrt_ceil(x))

    def sqrt(self) -> "Interval":
        if self.lo < 0:
            raise ValueError("sqrt of interval reaching below zero")
        return Interval(_sqrt_floor(self.lo), _sqrt_ceil(self.hi))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= as_rat(x) <= self.hi

    def __add__(self, other):
        o = _iv(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-_iv(other))

    def __rsub__(self, other):
        return _iv(other) - self

    def __mul__(self, other):
        o = _iv(other)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(ps), max(ps))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _iv(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("divisor interval contains zero")
        return self * Interval(1 / o.hi, 1 / o.lo)

    def __rtruediv__(self, other):
        return _iv(other) / self

    def certainly_positive(self) -> bool:
        return self.lo > 0

    def certainly_negative(self) -> bool:
        return self.hi < 0

    def __float__(self):
        return float(self.mid)

    def to_json(self) -> dict:
        return {"lo": fmt_rat(self.lo), "hi": fmt_rat(self.hi), "approx": float(self.mid)}

    def __repr__(self):
        return f"[{float(self.lo):.15g}, {float(self.hi):.15g}]"


def _iv(x) -> Interval:
    if isinstance(x, Interval):
        return x
    return Interval.point(x)
