"""Exact scalars: rationals and elements of a real quadratic field Q(sqrt(D)).

Rationals are plain :class:`fractions.Fraction` values. :class:`Quad` holds
``rat + coef * sqrt(disc)`` and decides signs without ever rounding.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

Rat = Fraction
Scalar = Union[int, Fraction, "Quad"]


class DomainError(ValueError):
    """Input lies outside the domain an operation is defined on."""


class InvalidDiscriminant(DomainError):
    pass


class IncompatibleField(ValueError):
    """Two quadratic irrationals with different discriminants were combined."""


def as_rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rat(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def parse_rat(text: str) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or a mixed number ``"8+1/36"``."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty rational")
    if "+" in s[1:]:
        head, tail = s[0] + s[1:].split("+", 1)[0], s[1:].split("+", 1)[1]
        return Fraction(head) + Fraction(tail)
    return Fraction(s)


def fmt_rat(x: Fraction) -> str:
    x = as_rat(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rat_isqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    if x < 0:
        return None
    p, q = x.numerator, x.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


class Quad:
    """The real number ``rat + coef * sqrt(disc)`` with rational parts.

    Perfect-square discriminants collapse into the rational part, so a
    value whose discriminant is nonzero is genuinely irrational.
    """

    __slots__ = ("rat", "coef", "disc")

    def __init__(self, rat=0, coef=0, disc=0):
        rat, coef, disc = as_rat(rat), as_rat(coef), as_rat(disc)
        if disc < 0:
            raise InvalidDiscriminant(f"negative discriminant {disc}")
        if coef == 0 or disc == 0:
            coef, disc = Fraction(0), Fraction(0)
        else:
            root = rat_isqrt(disc)
            if root is not None:
                rat, coef, disc = rat + coef * root, Fraction(0), Fraction(0)
        self.rat = rat
        self.coef = coef
        self.disc = disc

    @classmethod
    def sqrt(cls, x) -> "Quad":
        return cls(0, 1, x)

    @property
    def is_rational(self) -> bool:
        return self.disc == 0

    def _field(self, other: "Quad") -> Fraction:
        if self.disc == 0:
            return other.disc
        if other.disc == 0 or other.disc == self.disc:
            return self.disc
        raise IncompatibleField(f"sqrt({self.disc}) vs sqrt({other.disc})")

    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        d = self._field(other)
        return Quad(self.rat + other.rat, self.coef + other.coef, d)

    __radd__ = __add__

    def __neg__(self):
        return Quad(-self.rat, -self.coef, self.disc)

    def __sub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        d = self._field(other)
        return Quad(
            self.rat * other.rat + self.coef * other.coef * d,
            self.rat * other.coef + self.coef * other.rat,
            d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "Quad":
        return Quad(self.rat, -self.coef, self.disc)

    def norm(self) -> Fraction:
        return self.rat * self.rat - self.coef * self.coef * self.disc

    def __truediv__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Quad")
        num = self * other.conjugate()
        return Quad(num.rat / n, num.coef / n, num.disc)

    def __rtruediv__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return other / self

    def sign(self) -> int:
        return quad_sign(self)

    def _cmp(self, other) -> int:
        return quad_cmp(self, other)

    def __eq__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return False
        return (self.rat, self.coef, self.disc) == (other.rat, other.coef, other.disc)

    def __hash__(self):
        if self.disc == 0:
            return hash(self.rat)
        return hash((self.rat, self.coef, self.disc))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __float__(self):
        return float(self.rat) + float(self.coef) * math.sqrt(self.disc)

    def to_rat(self) -> Fraction:
        if self.disc != 0:
            raise ValueError(f"{self} is irrational")
        return self.rat

    def to_json(self) -> dict:
        return {"rat": fmt_rat(self.rat), "coef": fmt_rat(self.coef), "disc": fmt_rat(self.disc)}

    @classmethod
    def from_json(cls, obj: dict) -> "Quad":
        return cls(parse_rat(obj["rat"]), parse_rat(obj["coef"]), parse_rat(obj["disc"]))

    def __repr__(self):
        if self.disc == 0:
            return f"Quad({fmt_rat(self.rat)})"
        return f"Quad({fmt_rat(self.rat)} + {fmt_rat(self.coef)}*sqrt({fmt_rat(self.disc)}))"

    __str__ = __repr__


def _lift(x):
    if isinstance(x, Quad):
        return x
    if isinstance(x, (int, Fraction)):
        return Quad(x)
    return NotImplemented


def quad_make(rat_part, root_coef, disc) -> Quad:
    return Quad(rat_part, root_coef, disc)


def quad_sign(x) -> int:
    """Sign of ``x`` decided exactly.

    When the rational part and the surd part disagree in sign, the winner
    is the one with the larger square.
    """
    x = _lift(x)
    s = (x.rat > 0) - (x.rat < 0)
    t = (x.coef > 0) - (x.coef < 0)
    if t == 0:
        return s
    if s == 0 or s == t:
        return t
    lhs = x.rat * x.rat
    rhs = x.coef * x.coef * x.disc
    if lhs > rhs:
        return s
    if lhs < rhs:
        return t
    return 0


def quad_cmp(x, y) -> int:
    return quad_sign(_lift(x) - _lift(y))


def floor_q(x) -> int:
    """Exact floor of a rational or Quad."""
    x = _lift(x)
    if x.disc == 0:
        return math.floor(x.rat)
    n = math.floor(float(x))
    while quad_sign(x - n) < 0:
        n -= 1
    while quad_sign(x - (n + 1)) >= 0:
        n += 1
    return n


def ceil_q(x) -> int:
    return -floor_q(-_lift(x))


def sign(x) -> int:
    if isinstance(x, Quad):
        return quad_sign(x)
    return (x > 0) - (x < 0)
