"""Weight expansions of rationals and the quantities derived from them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact import DomainError, as_rat, fmt_rat
from .interval import Interval


@dataclass(frozen=True)
class WeightExpansion:
    """Decreasing weights of ``a`` grouped into blocks of equal weight.

    ``entries`` holds ``(weight, multiplicity)`` pairs; the multiplicities
    are the continued-fraction partial quotients of ``a``.
    """

    input: Fraction
    entries: tuple[tuple[Fraction, int], ...]
    q: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "q", self.input.denominator)

    @property
    def block_lengths(self) -> tuple[int, ...]:
        return tuple(mult for _, mult in self.entries)

    @property
    def flat(self) -> list[Fraction]:
        out: list[Fraction] = []
        for w, mult in self.entries:
            out.extend([w] * mult)
        return out

    @property
    def M(self) -> int:
        return sum(self.block_lengths)

    def __len__(self) -> int:
        return self.M

    def blocks(self) -> list[range]:
        """Index ranges (into ``flat``) of each block of equal weight."""
        out, start = [], 0
        for mult in self.block_lengths:
            out.append(range(start, start + mult))
            start += mult
        return out

    def describe(self) -> str:
        return ", ".join(f"{fmt_rat(w)}^x{mult}" for w, mult in self.entries)

    def to_json(self) -> dict:
        return {
            "a": fmt_rat(self.input),
            "entries": [{"weight": fmt_rat(w), "mult": mult} for w, mult in self.entries],
            "M": self.M,
            "q": self.q,
            "blocks": list(self.block_lengths),
        }


def weight_expansion(a) -> WeightExpansion:
    a = as_rat(a)
    if a < 1:
        raise DomainError(f"weight expansion needs a >= 1, got {a}")
    entries = []
    big, small = a, Fraction(1)
    while small > 0:
        mult = big // small
        entries.append((small, int(mult)))
        big, small = small, big - mult * small
    return WeightExpansion(a, tuple(entries))


def weight_pair(x, y) -> list[Fraction]:
    """Flat weight sequence ``W(x, y) = min(x, y) * w(max / min)``."""
    x, y = as_rat(x), as_rat(y)
    if x <= 0 or y <= 0:
        raise DomainError("weight_pair needs positive arguments")
    lo, hi = min(x, y), max(x, y)
    return [lo * w for w in weight_expansion(hi / lo).flat]


def y_interval(a, b) -> Interval:
    """Enclosure of ``a + 1 - 2 (b+1)/sqrt(2b) * sqrt(a)``."""
    a, b = as_rat(a), as_rat(b)
    if a < 1 or b < 1:
        raise DomainError("y(a) needs a >= 1 and b >= 1")
    # (b+1)/sqrt(2b) * sqrt(a) == (b+1) * sqrt(a/(2b))
    root = Interval.sqrt_of(a / (2 * b))
    return a + 1 - 2 * (b + 1) * root
