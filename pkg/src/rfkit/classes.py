"""Exceptional classes ``(d, e; m)`` in the blow-up basis of S^2 x S^2.

Covers the Diophantine conditions, the change of basis to the CP^2 blow-up
basis, the obstruction function, the error-vector bounds and an exhaustive
search for classes that are obstructive at a given point.
"""

from __future__ import annotations

import logging
import math
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .cremona import XVector, chern_selfint, reduce_exceptional
from .exact import DomainError, Quad, as_rat, fmt_rat, quad_sign
from .interval import Interval
from .weights import WeightExpansion, weight_expansion, y_interval

log = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class YClass:
    d: int
    e: int
    m: tuple[int, ...]

    def __init__(self, d: int, e: int, m: Iterable[int] = ()):
        object.__setattr__(self, "d", int(d))
        object.__setattr__(self, "e", int(e))
        object.__setattr__(self, "m", tuple(int(x) for x in m))

    @classmethod
    def parse(cls, text: str) -> "YClass":
        """Parse ``"d,e;m1,m2,..."``; ``2x7`` and ``2^7`` repeat an entry."""
        head, _, tail = text.partition(";")
        d, e = (int(x) for x in head.split(","))
        m: list[int] = []
        for tok in filter(None, (t.strip() for t in tail.split(","))):
            mo = re.fullmatch(r"(-?\d+)\s*(?:[x*^]|\^x|×)\s*(\d+)", tok)
            if mo:
                m.extend([int(mo.group(1))] * int(mo.group(2)))
            else:
                m.append(int(tok))
        return cls(d, e, m)

    def h(self, b) -> Fraction:
        return self.d - as_rat(b) * self.e

    def trimmed(self) -> "YClass":
        m = list(self.m)
        while m and m[-1] == 0:
            m.pop()
        return YClass(self.d, self.e, m)

    def label(self) -> str:
        parts, i = [], 0
        while i < len(self.m):
            j = i
            while j < len(self.m) and self.m[j] == self.m[i]:
                j += 1
            parts.append(str(self.m[i]) if j - i == 1 else f"{self.m[i]}x{j - i}")
            i = j
        return f"({self.d},{self.e};{','.join(parts)})"

    def to_json(self) -> dict:
        return {"d": self.d, "e": self.e, "m": list(self.m), "label": self.label()}

    __str__ = label


def e_family(n: int) -> YClass:
    """``E_n = (n, 1; 1 x (2n+1))``."""
    return YClass(n, 1, [1] * (2 * n + 1))


def r_family(n: int) -> YClass:
    """``R_n = ((2n+1)(n+1), (2n+1)n; n^2+n+1, (n^2+n) x 7)``."""
    return YClass((2 * n + 1) * (n + 1), (2 * n + 1) * n, [n * n + n + 1] + [n * n + n] * 7)


def psi(c: YClass) -> XVector:
    """Change of basis ``(d,e;m1,...) -> (d+e-m1; d-m1, e-m1, m2, ...)``."""
    m = c.m or (0,)
    m1 = m[0]
    return XVector(c.d + c.e - m1, (c.d - m1, c.e - m1) + tuple(m[1:]))


def diophantine_ok(c: YClass) -> bool:
    return sum(c.m) == 2 * (c.d + c.e) - 1 and sum(x * x for x in c.m) == 2 * c.d * c.e + 1


def is_exceptional(c: YClass) -> bool:
    if c.d < 0 or c.e < 0 or any(x < 0 for x in c.m):
        return False
    if not diophantine_ok(c):
        return False
    return reduce_exceptional(psi(c)).ok


def _pair(m: Sequence[int], w: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(m, w)), Fraction(0))


def mu(c: YClass, b, a) -> Fraction:
    """Obstruction function ``<m, w(a)> / (d + b e)``."""
    a, b = as_rat(a), as_rat(b)
    denom = c.d + b * c.e
    if denom <= 0:
        raise DomainError("mu needs d + b e > 0")
    return _pair(c.m, weight_expansion(a).flat) / denom


def volume_constraint(a, b) -> Quad:
    a, b = as_rat(a), as_rat(b)
    if a <= 0 or b <= 0:
        raise DomainError("volume constraint needs positive a, b")
    return Quad.sqrt(a / (2 * b))


def is_obstructive_at(c: YClass, b, a) -> bool:
    a, b = as_rat(a), as_rat(b)
    val = mu(c, b, a)
    return val > 0 and val * val > a / (2 * b)


@dataclass
class ErrorProfile:
    epsilon: list[Quad]
    sigma: Quad
    sigma_prime: Quad
    v_M: Interval
    delta: Interval  # y(a) - 1/q
    h: Fraction
    norm_sq: Quad
    pairing: Quad  # <epsilon, w(a)>

    def to_json(self) -> dict:
        return {
            "epsilon": [x.to_json() for x in self.epsilon],
            "epsilon_approx": [float(x) for x in self.epsilon],
            "sigma": self.sigma.to_json(),
            "sigma_prime": self.sigma_prime.to_json(),
            "v_M": self.v_M.to_json(),
            "delta": self.delta.to_json(),
            "h": fmt_rat(self.h),
            "norm_sq": self.norm_sq.to_json(),
            "pairing": self.pairing.to_json(),
        }


def _scale(c: YClass, a: Fraction, b: Fraction) -> Quad:
    # (d + b e) / sqrt(2ab), written over the discriminant 2ab
    return Quad(0, (c.d + b * c.e) / (2 * a * b), 2 * a * b)


def error_profile(c: YClass, b, a) -> ErrorProfile:
    """Deviation of ``m`` from the rescaled weight vector.

    The rescaling ``(d + b e)/sqrt(2ab)`` is the one for which
    ``<eps, w(a)> > 0`` exactly when the class is obstructive at ``a``.
    """
    a, b = as_rat(a), as_rat(b)
    we = weight_expansion(a)
    w = we.flat
    n = max(len(w), len(c.m))
    w = w + [Fraction(0)] * (n - len(w))
    m = list(c.m) + [0] * (n - len(c.m))
    k = _scale(c, a, b)
    eps = [x - k * y for x, y in zip(m, w)]
    l0 = we.block_lengths[0]
    lN = we.block_lengths[-1] if len(we.entries) > 1 else 0
    sigma = sum(eps[l0:we.M], Quad(0))
    sigma_p = sum(eps[l0:we.M - lN], Quad(0))
    norm_sq = sum((x * x for x in eps), Quad(0))
    pairing = sum((x * y for x, y in zip(eps, w)), Quad(0))
    v_M = (c.d + b * c.e) / (we.q * (b + 1)) * (1 / Interval.sqrt_of(a / (2 * b)))
    delta = y_interval(a, b) - Fraction(1, we.q)
    return ErrorProfile(eps, sigma, sigma_p, v_M, delta, c.h(b), norm_sq, pairing)


class BoundUnavailable(ArithmeticError):
    """The enclosure of ``y(a) - 1/q`` is not strictly positive."""


def _delta(a: Fraction, b: Fraction, q: int) -> Interval:
    delta = y_interval(a, b) - Fraction(1, q)
    if delta.lo <= 0:
        raise BoundUnavailable(f"delta enclosure {delta} is not positive")
    return delta


def f_bound(a, b, q: int, h, sigma_cap) -> Interval:
    """Enclosure of ``sqrt(2ba)/delta * (sqrt(sigma q) - (1 - h(1 - 1/b)))``,
    an upper bound for ``2be + h``."""
    a, b, h, s = as_rat(a), as_rat(b), as_rat(h), as_rat(sigma_cap)
    delta = _delta(a, b, q)
    inner = Interval.sqrt_of(s * q) - (1 - h * (1 - 1 / b))
    return Interval.sqrt_of(2 * b * a) / delta * inner


def g_bound(a, b, q: int, h, ratio_cap) -> Interval:
    """Enclosure of ``sqrt(2ba)/delta * (ratio_cap/delta - (1 - h(1 - 1/b)))``,
    where ``ratio_cap`` bounds ``sigma / v_M``."""
    a, b, h, r = as_rat(a), as_rat(b), as_rat(h), as_rat(ratio_cap)
    delta = _delta(a, b, q)
    return Interval.sqrt_of(2 * b * a) / delta * (r / delta - (1 - h * (1 - 1 / b)))


_RATIO_CAPS = (
    (Fraction(1, 3), Fraction(1, 2), Fraction(3, 2)),
    (Fraction(1, 2), Fraction(2, 3), Fraction(14, 9)),
    (Fraction(2, 3), None, Fraction(3, 2)),
)


def ratio_cap(v_M: Interval) -> Fraction:
    """Cap on ``sigma/v_M`` from the case table, taking the largest case hit."""
    caps = [cap for lo, hi, cap in _RATIO_CAPS if v_M.hi >= lo and (hi is None or v_M.lo <= hi)]
    if not caps:
        raise BoundUnavailable(f"v_M enclosure {v_M} is below every tabulated case")
    return max(caps)


def e_upper_bound(a, b, q: int, h, sigma_cap) -> int:
    """Integer upper bound on ``e`` from ``2be + h <= f_bound(...)``.

    A negative result means no class can satisfy the bound.
    """
    b, h = as_rat(b), as_rat(h)
    F = f_bound(a, b, q, h, sigma_cap)
    return math.floor((F.hi - h) / (2 * b))


def block_shape_ok(m: Sequence[int], we: WeightExpansion) -> bool:
    """On each block of equal weights ``m`` is constant, ``(k+1, k, ..., k)``
    or ``(k, ..., k, k-1)``, and at most one block of length >= 2 is not constant."""
    mm = list(m) + [0] * max(0, we.M - len(m))
    uneven = 0
    for blk in we.blocks():
        vals = [mm[i] for i in blk]
        if len(set(vals)) == 1:
            continue
        lead_up = vals[0] == vals[1] + 1 and len(set(vals[1:])) == 1
        tail_down = vals[-1] == vals[-2] - 1 and len(set(vals[:-1])) == 1
        if not (lead_up or tail_down):
            return False
        uneven += 1
    return uneven <= 1


LENGTH_POLICIES = ("atmost", "exact")


def _norm_ok(c: YClass, a: Fraction, b: Fraction) -> bool:
    prof = error_profile(c, b, a)
    return quad_sign(prof.norm_sq - (1 - prof.h ** 2 / (2 * b))) < 0


def _candidates(d: int, e: int, a: Fraction, b: Fraction, w: list[Fraction], policy: str):
    """Nonincreasing tails of length at most ``len(w)`` meeting both sums.

    Entry ``i`` is confined to ``|m_i - v_i| < r`` where ``r^2`` is what is
    left of the error budget; this is only a float prefilter and every hit is
    rechecked exactly by the caller.
    """
    S = 2 * (d + e) - 1
    Q = 2 * d * e + 1
    if S < 0:
        return
    h = d - b * e
    budget = float(1 - h * h / (2 * b)) + 1e-9
    if budget <= 0:
        return
    k = float((d + b * e)) / math.sqrt(float(2 * a * b))
    v = [k * float(x) for x in w]
    M = len(w)
    out: list[int] = []

    def rec(i: int, cap: int, s_rem: int, q_rem: int, used: float):
        if s_rem == 0 and q_rem == 0:
            # remaining entries are zero; they still spend error budget
            spent = used + sum(x * x for x in v[i:])
            if spent < budget and (policy == "atmost" or i == M):
                yield tuple(out)
            return
        if i == M or s_rem <= 0 or q_rem <= 0:
            return
        slots = M - i
        r = math.sqrt(max(budget - used, 0.0))
        lo = max(0, math.ceil(v[i] - r))
        hi = min(cap, s_rem, math.floor(v[i] + r))
        for x in range(hi, lo - 1, -1):
            if x == 0:
                break
            if x * slots < s_rem or x * x > q_rem:
                continue
            # sum of squares of the rest is at least (s_rem - x)^2 / (slots - 1)
            rest = s_rem - x
            if slots > 1 and rest * rest > (q_rem - x * x) * (slots - 1):
                continue
            if slots == 1 and (rest != 0 or q_rem != x * x):
                continue
            out.append(x)
            yield from rec(i + 1, x, rest, q_rem - x * x, used + (x - v[i]) ** 2)
            out.pop()

    yield from rec(0, S, S, Q, 0.0)


def _enumerate_range(b: Fraction, a: Fraction, d_lo: int, d_hi: int, policy: str,
                     e_max: int | None = None) -> list[YClass]:
    we = weight_expansion(a)
    w = we.flat
    rb = math.sqrt(float(2 * b))
    found = []
    for d in range(d_lo, d_hi + 1):
        e_lo = max(0, math.floor((d - rb) / float(b)) - 1)
        e_hi = math.ceil((d + rb) / float(b)) + 1
        if e_max is not None:
            e_hi = min(e_hi, e_max)
        for e in range(e_lo, e_hi + 1):
            h = d - b * e
            if h * h >= 2 * b or d + b * e <= 0:
                continue
            for m in _candidates(d, e, a, b, w, policy):
                c = YClass(d, e, m)
                if not diophantine_ok(c):
                    continue
                if policy == "exact" and len(c.m) != we.M:
                    continue
                if not block_shape_ok(c.m, we):
                    continue
                if not _norm_ok(c, a, b):
                    continue
                if not reduce_exceptional(psi(c)).ok:
                    continue
                if not is_obstructive_at(c, b, a):
                    continue
                found.append(c)
    return found


def _shard_bounds(d_max: int, shards: int) -> list[tuple[int, int]]:
    shards = max(1, min(shards, d_max + 1))
    step = (d_max + 1) / shards
    edges = [round(i * step) for i in range(shards + 1)]
    return [(edges[i], edges[i + 1] - 1) for i in range(shards) if edges[i + 1] > edges[i]]


def enumerate_obstructive(b, a, d_max: int, length_policy: str = "atmost", *,
                          shards: int = 1, workers: int = 1,
                          e_max: int | None = None) -> list[YClass]:
    """All exceptional classes with ``d <= d_max`` that are obstructive at ``a``.

    A class with more tail entries than ``w(a)`` has error norm at least 1
    and can never pass the norm filter, so ``"atmost"`` loses nothing. The
    result is sorted by ``(d, e, m)`` and does not depend on the sharding.
    """
    a, b = as_rat(a), as_rat(b)
    if a < 1 or b < 1:
        raise DomainError("enumeration needs a >= 1 and b >= 1")
    if d_max < 0:
        raise DomainError("d_max must be nonnegative")
    if length_policy not in LENGTH_POLICIES:
        raise ValueError(f"length_policy must be one of {LENGTH_POLICIES}")
    ranges = _shard_bounds(d_max, shards)
    args = [(b, a, lo, hi, length_policy, e_max) for lo, hi in ranges]
    if workers > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_enumerate_star, args))
    else:
        parts = [_enumerate_range(*x) for x in args]
    return sorted(c for part in parts for c in part)


def _enumerate_star(args):
    return _enumerate_range(*args)


def best_class(classes: Iterable[YClass], b, a) -> tuple[Fraction, YClass | None]:
    """Largest obstruction value among ``classes`` at ``(a, b)``."""
    best, arg = Fraction(0), None
    for c in classes:
        if c.d + as_rat(b) * c.e <= 0:
            continue
        val = mu(c, b, a)
        if arg is None or val > best:
            best, arg = val, c
    return best, arg


def check_chern(c: YClass) -> tuple[int, int]:
    return chern_selfint(psi(c))
