"""ECH capacities of ellipsoids and polydiscs, and the capacity-ratio
lower bound for the embedding function."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import DomainError, as_rat, fmt_rat


@dataclass(frozen=True)
class CapacitySeq:
    shape: str  # "E" or "P"
    x: Fraction
    y: Fraction
    values: tuple[Fraction, ...]

    def __getitem__(self, k: int) -> Fraction:
        return self.values[k]

    def __len__(self) -> int:
        return len(self.values)

    def to_json(self) -> dict:
        return {
            "shape": self.shape,
            "x": fmt_rat(self.x),
            "y": fmt_rat(self.y),
            "values": [fmt_rat(v) for v in self.values],
        }


def _check(a, b, N):
    a, b = as_rat(a), as_rat(b)
    if a <= 0 or b <= 0:
        raise DomainError("capacities need positive parameters")
    if N < 0:
        raise DomainError("N must be nonnegative")
    return a, b


def ellipsoid_caps(a, b, N: int, method: str = "merge") -> CapacitySeq:
    """First ``N+1`` values of ``{a m + b n}`` in nondecreasing order, with repeats."""
    a, b = _check(a, b, N)
    if method == "merge":
        vals = _ellipsoid_merge(a, b, N + 1)
    elif method == "enumerate":
        vals = _ellipsoid_enumerate(a, b, N + 1)
    else:
        raise ValueError(f"unknown method {method!r}")
    return CapacitySeq("E", a, b, tuple(vals))


def _ellipsoid_merge(a: Fraction, b: Fraction, count: int) -> list[Fraction]:
    # Walk the grid (m, n) in value order; each cell is pushed once, from
    # its left neighbour, or from below when m == 0.
    heap = [(Fraction(0), 0, 0)]
    out = []
    while len(out) < count:
        val, m, n = heapq.heappop(heap)
        out.append(val)
        heapq.heappush(heap, (val + a, m + 1, n))
        if m == 0:
            heapq.heappush(heap, (val + b, 0, n + 1))
    return out


def _ellipsoid_enumerate(a: Fraction, b: Fraction, count: int) -> list[Fraction]:
    # c_{count-1} <= (count-1) * min(a, b), so this box holds every needed value.
    bound = (count - 1) * min(a, b)
    vals = []
    for m in range(int(bound / a) + 1):
        for n in range(int((bound - a * m) / b) + 1):
            vals.append(a * m + b * n)
    vals.sort()
    return vals[:count]


def polydisc_caps(a, b, N: int) -> CapacitySeq:
    """``c_k = min{a m + b n : (m+1)(n+1) >= k+1}`` for ``k = 0..N``."""
    a, b = _check(a, b, N)
    vals = []
    for k in range(N + 1):
        best = None
        for m in range(k + 1):
            n = -(-(k + 1) // (m + 1)) - 1
            v = a * m + b * n
            if best is None or v < best:
                best = v
        vals.append(best)
    return CapacitySeq("P", a, b, tuple(vals))


def default_kmax(a, b) -> int:
    return 20 * math.ceil(as_rat(a)) * math.ceil(as_rat(b))


def cb_lower(a, b, K: int | None = None) -> tuple[Fraction, int]:
    """Largest ratio ``c_k(E(1,a)) / c_k(E(1,2b))`` over ``1 <= k <= K``.

    Always a valid lower bound for the embedding function; the default K is
    a heuristic and larger K can only raise the value.
    """
    a, b = as_rat(a), as_rat(b)
    if a < 1 or b < 1:
        raise DomainError("cb_lower needs a >= 1 and b >= 1")
    if K is None:
        K = default_kmax(a, b)
    if K < 1:
        raise DomainError("K must be >= 1")
    src = ellipsoid_caps(1, a, K)
    tgt = ellipsoid_caps(1, 2 * b, K)
    best, arg = Fraction(0), 0
    for k in range(1, K + 1):
        r = src[k] / tgt[k]
        if r > best:
            best, arg = r, k
    return best, arg


@dataclass(frozen=True)
class EchVerdict:
    ok: bool
    K: int
    k: int | None = None  # first violating index

    def __str__(self):
        return f"yes-up-to-{self.K}" if self.ok else f"no-at-{self.k}"


def embeds_by_ech(a, target_a, target_b, K: int) -> EchVerdict:
    """Compare ``c_k(E(1,a))`` with ``c_k(E(target_a, target_b))`` for ``k <= K``."""
    src = ellipsoid_caps(1, a, K)
    tgt = ellipsoid_caps(target_a, target_b, K)
    for k in range(K + 1):
        if src[k] > tgt[k]:
            return EchVerdict(False, K, k)
    return EchVerdict(True, K)
