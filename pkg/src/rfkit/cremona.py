"""Cremona moves on blow-up vectors, the exceptional-class reduction test,
and the packing reduction that certifies volume-filling embeddings."""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import NamedTuple, Sequence

from .exact import DomainError, Quad, as_rat, fmt_rat, sign
from .weights import weight_expansion

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class XVector:
    """``(d; m_1, ..., m_n)`` with entries that are ints, Fractions or Quads."""

    head: object
    tail: tuple

    def __init__(self, head, tail: Sequence = ()):
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "tail", tuple(tail))

    def __iter__(self):
        yield self.head
        yield from self.tail

    def padded(self, n: int = 3) -> tuple:
        if len(self.tail) >= n:
            return self.tail
        return self.tail + (0,) * (n - len(self.tail))

    def trimmed(self) -> "XVector":
        tail = list(self.tail)
        while tail and sign(tail[-1]) == 0:
            tail.pop()
        return XVector(self.head, tail)

    def to_json(self) -> list:
        return [_entry_json(x) for x in self]

    def __str__(self):
        return f"({_entry_str(self.head)}; {', '.join(_entry_str(x) for x in self.tail)})"


def _entry_json(x):
    if isinstance(x, Quad):
        return fmt_rat(x.rat) if x.is_rational else x.to_json()
    return fmt_rat(as_rat(x))


def _entry_str(x):
    if isinstance(x, Quad) and x.is_rational:
        return fmt_rat(x.rat)
    if isinstance(x, (int, Fraction)):
        return fmt_rat(as_rat(x))
    return str(x)


def defect(v: XVector):
    m1, m2, m3 = v.padded()[:3]
    return v.head - m1 - m2 - m3


def cremona_move(v: XVector) -> XVector:
    """Add the defect to the head and to the three leading tail entries."""
    tail = v.padded()
    m1, m2, m3 = tail[:3]
    return XVector(
        2 * v.head - m1 - m2 - m3,
        (v.head - m2 - m3, v.head - m1 - m3, v.head - m1 - m2) + tail[3:],
    )


def order(v: XVector) -> XVector:
    # stable, so equal entries keep their relative order
    return XVector(v.head, sorted(v.tail, reverse=True))


def is_ordered(v: XVector) -> bool:
    return all(sign(x - y) >= 0 for x, y in zip(v.tail, v.tail[1:]))


def _int_entries(v: XVector) -> list[int]:
    out = []
    for x in v:
        if isinstance(x, Quad):
            x = x.to_rat()
        x = as_rat(x)
        if x.denominator != 1:
            raise ValueError(f"non-integer entry {x}")
        out.append(int(x))
    return out


def chern_selfint(v: XVector) -> tuple[int, int]:
    """``(3d - sum m, d^2 - sum m^2)``; exceptional classes give ``(1, -1)``."""
    d, *m = _int_entries(v)
    return 3 * d - sum(m), d * d - sum(x * x for x in m)


def is_terminal(v: XVector) -> bool:
    """True for ``(0; -1, 0, ..., 0)`` up to padding and tail order."""
    if sign(v.head) != 0:
        return False
    nonzero = [x for x in v.tail if sign(x) != 0]
    return len(nonzero) == 1 and nonzero[0] == -1


class ExceptionalReduction(NamedTuple):
    ok: bool
    moves: int


def reduce_exceptional_trace(v: XVector, max_moves: int | None = None) -> tuple[bool, list[XVector]]:
    """Greedy reduction of an integer vector; returns the ordered vectors visited."""
    v = XVector(*_split(_int_entries(v)))
    if max_moves is None:
        max_moves = 10 * len(v.tail) + 100
    path = [order(v)]
    while True:
        cur = path[-1]
        if is_terminal(cur):
            return True, path
        if defect(cur) >= 0:
            log.debug("reduced to non-terminal vector %s", cur)
            return False, path
        if len(path) - 1 >= max_moves:
            log.warning("move cap %d hit at %s", max_moves, cur)
            return False, path
        path.append(order(cremona_move(cur)))


def _split(entries):
    return entries[0], entries[1:]


def reduce_exceptional(v: XVector, max_moves: int | None = None) -> ExceptionalReduction:
    ok, path = reduce_exceptional_trace(v, max_moves)
    return ExceptionalReduction(ok, len(path) - 1)


class Verdict(str, enum.Enum):
    CERTIFIED = "Certified"
    NEGATIVE_ENTRY = "Inconclusive-negative-entry"
    ITERATION_LIMIT = "Inconclusive-iteration-limit"


@dataclass
class Step:
    vector: XVector
    defect: Quad
    action: str  # "start", "order" or "cremona"


@dataclass
class Certificate:
    a: Fraction
    b: Fraction
    disc: Fraction
    steps: list[Step] = field(default_factory=list)
    verdict: Verdict = Verdict.ITERATION_LIMIT
    moves: int = 0
    max_moves: int = 0

    @property
    def certified(self) -> bool:
        return self.verdict is Verdict.CERTIFIED

    @property
    def start(self) -> XVector:
        return self.steps[0].vector

    @property
    def final(self) -> XVector:
        return self.steps[-1].vector

    def replay(self) -> list[XVector]:
        """Re-run the recorded actions from the start vector."""
        out = [self.start]
        for st in self.steps[1:]:
            prev = out[-1]
            out.append(order(prev) if st.action == "order" else cremona_move(prev))
        return out

    def to_json(self, trace: bool = True) -> dict:
        obj = {
            "a": fmt_rat(self.a),
            "b": fmt_rat(self.b),
            "disc": fmt_rat(self.disc),
            "verdict": self.verdict.value,
            "moves": self.moves,
            "max_moves": self.max_moves,
            "final": self.final.to_json(),
            "final_defect": _entry_json(self.steps[-1].defect),
        }
        if trace:
            obj["steps"] = [
                {"action": s.action, "vector": s.vector.to_json(), "defect": _entry_json(s.defect)}
                for s in self.steps
            ]
        return obj


def packing_start(b, a) -> XVector:
    """``((b+1)L; bL, L, w(a))`` with ``L = sqrt(a/(2b))`` at the volume constraint."""
    a, b = as_rat(a), as_rat(b)
    lam = Quad.sqrt(a / (2 * b))
    return XVector((b + 1) * lam, [b * lam, lam] + [Quad(w) for w in weight_expansion(a).flat])


def reduce_packing(b, a, max_moves: int | None = None) -> Certificate:
    """Try to certify ``E(1,a) -> P(L, Lb)`` at ``L = sqrt(a/(2b))`` by Cremona moves.

    Certified is a proof; the two Inconclusive verdicts only mean that the
    greedy sequence did not succeed.
    """
    a, b = as_rat(a), as_rat(b)
    if a < 1 or b < 1:
        raise DomainError("reduce_packing needs a >= 1 and b >= 1")
    v = packing_start(b, a)
    if max_moves is None:
        max_moves = 10 * weight_expansion(a).M + 100
    cert = Certificate(a=a, b=b, disc=a / (2 * b), max_moves=max_moves)
    cert.steps.append(Step(v, defect(v), "start"))
    while True:
        v = order(v)
        dft = defect(v)
        cert.steps.append(Step(v, dft, "order"))
        if any(sign(x) < 0 for x in v):
            cert.verdict = Verdict.NEGATIVE_ENTRY
            break
        if sign(dft) >= 0:
            cert.verdict = Verdict.CERTIFIED
            break
        if cert.moves >= max_moves:
            cert.verdict = Verdict.ITERATION_LIMIT
            break
        v = cremona_move(v)
        cert.moves += 1
        cert.steps.append(Step(v, defect(v), "cremona"))
    return cert


def reduction_move_counts(v: XVector, max_states: int = 200_000) -> set[int]:
    """Every length of a move sequence taking an integer vector to
    ``(0; -1, 0, ...)`` when each move may use any three tail entries with
    negative defect. Exhaustive, so only for small vectors."""
    seen = 0

    @lru_cache(maxsize=None)
    def counts(h: int, tail: tuple) -> frozenset:
        nonlocal seen
        seen += 1
        if seen > max_states:
            raise RuntimeError("state budget exhausted")
        if h == 0 and sorted(x for x in tail if x) == [-1]:
            return frozenset([0])
        padded = tail + (0, 0, 0)
        out = set()
        for idx in set(combinations(range(len(padded)), 3)):
            dft = h - sum(padded[i] for i in idx)
            if dft >= 0 or h + dft < 0:
                continue
            nt = list(padded)
            for i in idx:
                nt[i] += dft
            key = tuple(sorted((x for x in nt if x), reverse=True))
            out.update(n + 1 for n in counts(h + dft, key))
        return frozenset(out)

    d, *m = _int_entries(v)
    return set(counts(d, tuple(sorted((x for x in m if x), reverse=True))))
