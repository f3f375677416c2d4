"""Golden values checked by ``rfkit selftest``.

Each entry recomputes a value from scratch and compares its string form
with the stored expectation. Flags are known disagreements between
published statements; they are reported but never fail the run.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .classes import YClass, is_exceptional, mu, psi, r_family
from .cremona import reduce_exceptional, reduce_packing, reduction_move_counts
from .exact import fmt_rat
from .rf import RF1_CLASS, ech_equality, rf_formula, rf_value


@dataclass(frozen=True)
class Golden:
    name: str
    provenance: str
    expected: str
    compute: Callable[[], str]


def _mu_at_volume(cls: YClass, b, a) -> str:
    val = mu(cls, b, a)
    at_volume = val * val == Fraction(a) / (2 * Fraction(b))
    return f"{fmt_rat(val)} {'=' if at_volume else '!='} volume"


def _rf3() -> str:
    cert = reduce_packing(3, rf_value(3))
    return f"{fmt_rat(rf_value(3))} {cert.verdict.value}"


def _capacity_equality_instances() -> str:
    bs = [Fraction(5, 2), Fraction(3), Fraction(7, 2), Fraction(4)]
    return " ".join(f"{fmt_rat(b)}:{'ok' if ech_equality(b).passed else 'fail'}" for b in bs)


def _r2_reduction() -> str:
    v = psi(r_family(2))
    res = reduce_exceptional(v)
    counts = reduction_move_counts(v)
    return f"{res.ok} greedy={res.moves} 11-achievable={11 in counts}"


GOLDEN: tuple[Golden, ...] = (
    Golden("RF(1) class at 7+1/32", "published", "15/8 = volume",
           lambda: _mu_at_volume(RF1_CLASS, 1, Fraction(225, 32))),
    Golden("RF(2) class at 8+1/36", "published", "17/12 = volume",
           lambda: _mu_at_volume(YClass(6, 3, [3] + [2] * 7), 2, Fraction(289, 36))),
    Golden("RF(2) class at 8+1/32", "published (abstract)", "17/12 != volume",
           lambda: _mu_at_volume(YClass(6, 3, [3] + [2] * 7), 2, Fraction(257, 32))),
    Golden("closed form at b=2", "closed form", "196/25", lambda: fmt_rat(rf_formula(2))),
    Golden("RF(3) and its certificate", "closed form + engine", "363/32 Certified", _rf3),
    Golden("capacity equality, b in {5/2,3,7/2,4}", "computed",
           "5/2:ok 3:ok 7/2:ok 4:ok", _capacity_equality_instances),
    Golden("R_2 is exceptional", "computed", "True",
           lambda: str(is_exceptional(r_family(2)))),
    Golden("R_2 reduction length", "published count 11", "True greedy=9 11-achievable=True",
           _r2_reduction),
)

FLAGS: tuple[str, ...] = (
    "RF(2): two published values disagree, 8+1/32 and 8+1/36; the class (6,3;3,2x7) "
    "meets the volume curve at 8+1/36 = 289/36",
    "RF(2): the closed form for b >= 2 evaluates to 196/25 at b = 2, below 289/36",
    "R_2: the published reduction uses 11 moves; greedy sorted reduction uses 9, and "
    "every length from 9 to 16 is achievable",
)


@dataclass
class Result:
    golden: Golden
    actual: str

    @property
    def passed(self) -> bool:
        return self.actual == self.golden.expected


def run(table=None) -> list[Result]:
    out = []
    for g in GOLDEN if table is None else table:
        try:
            actual = g.compute()
        except Exception as exc:  # a crash is a failed golden, not a crashed selftest
            actual = f"error: {exc!r}"
        out.append(Result(g, actual))
    return out
