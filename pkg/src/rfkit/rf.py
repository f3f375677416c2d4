"""The rigid-flexible value: where the embedding function of
``E(1,a) -> P(L, Lb)`` starts to follow the volume constraint."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .classes import YClass, e_family, is_obstructive_at, mu, r_family, volume_constraint
from .cremona import reduce_packing
from .ech import ellipsoid_caps, polydisc_caps
from .exact import DomainError, Quad, as_rat, ceil_q, fmt_rat, quad_sign
from .interval import Interval


class BoundaryWarning(UserWarning):
    """The closed form is evaluated at the edge of the range it is proven on."""


def n_b(b) -> int:
    """``floor(b) + ceil(sqrt(2b) + frac(b)) - 1``, with the ceiling decided exactly."""
    b = as_rat(b)
    if b < 1:
        raise DomainError("n_b needs b >= 1")
    fl = b.numerator // b.denominator
    return fl + ceil_q(Quad(b - fl, 1, 2 * b)) - 1


def e_class(n: int) -> YClass:
    if n < 1:
        raise DomainError("e_class needs n >= 1")
    return e_family(n)


def rf_formula(b) -> Fraction:
    """``2b ((2 n_b + 1) / (b + n_b))^2`` without any domain check."""
    b = as_rat(b)
    n = n_b(b)
    return 2 * b * Fraction(2 * n + 1) ** 2 / (b + n) ** 2


def rf_value(b) -> Fraction:
    b = as_rat(b)
    if b < 2:
        raise DomainError(f"closed form only holds for b >= 2 (got {b}); see rf_beta")
    if b == 2:
        warnings.warn(
            "b = 2: the closed form gives 196/25, but the class (6,3;3,2x7) "
            "stays obstructive up to 289/36",
            BoundaryWarning,
            stacklevel=2,
        )
    return rf_formula(b)


def beta(n: int) -> Fraction:
    return Fraction(n + 1, n)


def mu_beta(n: int) -> Fraction:
    return Fraction(8 * n * n + 8 * n + 1, 2 * (2 * n + 1) * (n + 1))


def rf_beta(n: int) -> tuple[Fraction, YClass]:
    """RF at ``b = (n+1)/n``: the point where ``R_n``'s value at 8 meets the volume curve."""
    if n < 5:
        raise DomainError("rf_beta needs n >= 5")
    return 2 * beta(n) * mu_beta(n) ** 2, r_family(n)


def rf_beta_literal(n: int) -> Fraction:
    """The unsquared expression ``2 beta_n mu_n``, kept for comparison only."""
    return 2 * beta(n) * mu_beta(n)


def upper_bound(b) -> Interval:
    """Enclosure of ``(sqrt(2b) + 1)^2``."""
    b = as_rat(b)
    root = Interval.sqrt_of(2 * b)
    return (root + 1) * (root + 1)


@dataclass
class Check:
    name: str
    passed: bool
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "witness": self.witness}


@dataclass
class RFReport:
    b: Fraction
    n_b: int
    rf: Fraction
    obstructing_class: YClass
    upper_bound: Interval
    checks: list[Check] = field(default_factory=list)
    flags: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def lam_at_rf(self) -> Quad:
        return volume_constraint(self.rf, self.b)

    def to_json(self) -> dict:
        return {
            "b": fmt_rat(self.b),
            "n_b": self.n_b,
            "rf": fmt_rat(self.rf),
            "rf_decimal": float(self.rf),
            "lambda_at_rf": self.lam_at_rf.to_json(),
            "obstructing_class": self.obstructing_class.to_json(),
            "upper_bound": self.upper_bound.to_json(),
            "checks": [c.to_json() for c in self.checks],
            "flags": self.flags,
            "passed": self.passed,
        }


def ech_equality(b, K: int = 200) -> Check:
    """Capacity ``2n+1`` of ``E(1, 2n+1)`` equals that of ``P(L, Lb)`` at
    ``L = (2n+1)/(n+b)``, and the ellipsoid never exceeds the polydisc up to K."""
    b = as_rat(b)
    n = n_b(b)
    k = 2 * n + 1
    lam = Fraction(k) / (n + b)
    K = max(K, k)
    E = ellipsoid_caps(1, k, K)
    P = polydisc_caps(lam, lam * b, K)
    bad = [j for j in range(K + 1) if E[j] > P[j]]
    return Check(
        "ech-equality",
        E[k] == k == P[k] and not bad,
        {"k": k, "lambda": fmt_rat(lam), "c_k_E": fmt_rat(E[k]), "c_k_P": fmt_rat(P[k]),
         "K": K, "first_violation": bad[0] if bad else None},
    )


def _left_samples(lo: Fraction, hi: Fraction, s: int) -> list[Fraction]:
    return [lo + j * (hi - lo) / (s + 1) for j in range(1, s + 1)]


def verify_rf(b, samples_left: int = 3, samples_right: int = 3, K: int = 200,
              max_moves: int | None = None) -> RFReport:
    """Run every check of the closed form at one rational ``b > 2``.

    Failures are recorded in the report; nothing is raised for them.
    """
    b = as_rat(b)
    if b <= 2:
        raise DomainError("verify_rf needs b > 2")
    n = n_b(b)
    rf = rf_formula(b)
    cls = e_class(n)
    ub = upper_bound(b)
    rep = RFReport(b, n, rf, cls, ub)

    rep.checks.append(ech_equality(b, K))

    m_rf = mu(cls, b, rf)
    rep.checks.append(Check(
        "volume-equality",
        m_rf > 0 and m_rf * m_rf == rf / (2 * b),
        {"mu": fmt_rat(m_rf), "volume_sq": fmt_rat(rf / (2 * b))},
    ))

    left = _left_samples(Fraction(2 * n + 1), rf, samples_left)
    bad_left = [fmt_rat(a) for a in left if not is_obstructive_at(cls, b, a)]
    rep.checks.append(Check(
        "obstructed-left",
        not bad_left,
        {"samples": [fmt_rat(a) for a in left], "failures": bad_left},
    ))

    # a coarse rational below the bound keeps the weight expansions short
    top = Fraction(math.floor(ub.lo * 32), 32)
    right = [rf] + _left_samples(rf, top, samples_right)
    certs = {fmt_rat(a): reduce_packing(b, a, max_moves) for a in right}
    rep.checks.append(Check(
        "certified-right",
        all(c.certified for c in certs.values()),
        {a: {"verdict": c.verdict.value, "moves": c.moves} for a, c in certs.items()},
    ))

    exact_gap = Quad(2 * b + 1 - rf, 2, 2 * b)  # (sqrt(2b)+1)^2 - RF
    rep.checks.append(Check(
        "upper-bound",
        rf <= ub.lo,
        {"upper": ub.to_json(), "exact_sign_of_gap": quad_sign(exact_gap)},
    ))
    return rep


@dataclass
class DiscontinuityRow:
    n: int
    b: Fraction
    cls: YClass
    mu: Fraction
    margin: Fraction  # mu^2 - 8/(2b)
    obstructive: bool
    rf: Fraction
    rf_literal: Fraction

    def to_json(self) -> dict:
        return {
            "n": self.n, "b": fmt_rat(self.b), "class": self.cls.label(),
            "mu": fmt_rat(self.mu), "margin": fmt_rat(self.margin),
            "obstructive": self.obstructive, "rf": fmt_rat(self.rf),
            "rf_decimal": float(self.rf), "rf_literal": fmt_rat(self.rf_literal),
        }


RF1_CLASS = YClass(4, 4, [3] + [2] * 6)
RF1_VALUE = Fraction(225, 32)  # 7 + 1/32


@dataclass
class DiscontinuityTable:
    rows: list[DiscontinuityRow]
    rf1: Fraction
    rf1_class: YClass
    rf1_mu: Fraction
    rf1_equal: bool

    def to_json(self) -> dict:
        return {
            "rows": [r.to_json() for r in self.rows],
            "rf1": fmt_rat(self.rf1),
            "rf1_class": self.rf1_class.label(),
            "rf1_mu": fmt_rat(self.rf1_mu),
            "rf1_equal": self.rf1_equal,
        }


def discontinuity_demo(n_list) -> DiscontinuityTable:
    """Obstruction of ``R_n`` at ``a = 8`` for ``b = (n+1)/n``, next to the value at ``b = 1``."""
    rows = []
    for n in n_list:
        rf, cls = rf_beta(n)
        bn = beta(n)
        val = mu(cls, bn, 8)
        rows.append(DiscontinuityRow(
            n, bn, cls, val, val * val - Fraction(8) / (2 * bn),
            is_obstructive_at(cls, bn, 8), rf, rf_beta_literal(n),
        ))
    m1 = mu(RF1_CLASS, 1, RF1_VALUE)
    return DiscontinuityTable(rows, RF1_VALUE, RF1_CLASS, m1, m1 * m1 == RF1_VALUE / 2)


def ceil_sqrt_check(b) -> bool:
    """True when ``sqrt(2b) + frac(b)`` is an integer (a breakpoint of n_b)."""
    b = as_rat(b)
    fl = b.numerator // b.denominator
    x = Quad(b - fl, 1, 2 * b)
    return x.is_rational and x.rat.denominator == 1


__all__ = [
    "BoundaryWarning", "Check", "RFReport", "beta", "ceil_sqrt_check", "discontinuity_demo",
    "e_class", "ech_equality", "mu_beta", "n_b", "rf_beta", "rf_beta_literal", "rf_formula",
    "rf_value", "upper_bound", "verify_rf",
]
