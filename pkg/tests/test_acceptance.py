"""Acceptance criteria, one test each. Every test prints a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
"""

import random
import sys
import time
from fractions import Fraction

import pytest

from rfkit.classes import YClass, enumerate_obstructive, is_obstructive_at, mu, psi, r_family
from rfkit.cremona import (Verdict, XVector, chern_selfint, cremona_move, reduce_exceptional,
                           reduce_packing)
from rfkit.ech import ellipsoid_caps, polydisc_caps
from rfkit.exact import Quad
from rfkit.rf import beta, n_b, rf_beta, rf_value, verify_rf
from rfkit.selftest import FLAGS
from rfkit.weights import weight_expansion


@pytest.fixture
def report(capsys):
    def emit(num: int, title: str, ok: bool, detail: str = "") -> None:
        line = f"criterion {num:2d} {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        with capsys.disabled():
            print("\n" + line)
        assert ok, line

    return emit


def test_criterion_01_rf1_golden(report):
    a = Fraction(225, 32)
    val = mu(YClass(4, 4, [3] + [2] * 6), 1, a)
    ok = val == Fraction(15, 8) and val * val == a / 2
    report(1, "mu((4,4;3,2x6), 1, 7+1/32) = 15/8 = volume", ok, f"mu={val}")


def test_criterion_02_rf2_conflict(report):
    a = Fraction(289, 36)
    val = mu(YClass(6, 3, [3] + [2] * 7), 2, a)
    flagged = any("8+1/32" in f and "8+1/36" in f for f in FLAGS) and any("196/25" in f for f in FLAGS)
    ok = val == Fraction(17, 12) and val * val == a / 4 and flagged
    report(2, "mu((6,3;3,2x7), 2, 289/36) = 17/12 = volume; conflicts flagged", ok, f"mu={val}")


def test_criterion_03_rf3_pipeline(report):
    rf = rf_value(3)
    rep = verify_rf(3)
    cert = reduce_packing(3, rf)
    M = weight_expansion(rf).M
    ok = (rf == Fraction(363, 32) and rep.passed and len(rep.checks) == 5
          and cert.verdict is Verdict.CERTIFIED and cert.moves <= 10 * M + 100
          and rep.lam_at_rf == Quad(Fraction(11, 8)))
    report(3, "RF(3) = 363/32, five checks pass, certified", ok,
           f"moves={cert.moves} cap={10 * M + 100}")


def test_criterion_04_capacity_equality(report):
    details, ok = [], True
    for b in (Fraction(5, 2), Fraction(3), Fraction(7, 2), Fraction(4)):
        n = n_b(b)
        k = 2 * n + 1
        lam = Fraction(k) / (n + b)
        E = ellipsoid_caps(1, k, 200)
        P = polydisc_caps(lam, lam * b, 200)
        eq = E[k] == k and P[k] == k
        mono = all(E[j] <= P[j] for j in range(201))
        ok &= eq and mono
        details.append(f"b={b}:{'ok' if eq and mono else 'bad'}")
    report(4, "c_{2n+1}(E(1,2n+1)) = 2n+1 = c_{2n+1}(P(lam,lam b)), monotone to k=200", ok,
           " ".join(details))


def test_criterion_05_r5_enumeration(report):
    t = time.perf_counter()
    found = enumerate_obstructive(Fraction(6, 5), 8, 70)
    dt = time.perf_counter() - t
    targets = {YClass(66, 55, [31] + [30] * 7), YClass(55, 66, [31] + [30] * 7)}
    ok = len(found) == 1 and found[0] in targets and dt <= 300
    report(5, "enumerate(b=6/5, a=8, d<=70) = {R_5}", ok,
           f"{[c.label() for c in found]} in {dt:.2f}s")


def test_criterion_06_empty_windows(report):
    res = {a: enumerate_obstructive(Fraction(6, 5), a, 8, "exact")
           for a in (Fraction(17, 2), Fraction(25, 3), Fraction(26, 3))}
    ok = all(not v for v in res.values())
    report(6, "no obstructive class at b=6/5, a in {17/2, 25/3, 26/3}, exact length, d<=8", ok,
           ", ".join(f"{a}:{len(v)}" for a, v in res.items()))


def test_criterion_07_r_family_reduction_length(report):
    got = {n: reduce_exceptional(psi(r_family(n))) for n in range(2, 11)}
    ok = all(r.ok and r.moves == 4 * n + 3 for n, r in got.items())
    report(7, "reduce(psi(R_n)) = (true, 4n+3) for n = 2..10", ok,
           "moves " + " ".join(f"n={n}:{r.moves}" for n, r in got.items()) + " (expected 4n+3)")


def test_criterion_08_discontinuity(report):
    obstructive = all(is_obstructive_at(r_family(n), beta(n), 8) for n in range(5, 51))
    gaps = [abs(8 - rf_beta(n)[0]) for n in range(5, 1101)]
    decreasing = all(x > y for x, y in zip(gaps, gaps[1:]))
    small = all(g < Fraction(1, 1000) for g in gaps[1000 - 5:])
    ok = obstructive and decreasing and small
    report(8, "R_n obstructive at (beta_n, 8) for n=5..50; |8 - rf_beta| decreasing, < 1e-3 past 1000",
           ok, f"rf_beta(5)={rf_beta(5)[0]}")


def test_criterion_09_property_suites(report):
    rng = random.Random(9)
    cremona_ok = True
    for _ in range(1000):
        d = rng.randint(-30, 30)
        m = [rng.randint(-30, 30) for _ in range(rng.randint(3, 12))]
        v = XVector(d, m)
        cremona_ok &= chern_selfint(cremona_move(v)) == chern_selfint(v)
    weights_ok = True
    for _ in range(500):
        a = Fraction(rng.randint(1, 4000), rng.randint(1, 200))
        if a < 1:
            a += 1
        we = weight_expansion(a)
        weights_ok &= (sum(x * x for x in we.flat) == a
                       and sum(we.flat) == a + 1 - Fraction(1, we.q))
    ech_ok = True
    for _ in range(100):
        x = Fraction(rng.randint(1, 60), rng.randint(1, 10))
        y = Fraction(rng.randint(1, 60), rng.randint(1, 10))
        t = Fraction(rng.randint(1, 20), rng.randint(1, 7))
        N = rng.randint(1, 60)
        for caps in (ellipsoid_caps, polydisc_caps):
            s = caps(x, y, N).values
            ech_ok &= caps(t * x, t * y, N).values == tuple(t * v for v in s)
            ech_ok &= caps(y, x, N).values == s
            ech_ok &= all(u <= w for u, w in zip(s, s[1:]))
            ech_ok &= all(u <= w for u, w in zip(s, caps(x + t, y, N).values))
    base = enumerate_obstructive(Fraction(6, 5), 8, 70)
    shard_ok = all(enumerate_obstructive(Fraction(6, 5), 8, 70, shards=s) == base for s in (2, 8))
    shard_ok &= enumerate_obstructive(Fraction(6, 5), 8, 70, shards=8, workers=2) == base
    ok = cremona_ok and weights_ok and ech_ok and shard_ok
    report(9, "property suites: Cremona invariants, weight identities, ECH laws, sharding", ok,
           f"cremona={cremona_ok} weights={weights_ok} ech={ech_ok} shards={shard_ok}")


def test_criterion_10_near_one_fillings(report):
    v1 = reduce_packing(Fraction(10, 9), 10).verdict
    v2 = reduce_packing(Fraction(11, 10), 10).verdict
    ok = v1 is Verdict.CERTIFIED and v2 is Verdict.CERTIFIED
    report(10, "reduce_packing certified at (b=10/9, a=10) and (b=11/10, a=10)", ok,
           f"{v1.value}, {v2.value}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
