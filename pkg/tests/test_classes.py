from fractions import Fraction

import pytest

from rfkit.classes import (YClass, best_class, block_shape_ok, check_chern, diophantine_ok,
                           e_family, e_upper_bound, enumerate_obstructive, error_profile,
                           g_bound, is_exceptional, is_obstructive_at, mu, psi, r_family,
                           ratio_cap, volume_constraint)
from rfkit.cremona import XVector
from rfkit.exact import DomainError, Quad
from rfkit.interval import Interval
from rfkit.weights import weight_expansion

R5 = YClass(66, 55, [31] + [30] * 7)


def test_parse_and_label():
    c = YClass.parse("66,55;31,30x7")
    assert c == R5 and c.label() == "(66,55;31,30x7)"
    assert YClass.parse("4,4;3,2^6") == YClass(4, 4, [3] + [2] * 6)


def test_families():
    assert e_family(1) == YClass(1, 1, [1, 1, 1])
    assert r_family(5) == R5
    assert psi(e_family(5)) == XVector(5, [4, 0] + [1] * 10)


@pytest.mark.parametrize("c", [e_family(1), e_family(5), e_family(12), r_family(2), r_family(5),
                               YClass(4, 4, [3] + [2] * 6), YClass(6, 3, [3] + [2] * 7),
                               YClass(0, 1, [1])])
def test_exceptional(c):
    assert diophantine_ok(c) and is_exceptional(c)
    assert check_chern(c) == (1, -1)


def test_not_exceptional():
    assert not is_exceptional(YClass(1, 1, [1, 1]))
    assert not is_exceptional(YClass(3, 0, [1] * 8))


def test_mu_rf1_golden():
    c = YClass(4, 4, [3] + [2] * 6)
    a = Fraction(225, 32)
    assert mu(c, 1, a) == Fraction(15, 8)
    assert Quad(mu(c, 1, a)) == volume_constraint(a, 1)
    assert not is_obstructive_at(c, 1, a)
    assert is_obstructive_at(c, 1, 7)


def test_r5_error_profile():
    prof = error_profile(R5, Fraction(6, 5), 8)
    assert prof.h == 0
    assert prof.norm_sq < 1
    assert prof.pairing > 0


def test_bounds():
    a, b = Fraction(17, 2), Fraction(6, 5)
    assert e_upper_bound(a, b, 2, 0, Fraction(3, 2)) == 1
    assert g_bound(a, b, 2, Fraction(8, 5), Fraction(14, 9)).hi < 9
    assert ratio_cap(Interval(Fraction(1, 3), Fraction(2, 3))) >= Fraction(3, 2)


def test_block_shape():
    we = weight_expansion(Fraction(25, 3))
    assert block_shape_ok([3] * 8 + [1, 1, 1], we)
    assert block_shape_ok([4] + [3] * 7 + [1, 1, 1], we)
    assert not block_shape_ok([4] + [3] * 7 + [1, 1, 0], we)  # two uneven blocks
    assert not block_shape_ok([4, 2] + [3] * 6, we)


def test_best_class():
    val, c = best_class([e_family(5), e_family(4)], 3, 11)
    assert c == e_family(5) and val == Fraction(11, 8)


def _parts(S, Q, L, cap):
    if S == 0 and Q == 0:
        yield ()
        return
    if L == 0 or S <= 0:
        return
    for x in range(min(cap, S), 0, -1):
        if x * x <= Q:
            for rest in _parts(S - x, Q - x * x, L - 1, x):
                yield (x,) + rest


def _brute_force(b, a, d_max, e_max):
    M = weight_expansion(a).M
    out = []
    for d in range(d_max + 1):
        for e in range(e_max + 1):
            S, Q = 2 * (d + e) - 1, 2 * d * e + 1
            if S < 0:
                continue
            for m in _parts(S, Q, M, S):
                c = YClass(d, e, m)
                if is_exceptional(c) and is_obstructive_at(c, b, a):
                    out.append(c)
    return sorted(out)


@pytest.mark.parametrize("b,a,d_max", [
    (1, 1, 3), (1, 2, 4), (1, 3, 5), (1, Fraction(5, 2), 5), (Fraction(3, 2), 4, 5),
    (2, Fraction(9, 2), 6), (1, 7, 6), (Fraction(6, 5), Fraction(17, 2), 5),
])
def test_enumerator_matches_brute_force(b, a, d_max):
    b, a = Fraction(b), Fraction(a)
    assert enumerate_obstructive(b, a, d_max) == _brute_force(b, a, d_max, 3 * d_max + 3)


def test_ball_case():
    assert enumerate_obstructive(1, 1, 2) == [YClass(0, 1, [1]), YClass(1, 0, [1])]


def test_sharding_deterministic():
    base = enumerate_obstructive(3, 11, 12)
    assert base == [e_family(5)]
    for shards in (2, 8):
        assert enumerate_obstructive(3, 11, 12, shards=shards) == base
    assert enumerate_obstructive(3, 11, 12, shards=4, workers=2) == base


def test_enumerate_errors():
    with pytest.raises(DomainError):
        enumerate_obstructive(1, Fraction(1, 2), 3)
    with pytest.raises(ValueError):
        enumerate_obstructive(1, 2, 3, "bogus")
