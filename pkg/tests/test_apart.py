"""Partial fraction decomposition."""

import random

import pytest

from ringkit import apart, multipoly, parse, rings, unipoly
from ringkit.errors import UnsupportedRingError

QQ = rings.QQ


def _sum(field, parts):
    s = field.zero
    for p in parts:
        s = field.add(s, p)
    return s


def _zp17x():
    R = unipoly.UniRing(rings.ZpRing(17), "x")
    return R, rings.FractionField(R)


def test_rational_golden():
    a = QQ.make(1234213, 2341352)
    parts = apart.apart(QQ, a)
    assert [QQ.format(p) for p in parts] == [
        "(-10)/13", "(-10)/47", "184/479", "1/8", "1"]
    assert _sum(QQ, parts) == a


def test_rational_function_golden_mod17():
    R, F = _zp17x()
    den = parse.parse_element("3 - 3*x^2 - x^3 + x^5", R)
    f = F.make(R.one, den)
    parts = apart.apart(F, f)
    assert [F.format(p) for p in parts] == [
        "15/(1 + x)", "1/(10 + x)", "(14*x)/(15 + 7*x + x^2)", "4/(16 + x)"]
    assert _sum(F, parts) == f


def test_small_rationals_frozen():
    assert [QQ.format(p) for p in apart.apart(QQ, QQ.make(1, 12))] == [
        "1/3", "(-1)/4"]
    assert [QQ.format(p) for p in apart.apart(QQ, QQ.make(7, 2))] == [
        "1/2", "3"]
    assert [QQ.format(p) for p in apart.apart(QQ, QQ.make(-1234213, 2341352))] == [
        "10/13", "10/47", "(-184)/479", "(-1)/8", "-1"]


def test_integral_input_passes_through():
    five = QQ.of(5)
    assert apart.apart(QQ, five) == [five]
    assert apart.apart(QQ, QQ.zero) == [QQ.zero]


def test_repeated_factor_stays_a_power():
    R, F = _zp17x()
    x = R.variable()
    den = R.mul(R.mul(R.add(x, R.one), R.add(x, R.one)), R.add(x, R.of(2)))
    f = F.make(x, den)
    parts = apart.apart(F, f)
    assert [F.format(p) for p in parts] == [
        "(1 + 2*x)/(1 + 2*x + x^2)", "15/(2 + x)"]
    assert [p.den.degree for p in parts] == [2, 1]
    assert _sum(F, parts) == f


def test_sum_back_random_rationals():
    rng = random.Random(12)
    for _ in range(200):
        num = rng.randint(-10**6, 10**6)
        den = rng.randint(1, 10**6)
        a = QQ.make(num, den)
        parts = apart.apart(QQ, a)
        assert _sum(QQ, parts) == a


def test_sum_back_random_rational_functions():
    R, F = _zp17x()
    rng = random.Random(34)
    for _ in range(60):
        num = R.random_element(rng, degree=4)
        den = R.zero
        while den.degree < 1:
            den = R.random_element(rng, degree=6)
        a = F.make(num, den)
        parts = apart.apart(F, a)
        assert _sum(F, parts) == a


def test_denominators_pairwise_coprime():
    rng = random.Random(56)
    for _ in range(50):
        a = QQ.make(rng.randint(1, 10**9), rng.randint(2, 10**9))
        parts = apart.apart(QQ, a)
        dens = [p.den for p in parts if not QQ.is_integral(p)]
        for i in range(len(dens)):
            for j in range(i + 1, len(dens)):
                assert rings.ZZ.gcd(dens[i], dens[j]) == 1

    R, F = _zp17x()
    for _ in range(25):
        num = R.random_element(rng, degree=3)
        den = R.zero
        while den.degree < 2:
            den = R.random_element(rng, degree=5)
        parts = apart.apart(F, F.make(num, den))
        dens = [p.den for p in parts if not F.is_integral(p)]
        for i in range(len(dens)):
            for j in range(i + 1, len(dens)):
                assert R.is_one(R.gcd(dens[i], dens[j]))


def test_denominators_are_prime_powers():
    rng = random.Random(78)
    for _ in range(50):
        a = QQ.make(rng.randint(1, 10**6), rng.randint(2, 10**6))
        for p in apart.apart(QQ, a):
            if QQ.is_integral(p):
                continue
            _, fac = rings.ZZ.factor(p.den)
            assert len(fac) == 1


def test_zero_denominator_rejected():
    broken = rings.Rational(1, 0)
    with pytest.raises(ZeroDivisionError):
        apart.apart(QQ, broken)


def test_non_fraction_field_rejected():
    with pytest.raises(UnsupportedRingError):
        apart.apart(rings.ZZ, 1)


def test_non_euclidean_inner_rejected():
    R = multipoly.MultiRing(rings.ZpRing(17), ("x", "y"))
    F = rings.FractionField(R)
    a = F.from_inner(R.gens()[0])
    with pytest.raises(UnsupportedRingError):
        apart.apart(F, a)
