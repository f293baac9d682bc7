"""Gaussian elimination over various fields."""

import random

import pytest

from ringkit import galois, linsolve, multipoly, rings
from ringkit.errors import SingularSystemError, UnsupportedRingError

QQ = rings.QQ


def q(n, d=1):
    return QQ.make(n, d)


def _residual(ring, lhs, sol, rhs):
    out = []
    for i, row in enumerate(lhs):
        acc = ring.zero
        for a, x in zip(row, sol):
            acc = ring.add(acc, ring.mul(a, x))
        out.append(ring.sub(acc, rhs[i]))
    return out


def test_two_by_two_rationals():
    # x + y = 3, x - y = 1
    lhs = [[q(1), q(1)], [q(1), q(-1)]]
    rhs = [q(3), q(1)]
    assert linsolve.gaussian_solve(QQ, lhs, rhs) == [q(2), q(1)]


def test_zero_pivot_forces_row_swap():
    lhs = [[q(0), q(1)], [q(1), q(0)]]
    rhs = [q(5), q(7)]
    assert linsolve.gaussian_solve(QQ, lhs, rhs) == [q(7), q(5)]


def test_three_by_three_rationals_frozen():
    lhs = [
        [q(2), q(1), q(-1)],
        [q(-3), q(-1), q(2)],
        [q(-2), q(1), q(2)],
    ]
    rhs = [q(8), q(-11), q(-3)]
    # classic textbook system, solution (2, 3, -1)
    assert linsolve.gaussian_solve(QQ, lhs, rhs) == [q(2), q(3), q(-1)]


def test_fractional_entries():
    lhs = [[q(1, 2), q(1, 3)], [q(1, 4), q(1, 5)]]
    rhs = [q(1), q(1)]
    sol = linsolve.gaussian_solve(QQ, lhs, rhs)
    assert all(QQ.is_zero(r) for r in _residual(QQ, lhs, sol, rhs))
    assert sol == [q(-8), q(15)]


def test_singular_but_consistent_reports_rank():
    lhs = [[q(1), q(2)], [q(2), q(4)]]
    rhs = [q(3), q(6)]
    with pytest.raises(SingularSystemError) as info:
        linsolve.gaussian_solve(QQ, lhs, rhs)
    assert info.value.rank == 1
    assert info.value.consistent is True


def test_singular_inconsistent_reports_rank():
    lhs = [[q(1), q(1)], [q(1), q(1)]]
    rhs = [q(1), q(2)]
    with pytest.raises(SingularSystemError) as info:
        linsolve.gaussian_solve(QQ, lhs, rhs)
    assert info.value.rank == 1
    assert info.value.consistent is False


def test_zero_matrix_rank_zero():
    lhs = [[q(0), q(0)], [q(0), q(0)]]
    with pytest.raises(SingularSystemError) as info:
        linsolve.gaussian_solve(QQ, lhs, [q(0), q(0)])
    assert info.value.rank == 0
    assert info.value.consistent is True


def test_rejects_non_field():
    with pytest.raises(UnsupportedRingError):
        linsolve.gaussian_solve(rings.ZZ, [[1]], [1])


def test_rejects_shape_mismatch():
    with pytest.raises(ValueError):
        linsolve.gaussian_solve(QQ, [[q(1), q(2)]], [q(1)])
    with pytest.raises(ValueError):
        linsolve.gaussian_solve(QQ, [[q(1)]], [q(1), q(2)])


def test_random_ten_by_ten_mod_big_prime():
    K = rings.ZpRing(1000003)
    rng = random.Random(99)
    for _ in range(5):
        lhs = [[K.of(rng.randrange(K.p)) for _ in range(10)] for _ in range(10)]
        rhs = [K.of(rng.randrange(K.p)) for _ in range(10)]
        try:
            sol = linsolve.gaussian_solve(K, lhs, rhs)
        except SingularSystemError:
            continue  # vanishing determinant is ~1e-6 likely, just skip
        assert all(K.is_zero(r) for r in _residual(K, lhs, sol, rhs))


def test_random_rational_function_field():
    K = rings.ZpRing(101)
    R = multipoly.MultiRing(K, ("x", "y"))
    F = rings.FractionField(R)
    rng = random.Random(4)

    def entry():
        num = R.random_element(rng, terms=2, max_exp=1)
        den = R.zero
        while R.is_zero(den):
            den = R.random_element(rng, terms=1, max_exp=1)
        return F.make(num, den)

    for _ in range(3):
        lhs = [[entry() for _ in range(3)] for _ in range(3)]
        rhs = [entry() for _ in range(3)]
        try:
            sol = linsolve.gaussian_solve(F, lhs, rhs)
        except SingularSystemError:
            continue
        assert all(F.is_zero(r) for r in _residual(F, lhs, sol, rhs))


def test_symbolic_system_over_gf17_cubed():
    # 3x3 system whose coefficients are rational functions in x, y, z
    # with GF(17^3) scalars; the solution is checked by substitution.
    gf = galois.GFRing(17, 3, "t")
    R = multipoly.MultiRing(gf, ("x", "y", "z"))
    F = rings.FractionField(R)
    x, y, z = (F.from_inner(g) for g in R.gens())
    t = F.from_inner(R.from_coeff(gf.generator()))

    div = F.div
    mul = F.mul
    add = F.add
    sub = F.sub
    lhs = [
        [add(add(t, x), z), mul(y, z), sub(z, mul(x, y))],
        [sub(sub(x, y), t), div(x, y), add(z, div(x, y))],
        [div(mul(x, y), t), add(x, y), add(div(z, x), y)],
    ]
    rhs = [x, y, z]
    sol = linsolve.gaussian_solve(F, lhs, rhs)
    assert all(F.is_zero(r) for r in _residual(F, lhs, sol, rhs))
    # solution is a genuine rational function, not a constant
    assert any(not R.is_zero(F.make(s.num, R.one).num) and s.den != R.one
               for s in sol)
