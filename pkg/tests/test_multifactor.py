import random

import pytest

from ringkit.errors import UnsupportedRingError
from ringkit.multifactor import factor_multipoly
from ringkit.multipoly import MultiPoly, MultiRing, multi_mul, multi_pow
from ringkit.rings import QQ, ZZ, Rational, ZpRing


def _rebuild(ring, unit, parts):
    out = unit
    for g, e in parts:
        out = multi_mul(out, multi_pow(g, e))
    return out


def _sparse(ring, rng, terms, max_exp):
    K = ring.cring
    out = {}
    while len(out) < terms:
        e = tuple(rng.randrange(max_exp + 1) for _ in range(len(ring.vars)))
        c = K.random_element(rng) if K.is_finite else K.of(rng.randrange(-30, 31) or 1)
        if not K.is_zero(c):
            out[e] = c
    return MultiPoly(ring, out)


def test_difference_of_squares_zp():
    R = MultiRing(ZpRing(17), ("x", "y"))
    x, y = R.gens()
    f = x * x - y * y
    unit, parts = factor_multipoly(R, f)
    assert {g for g, _ in parts} == {x + y, x - y}
    assert _rebuild(R, unit, parts) == f


def test_difference_of_squares_z():
    R = MultiRing(ZZ, ("x", "y"))
    x, y = R.gens()
    f = x * x - y * y
    unit, parts = factor_multipoly(R, f)
    assert {g for g, _ in parts} == {x - y, x + y}
    assert _rebuild(R, unit, parts) == f


def test_sign_goes_to_unit():
    R = MultiRing(ZZ, ("x", "y"))
    x, y = R.gens()
    unit, parts = factor_multipoly(R, -(x + y))
    assert unit == -R.one
    assert parts == [(x + y, 1)]


def test_monomial_content_and_integer_content():
    # 6*x^2*y*(x + y): integer primes and bare variables come out on their own
    R = MultiRing(ZZ, ("x", "y"))
    x, y = R.gens()
    f = 6 * x * x * y * (x + y)
    unit, parts = factor_multipoly(R, f)
    got = {(g, e) for g, e in parts}
    assert got == {(R.of(2), 1), (R.of(3), 1), (x, 2), (y, 1), (x + y, 1)}
    assert _rebuild(R, unit, parts) == f


def test_multiplicity_from_squarefree_split():
    # (3x + 2y + 1)^2 (x - y) keeps its exponent structure
    R = MultiRing(ZZ, ("x", "y"))
    x, y = R.gens()
    inner = 3 * x + 2 * y + R.one
    f = multi_mul(multi_pow(inner, 2), x - y)
    unit, parts = factor_multipoly(R, f)
    assert {(g, e) for g, e in parts} == {(x - y, 1), (inner, 2)}
    assert _rebuild(R, unit, parts) == f


def test_three_way_product_over_z():
    R = MultiRing(ZZ, ("x", "y"))
    x, y = R.gens()
    f = multi_mul(multi_mul(x + y + R.one, x - y + 2 * R.one), x * y + 3 * R.one)
    unit, parts = factor_multipoly(R, f)
    assert len(parts) == 3
    assert _rebuild(R, unit, parts) == f


def test_irreducible_stays_whole_over_z():
    R = MultiRing(ZZ, ("x", "y"))
    x, y = R.gens()
    f = x * x + y * y + R.one
    unit, parts = factor_multipoly(R, f)
    assert unit == R.one
    assert parts == [(f, 1)]


def test_product_plus_one_is_irreducible():
    R = MultiRing(ZZ, ("x", "y", "z"))
    x, y, z = R.gens()
    f = multi_mul(multi_mul(x + y, y + z), x + z) + R.one
    unit, parts = factor_multipoly(R, f)
    assert parts == [(f, 1)]


def test_quadratic_extension_shape_mod_17():
    # x^2 + (y + 5) cannot split: a root would need y-degree 1/2
    R = MultiRing(ZpRing(17), ("x", "y"))
    x, y = R.gens()
    quad = x * x + y + 5 * R.one
    f = multi_mul(x + 2 * y, quad)
    unit, parts = factor_multipoly(R, f)
    assert {g for g, _ in parts} == {x + 2 * y, quad}
    assert _rebuild(R, unit, parts) == f


def test_embedded_univariate_routes_through():
    R = MultiRing(ZpRing(524287), ("x", "y"))
    x, y = R.gens()
    unit, parts = factor_multipoly(R, x * x - R.one)
    assert {g for g, _ in parts} == {x + R.one, x - R.one}


def test_unit_constant_input():
    R = MultiRing(ZpRing(17), ("x", "y"))
    unit, parts = factor_multipoly(R, 5 * R.one)
    assert parts == []
    assert unit == 5 * R.one


def test_small_modulus_rejected():
    R = MultiRing(ZpRing(5), ("x", "y"))
    x, y = R.gens()
    f = multi_pow(x, 3) * multi_pow(y, 3) + x + y
    with pytest.raises(UnsupportedRingError):
        factor_multipoly(R, f)


def test_rational_coefficients_fold_into_unit():
    R = MultiRing(QQ, ("x", "y"))
    x, y = R.gens()
    half = R.of(Rational(1, 2))
    third = R.of(Rational(1, 3))
    f = multi_mul(multi_mul(half, x) + y, x - multi_mul(third, y))
    unit, parts = factor_multipoly(R, f)
    assert len(parts) == 2
    for g, _ in parts:
        assert g.lc() == Rational(1, 1)
    assert _rebuild(R, unit, parts) == f


def test_seed_reproducibility():
    rng = random.Random(42)
    R = MultiRing(ZpRing(524287), ("x", "y", "z"))
    f = multi_mul(_sparse(R, rng, 5, 2), _sparse(R, rng, 5, 2))
    a = factor_multipoly(R, f, seed=9)
    b = factor_multipoly(R, f, seed=9)
    assert a == b


@pytest.mark.parametrize("seed", range(6))
def test_random_products_multiply_back_zp(seed):
    rng = random.Random(300 + seed)
    R = MultiRing(ZpRing(524287), ("x", "y", "z"))
    f = multi_mul(multi_mul(_sparse(R, rng, 6, 3), _sparse(R, rng, 6, 3)), _sparse(R, rng, 4, 2))
    unit, parts = factor_multipoly(R, f, seed=seed)
    assert sum(e for g, e in parts if not g.is_constant()) >= 3
    assert _rebuild(R, unit, parts) == f


@pytest.mark.parametrize("seed", range(4))
def test_random_products_multiply_back_z(seed):
    rng = random.Random(700 + seed)
    R = MultiRing(ZZ, ("x", "y", "z"))
    f = multi_mul(multi_mul(_sparse(R, rng, 6, 3), _sparse(R, rng, 6, 3)), _sparse(R, rng, 4, 2))
    unit, parts = factor_multipoly(R, f, seed=seed)
    assert _rebuild(R, unit, parts) == f


def test_four_variables_small():
    rng = random.Random(11)
    R = MultiRing(ZpRing(524287), ("x", "y", "z", "w"))
    f = multi_mul(_sparse(R, rng, 5, 2), _sparse(R, rng, 5, 2))
    unit, parts = factor_multipoly(R, f, seed=3)
    assert _rebuild(R, unit, parts) == f
    assert sum(e for g, e in parts if not g.is_constant()) >= 2


def test_ring_method_matches_function():
    R = MultiRing(ZZ, ("x", "y"))
    x, y = R.gens()
    f = x * x - y * y
    assert R.factor(f) == factor_multipoly(R, f)
