"""Partial fraction decomposition over fields of fractions."""

from . import rings, unipoly
from .errors import UnsupportedRingError

__all__ = ["apart"]


def _euclidean_inner(field):
    # extended gcd needs a Euclidean domain: integers, or univariate
    # polynomials over a field
    inner = field.inner
    if isinstance(inner, rings.IntegerRing):
        return inner
    if isinstance(inner, unipoly.UniRing) and inner.cring.is_field:
        return inner
    raise UnsupportedRingError(
        "partial fractions need a Euclidean denominator ring, got %s" % (inner,))


def apart(field, a):
    """Split a fraction into parts with prime-power denominators.

    Returns a list of elements of `field` that sums exactly to `a`: one
    proper fraction per prime (or irreducible) power dividing the
    denominator, sorted by the formatted denominator, followed by the
    integral part when it is nonzero.

    The decomposition runs the cofactor construction: factor the
    denominator, solve sum(x_i * den/q_i) = g for the cofactors, and scale
    the numerator through each term.  The fold consumes factors in
    descending formatted order; over the integers that choice fixes which
    residue representative each part gets (the carry goes to the integral
    part), so results are reproducible.
    """
    if not isinstance(field, rings.FractionField):
        raise UnsupportedRingError(
            "apart expects a fraction field, got %s" % (field,))
    inner = _euclidean_inner(field)
    if inner.is_zero(a.den):
        raise ZeroDivisionError("zero denominator in %s" % (field,))
    if field.is_integral(a):
        return [a]

    _, fac = inner.factor(a.den)
    fac = sorted(fac, key=lambda fe: inner.format(fe[0]), reverse=True)
    # the unit is absorbed by the canonical denominator, so den == prod(facs)
    facs = [inner.pow(f, e) for f, e in fac]
    cofactors = [inner.exact_div(a.den, f) for f in facs]
    g, nums = rings.solve_diophantine(inner, cofactors)

    whole = inner.zero
    parts = []
    for num_i, fac_i in zip(nums, facs):
        part = field.make(inner.mul(a.num, num_i), inner.mul(fac_i, g))
        q, proper = field.split_integral(part)
        whole = inner.add(whole, q)
        if not field.is_zero(proper):
            parts.append(proper)
    parts.sort(key=lambda p: inner.format(p.den))
    if not inner.is_zero(whole):
        parts.append(field.from_inner(whole))
    return parts
