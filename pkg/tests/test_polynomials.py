from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from blzmonster.polynomials import (
    ExactPolynomial,
    canonical_order,
    find_roots,
    hermite,
    make_monic,
    wronskian,
)

T = sp.Symbol("t")


def as_sympy(p: ExactPolynomial):
    return sum(sp.Rational(c.numerator, c.denominator) * T**k for k, c in enumerate(p.coeffs))


def poly(*coeffs):
    return ExactPolynomial(tuple(Fraction(c) for c in coeffs))


def test_hermite_examples():
    assert hermite(0) == poly(1)
    assert hermite(2) == poly(-2, 0, 4)
    assert hermite(3) == poly(0, -12, 0, 8)


@pytest.mark.parametrize("n", range(12))
def test_hermite_matches_sympy(n):
    assert sp.expand(as_sympy(hermite(n)) - sp.hermite(n, T)) == 0


def test_wronskian_examples():
    assert wronskian([hermite(1), hermite(3)]) == poly(0, 0, 0, 32)
    assert wronskian([hermite(2)]) == hermite(2)
    assert wronskian([hermite(1), hermite(2)]) == poly(4, 0, 8)


@pytest.mark.parametrize("degs", [(1, 3), (2, 3), (1, 2, 4), (1, 3, 5), (2, 4, 5, 7), (0, 2)])
def test_wronskian_matches_sympy(degs):
    ours = as_sympy(wronskian([hermite(k) for k in degs]))
    theirs = sp.wronskian([sp.hermite(k, T) for k in degs], T)
    assert sp.expand(ours - theirs) == 0


def test_make_monic():
    assert make_monic(poly(0, 0, 0, 32)) == poly(0, 0, 0, 1)
    assert make_monic(poly(-2, 0, 4)) == poly(Fraction(-1, 2), 0, 1)
    assert make_monic(poly(4, 0, 8)) == poly(Fraction(1, 2), 0, 1)


def test_arithmetic_and_division():
    a = poly(1, 2, 3)
    b = poly(-1, 1)
    q, r = (a * b).divmod(b)
    assert q == a and r.is_zero()
    assert (a + b) - b == a
    assert a.derivative() == poly(2, 6)
    assert a(2) == 17
    assert str(poly(0, 0, 0, Fraction(-5, 2), 0, 1)) == "t^5 - 5/2*t^3"
    assert str(poly(-2, 0, 4)) == "4*t^2 - 2"


def test_root_examples():
    rs = find_roots(poly(Fraction(-1, 2), 0, 1))
    assert np.allclose(sorted(rs.expanded().real), [-2**-0.5, 2**-0.5], atol=1e-15)
    rs = find_roots(poly(0, 0, 0, 1))
    assert rs.multiplicity_of_zero() == 3 and list(rs.nonzero()) == []
    rs = find_roots(poly(Fraction(1, 2), 0, 1))
    assert np.allclose(sorted(rs.expanded().imag), [-2**-0.5, 2**-0.5], atol=1e-15)


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=6, unique=True))
def test_roots_of_product_of_linear_factors(roots):
    p = poly(1)
    for r in roots:
        p = p * poly(-r, 1)
    found = np.sort(find_roots(p).expanded().real)
    assert np.allclose(found, sorted(roots), atol=1e-10)


def test_canonical_order_is_permutation_invariant():
    z = [1 + 2j, -1 + 0j, 1 - 2j, 0.5j]
    assert canonical_order(z) == canonical_order(list(reversed(z)))
