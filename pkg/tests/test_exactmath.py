from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from perfectum.exactmath import DensePoly, binomial, binomial_poly, format_poly, integer_roots, poly_eval


@pytest.mark.parametrize("n, k, expected", [(5, 2, 10), (5, 0, 1), (21, 2, 210), (5, -1, 0), (5, 6, 0), (0, 0, 1)])
def test_binomial_examples(n, k, expected):
    assert binomial(n, k) == expected


def test_binomial_rejects_negative_n():
    with pytest.raises(ValueError):
        binomial(-1, 0)


def test_binomial_symmetry_and_pascal():
    for n in range(65):
        for k in range(n + 1):
            assert binomial(n, k) == binomial(n, n - k)
            if k >= 1:
                assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)


def test_binomial_large_is_exact():
    # 1024 choose 10 by hand-rolled product
    num, den = 1, 1
    for j in range(10):
        num *= 1024 - j
        den *= j + 1
    assert binomial(1024, 10) == num // den


def test_zero_polynomial_canonical():
    z = DensePoly([0, 0, 0])
    assert z.is_zero and z.degree == -1 and z.coeffs == ()
    assert poly_eval(z, Fraction(7, 3)) == 0


@pytest.mark.parametrize("x, expected", [(4, 0), (0, 16), (1, 12)])
def test_eval_lloyd_example(x, expected):
    assert poly_eval(DensePoly([16, -4]), x) == expected


def test_integer_roots_examples():
    assert integer_roots(DensePoly([16, -4]), 1, 4) == [4]
    assert integer_roots(DensePoly([1, 0, 1]), -10, 10) == []
    assert integer_roots(DensePoly([64, -4]), 1, 20) == [16]
    assert integer_roots(DensePoly([Fraction(1, 2), Fraction(-3, 4), Fraction(1, 4)]), -5, 5) == [1, 2]


def test_integer_roots_zero_polynomial_errors():
    with pytest.raises(ValueError):
        integer_roots(DensePoly(), 0, 3)


def test_division_and_compose():
    a = DensePoly([16, -4])
    b = a * DensePoly([-1, 1])
    q, r = divmod(b, a)
    assert q == DensePoly([-1, 1]) and r.is_zero
    q, r = divmod(DensePoly([1, 0, 1]), a)
    assert q * a + r == DensePoly([1, 0, 1]) and r.degree < a.degree
    shifted = a.compose(DensePoly([-1, 1]))
    assert shifted == DensePoly([20, -4])
    with pytest.raises(ZeroDivisionError):
        divmod(a, DensePoly())


def test_binomial_poly_matches_integer_binomials():
    for k in range(6):
        p = binomial_poly(7, -1, k)  # C(7 - x, k)
        for x in range(8):
            assert p(x) == binomial(7 - x, k)


def test_format_poly():
    assert format_poly(DensePoly([16, -4])) == "16 - 4x"
    assert format_poly(DensePoly([1, 0, 1])) == "1 + x^2"
    assert format_poly(DensePoly([0, -1, Fraction(1, 2)])) == "-x + 1/2x^2"
    assert format_poly(DensePoly()) == "0"


coeff = st.integers(min_value=-100, max_value=100)
polys = st.lists(coeff, max_size=9).map(DensePoly)
points = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@settings(max_examples=200, deadline=None)
@given(polys, polys, points)
def test_eval_is_a_ring_homomorphism(p, r, x):
    assert poly_eval(p + r, x) == poly_eval(p, x) + poly_eval(r, x)
    assert poly_eval(p * r, x) == poly_eval(p, x) * poly_eval(r, x)


@settings(max_examples=100, deadline=None)
@given(polys.filter(lambda p: not p.is_zero))
def test_integer_roots_agree_with_scan(p):
    found = integer_roots(p, -15, 15)
    assert found == [t for t in range(-15, 16) if poly_eval(p, t) == 0]


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-10, 10), min_size=1, max_size=5, unique=True))
def test_integer_roots_recovers_constructed_roots(roots):
    p = DensePoly.from_roots(roots, lead=3)
    assert integer_roots(p, -10, 10) == sorted(roots)
