import itertools
import random
from fractions import Fraction

import pytest

from perfectum.exactmath import DensePoly, binomial
from perfectum.krawtchouk import (
    KrawtchoukContext,
    char_sum_bruteforce,
    kraw_coefficients,
    kraw_eval,
    kraw_expand,
    kraw_poly,
)


def weight_vector(n, w, q):
    """A length-n error class of weight w with distinct nonzero pairs."""
    nonzero = [pr for pr in itertools.product(range(q), repeat=2) if pr != (0, 0)]
    return [nonzero[j % len(nonzero)] if j < w else (0, 0) for j in range(n)]


@pytest.mark.parametrize(
    "n, q, i, w, expected", [(5, 2, 0, 3, 1), (5, 2, 1, 0, 15), (5, 2, 3, 4, 14)]
)
def test_kraw_eval_examples(n, q, i, w, expected):
    assert kraw_eval(KrawtchoukContext(n, q), i, w) == expected


def test_kraw_eval_range_errors():
    ctx = KrawtchoukContext(5, 2)
    with pytest.raises(IndexError):
        kraw_eval(ctx, 6, 0)
    with pytest.raises(IndexError):
        kraw_eval(ctx, 0, -1)


def test_context_validation():
    with pytest.raises(ValueError):
        KrawtchoukContext(0, 2)
    with pytest.raises(ValueError):
        KrawtchoukContext(3, 6)
    assert KrawtchoukContext(3, 4).Q == 16


def test_kraw_poly_examples():
    assert kraw_poly(KrawtchoukContext(5, 2), 0) == DensePoly([1])
    assert kraw_poly(KrawtchoukContext(5, 2), 1) == DensePoly([15, -4])
    assert kraw_poly(KrawtchoukContext(2, 2), 1) == DensePoly([6, -4])


@pytest.mark.parametrize("q", [2, 3, 4])
def test_kraw_poly_agrees_with_eval(q):
    for n in range(1, 9):
        ctx = KrawtchoukContext(n, q)
        for i in range(n + 1):
            p = kraw_poly(ctx, i)
            assert p.degree == i
            for w in range(n + 1):
                assert p(w) == kraw_eval(ctx, i, w)


def test_char_sum_examples():
    ctx = KrawtchoukContext(2, 2)
    assert char_sum_bruteforce(ctx, [(0, 0), (0, 0)], 1) == 6
    assert char_sum_bruteforce(ctx, [(1, 0), (0, 0)], 1) == 2
    ctx3 = KrawtchoukContext(3, 2)
    assert char_sum_bruteforce(ctx3, [(1, 0), (0, 1), (0, 0)], 2) == kraw_eval(ctx3, 2, 2)


def test_char_sum_range_guard():
    with pytest.raises(ValueError):
        char_sum_bruteforce(KrawtchoukContext(7, 2), [(0, 0)] * 7, 1)
    with pytest.raises(ValueError):
        char_sum_bruteforce(KrawtchoukContext(2, 4), [(0, 0)] * 2, 1)


def test_char_sum_independent_of_which_weight_w_vector():
    ctx = KrawtchoukContext(3, 3)
    for u in [[(1, 2), (0, 0), (2, 0)], [(0, 1), (1, 1), (0, 0)]]:
        assert char_sum_bruteforce(ctx, u, 2) == kraw_eval(ctx, 2, 2)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_column_sums(q):
    for n in range(1, 11):
        ctx = KrawtchoukContext(n, q)
        for w in range(n + 1):
            total = sum(kraw_eval(ctx, i, w) for i in range(n + 1))
            assert total == (ctx.Q**n if w == 0 else 0)


def test_value_at_zero():
    for q in (2, 3, 4):
        for n in range(1, 13):
            ctx = KrawtchoukContext(n, q)
            for i in range(n + 1):
                assert kraw_eval(ctx, i, 0) == (ctx.Q - 1) ** i * binomial(n, i)


def test_coefficient_examples():
    ctx = KrawtchoukContext(5, 2)
    assert kraw_coefficients(ctx, DensePoly([1])) == [1]
    assert kraw_coefficients(ctx, DensePoly([16, -4])) == [1, 1]
    # 15 - 4x is P_1 itself
    assert kraw_coefficients(ctx, DensePoly([15, -4])) == [0, 1]
    with pytest.raises(ValueError):
        kraw_coefficients(KrawtchoukContext(2, 2), DensePoly([0, 0, 0, 1]))


def _solve_by_matching(ctx, alpha):
    """Oracle: triangular back-substitution on leading coefficients."""
    rest = alpha
    out = [Fraction(0)] * (alpha.degree + 1)
    for i in range(alpha.degree, -1, -1):
        Pi = kraw_poly(ctx, i)
        c = rest[i] / Pi.lead
        out[i] = c
        rest = rest - Pi * c
    assert rest.is_zero
    return out


def test_coefficients_match_triangular_oracle():
    rng = random.Random(7)
    for _ in range(60):
        n = rng.randint(1, 8)
        q = rng.choice([2, 3, 4])
        ctx = KrawtchoukContext(n, q)
        deg = rng.randint(0, n)
        alpha = DensePoly([rng.randint(-50, 50) for _ in range(deg)] + [rng.choice([-3, -1, 1, 2])])
        coeffs = kraw_coefficients(ctx, alpha)
        assert coeffs == _solve_by_matching(ctx, alpha)
        assert kraw_expand(ctx, coeffs) == alpha
