"""Krawtchouk polynomials over an alphabet of size q**2.

The error group on one q-level system has q**2 elements (pairs (a, b) with
phases quotiented out), so every polynomial here uses ``Q = q*q``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from perfectum.exactmath import DensePoly, binomial, binomial_poly, poly_eval
from perfectum.primes import is_prime_power


@dataclass(frozen=True)
class KrawtchoukContext:
    n: int
    q: int
    Q: int = field(init=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"code length must be >= 1, got {self.n}")
        if not is_prime_power(self.q):
            raise ValueError(f"q must be a prime power, got {self.q}")
        object.__setattr__(self, "Q", self.q * self.q)


def _check_index(ctx: KrawtchoukContext, i: int, name: str = "i") -> None:
    if not 0 <= i <= ctx.n:
        raise IndexError(f"{name}={i} outside 0..{ctx.n}")


def kraw_value(n: int, Q: int, i: int, w: int) -> int:
    """P_i(w; n) for alphabet size Q, without range checks on n."""
    return sum(
        (-1) ** r * (Q - 1) ** (i - r) * binomial(n - w, i - r) * binomial(w, r)
        for r in range(i + 1)
    )


def kraw_eval(ctx: KrawtchoukContext, i: int, w: int) -> int:
    _check_index(ctx, i)
    _check_index(ctx, w, "w")
    return kraw_value(ctx.n, ctx.Q, i, w)


@lru_cache(maxsize=4096)
def kraw_polynomial(n: int, Q: int, i: int) -> DensePoly:
    """P_i(x; n) as a polynomial in x, built from binomials in x."""
    out = DensePoly()
    for r in range(i + 1):
        term = binomial_poly(n, -1, i - r) * binomial_poly(0, 1, r)
        out = out + term * ((-1) ** r * (Q - 1) ** (i - r))
    return out


def kraw_poly(ctx: KrawtchoukContext, i: int) -> DensePoly:
    _check_index(ctx, i)
    return kraw_polynomial(ctx.n, ctx.Q, i)


def char_sum_bruteforce(
    ctx: KrawtchoukContext, u: list[tuple[int, int]], i: int
) -> int:
    """Sum of symplectic characters of ``u`` over every error class of weight ``i``.

    Independent of the closed form: all (q**2)**n classes are enumerated and
    the character exponents are tallied per power of a primitive q-th root
    of unity.  The tally is integral only when all nonzero powers occur
    equally often, which is checked rather than assumed.
    """
    q, n = ctx.q, ctx.n
    if n > 6 or q not in (2, 3):
        raise ValueError(f"brute force supports n <= 6 and q in (2, 3), got n={n}, q={q}")
    if len(u) != n:
        raise ValueError(f"u has length {len(u)}, expected {n}")
    _check_index(ctx, i)
    u = [(a % q, b % q) for a, b in u]
    pairs = list(itertools.product(range(q), repeat=2))
    counts = [0] * q
    for v in itertools.product(pairs, repeat=n):
        if sum(1 for a, b in v if a or b) != i:
            continue
        t = sum(a * bv - av * b for (a, b), (av, bv) in zip(u, v)) % q
        counts[t] += 1
    # sum_t c_t w^t is rational iff c_1 = ... = c_{q-1} (q prime)
    if len(set(counts[1:])) > 1:
        raise ArithmeticError(f"non-integral character sum, counts={counts}")
    return counts[0] - counts[1]


def kraw_coefficients(ctx: KrawtchoukContext, alpha: DensePoly) -> list[Fraction]:
    """Coefficients a_0..a_s with alpha = sum_i a_i P_i(x), s = deg(alpha).

    a_i = Q**-n * sum_k alpha(k) P_k(i); orthogonality makes the higher
    coefficients vanish, which is asserted.
    """
    n, Q = ctx.n, ctx.Q
    if alpha.degree > n:
        raise ValueError(f"degree {alpha.degree} exceeds n={n}")
    if alpha.is_zero:
        return []
    values = [poly_eval(alpha, k) for k in range(n + 1)]
    scale = Fraction(1, Q**n)
    coeffs = [
        scale * sum(v * kraw_value(n, Q, k, i) for k, v in enumerate(values))
        for i in range(n + 1)
    ]
    s = alpha.degree
    if any(coeffs[s + 1 :]):
        raise ArithmeticError("Krawtchouk expansion did not terminate at the degree")
    return coeffs[: s + 1]


def kraw_expand(ctx: KrawtchoukContext, coeffs: list[Fraction]) -> DensePoly:
    """Inverse of :func:`kraw_coefficients`: sum_i coeffs[i] * P_i(x)."""
    out = DensePoly()
    for i, c in enumerate(coeffs):
        out = out + kraw_poly(ctx, i) * c
    return out

