"""Annihilator and Lloyd polynomials, and the checks built on them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from perfectum.exactmath import DensePoly, binomial_poly, integer_roots
from perfectum.krawtchouk import KrawtchoukContext, kraw_coefficients, kraw_polynomial
from perfectum.primes import is_prime_power


@dataclass(frozen=True)
class AnnihilatorPoly:
    poly: DensePoly
    sigmas: tuple[int, ...]
    leading_scale: Fraction

    @property
    def s(self) -> int:
        return len(self.sigmas)


@dataclass(frozen=True)
class LloydPoly:
    e: int
    n: int
    q: int
    poly: DensePoly


def annihilator_from_sigmas(n: int, q: int, K: int, sigmas) -> AnnihilatorPoly:
    """(q**n / K) * prod_j (1 - x / sigma_j)."""
    sigmas = tuple(int(s) for s in sigmas)
    if any(b <= a for a, b in zip(sigmas, sigmas[1:])):
        raise ValueError(f"sigmas must be strictly increasing: {sigmas}")
    if any(not 0 < s <= n for s in sigmas):
        raise ValueError(f"sigmas must lie in (0, {n}]: {sigmas}")
    if K < 1 or q**n % K:
        raise ValueError(f"K={K} does not divide q**n={q**n}")
    scale = Fraction(q**n, K)
    poly = DensePoly.const(scale)
    for s in sigmas:
        poly = poly * DensePoly.linear(1, Fraction(-1, s))
    return AnnihilatorPoly(poly=poly, sigmas=sigmas, leading_scale=scale)


def _check_radius(e: int, n: int, q: int) -> None:
    if not 0 <= e < n:
        raise ValueError(f"need 0 <= e < n, got e={e}, n={n}")
    if not is_prime_power(q):
        raise ValueError(f"q must be a prime power, got {q}")


@lru_cache(maxsize=4096)
def lloyd_poly(e: int, n: int, q: int) -> LloydPoly:
    """L_e(x) built three ways, which must agree exactly.

    The closed form sum_j (-1)^j (Q-1)^(e-j) C(x-1, j) C(n-x, e-j) is
    compared against the partial sum P_0 + ... + P_e over length n and the
    shifted P_e(x-1; n-1).
    """
    _check_radius(e, n, q)
    Q = q * q
    closed = DensePoly()
    for j in range(e + 1):
        term = binomial_poly(-1, 1, j) * binomial_poly(n, -1, e - j)
        closed = closed + term * ((-1) ** j * (Q - 1) ** (e - j))
    partial = DensePoly()
    for i in range(e + 1):
        partial = partial + kraw_polynomial(n, Q, i)
    shifted = kraw_polynomial(n - 1, Q, e).compose(DensePoly.linear(-1, 1))
    if not closed == partial == shifted:
        raise AssertionError(
            f"Lloyd forms disagree for e={e}, n={n}, q={q}: "
            f"{closed} / {partial} / {shifted}"
        )
    return LloydPoly(e=e, n=n, q=q, poly=closed)


def lloyd_zeros(e: int, n: int, q: int) -> list[int]:
    """Integer zeros of L_e strictly between 0 and n."""
    poly = lloyd_poly(e, n, q).poly
    if n < 2:
        return []
    return integer_roots(poly, 1, n - 1)


def lloyd_condition(e: int, n: int, q: int) -> bool:
    """True iff L_e has e distinct integer zeros in (0, n).

    The found roots are divided out one at a time; a remaining root in
    range would mean a repeated zero, and the quotient must end as a
    constant.
    """
    zeros = lloyd_zeros(e, n, q)
    if len(zeros) != e:
        return False
    rest = lloyd_poly(e, n, q).poly
    for z in zeros:
        rest, rem = divmod(rest, DensePoly.linear(-z, 1))
        if not rem.is_zero:
            return False
    if rest.degree != 0:
        return False
    return True


def lemma5_check(a: AnnihilatorPoly | DensePoly, ctx: KrawtchoukContext) -> bool:
    """True iff every Krawtchouk coefficient of the annihilator equals 1."""
    poly = a.poly if isinstance(a, AnnihilatorPoly) else a
    coeffs = kraw_coefficients(ctx, poly)
    return bool(coeffs) and all(c == 1 for c in coeffs)


def divides(a: DensePoly, b: DensePoly) -> bool:
    if a.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    return (b % a).is_zero
