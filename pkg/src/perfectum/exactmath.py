"""Exact integer, rational and dense polynomial arithmetic.

Integers are Python ``int`` and rationals are :class:`fractions.Fraction`;
both are arbitrary precision, so nothing here ever rounds.  The one type
defined locally is :class:`DensePoly`, an immutable univariate polynomial
with rational coefficients stored low degree first.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

Number = Union[int, Fraction]


def binomial(n: int, k: int) -> int:
    """C(n, k) for n >= 0, and 0 when k falls outside [0, n]."""
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


class DensePoly:
    """Polynomial over Q with coefficients ``coeffs[i]`` of ``x**i``.

    Trailing zeros are stripped on construction, so the zero polynomial has
    an empty coefficient tuple and ``degree == -1`` (standing in for minus
    infinity).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def const(cls, c: Number) -> DensePoly:
        return cls([c])

    @classmethod
    def x(cls) -> DensePoly:
        return cls([0, 1])

    @classmethod
    def linear(cls, c0: Number, c1: Number) -> DensePoly:
        """``c0 + c1*x``."""
        return cls([c0, c1])

    @classmethod
    def from_roots(cls, roots: Iterable[Number], lead: Number = 1) -> DensePoly:
        out = cls.const(lead)
        for r in roots:
            out = out * cls([-Fraction(r), 1])
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, DensePoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == DensePoly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __neg__(self) -> DensePoly:
        return DensePoly(-c for c in self.coeffs)

    def __add__(self, other: DensePoly | Number) -> DensePoly:
        other = _as_poly(other)
        size = max(len(self.coeffs), len(other.coeffs))
        return DensePoly(self[i] + other[i] for i in range(size))

    __radd__ = __add__

    def __sub__(self, other: DensePoly | Number) -> DensePoly:
        return self + (-_as_poly(other))

    def __rsub__(self, other: Number) -> DensePoly:
        return _as_poly(other) - self

    def __mul__(self, other: DensePoly | Number) -> DensePoly:
        other = _as_poly(other)
        if self.is_zero or other.is_zero:
            return DensePoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return DensePoly(out)

    __rmul__ = __mul__

    def __divmod__(self, other: DensePoly) -> tuple[DensePoly, DensePoly]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by the zero polynomial")
        rem = list(self.coeffs)
        dq = other.degree
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        inv_lead = 1 / other.lead
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] * inv_lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return DensePoly(quot), DensePoly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other: DensePoly) -> DensePoly:
        return divmod(self, other)[0]

    def __mod__(self, other: DensePoly) -> DensePoly:
        return divmod(self, other)[1]

    def __call__(self, x: Number) -> Fraction:
        return poly_eval(self, x)

    def compose(self, inner: DensePoly) -> DensePoly:
        """``self(inner(x))`` by Horner's scheme."""
        out = DensePoly()
        for c in reversed(self.coeffs):
            out = out * inner + c
        return out

    def scaled_to_integers(self) -> tuple[int, list[int]]:
        """Return ``(D, ints)`` with ``D * self`` having integer coefficients ``ints``."""
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        return den, [int(c * den) for c in self.coeffs]

    def __repr__(self) -> str:
        return f"DensePoly({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


def _as_poly(v: DensePoly | Number) -> DensePoly:
    if isinstance(v, DensePoly):
        return v
    return DensePoly.const(v)


def poly_eval(p: DensePoly, x: Number) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def integer_roots(p: DensePoly, lo: int, hi: int) -> list[int]:
    """All integers t in [lo, hi] with p(t) == 0, ascending.

    Found by evaluating at every point; the polynomial is first scaled to
    integer coefficients so the scan runs on ints.
    """
    if p.is_zero:
        raise ValueError("the zero polynomial vanishes at every point")
    if lo > hi:
        raise ValueError(f"empty range [{lo}, {hi}]")
    _, ints = p.scaled_to_integers()
    ints.reverse()
    roots = []
    for t in range(lo, hi + 1):
        acc = 0
        for c in ints:
            acc = acc * t + c
        if acc == 0:
            roots.append(t)
    return roots


def binomial_poly(shift: Number, slope: Number, k: int) -> DensePoly:
    """C(shift + slope*x, k) as a polynomial in x (falling factorial over k!)."""
    if k < 0:
        return DensePoly()
    out = DensePoly.const(1)
    for j in range(k):
        out = out * DensePoly.linear(Fraction(shift) - j, slope)
    return out * Fraction(1, math.factorial(k))


def format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: DensePoly, var: str = "x") -> str:
    """Render in ascending powers, e.g. ``16 - 4x`` or ``1 + x^2``."""
    if p.is_zero:
        return "0"
    parts: list[str] = []
    for i, c in enumerate(p.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = format_rational(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{format_rational(mag)}{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


def rational_str(c: Number) -> str:
    """Exact "num/den" rendering used in reports (integers render bare)."""
    return format_rational(Fraction(c))

