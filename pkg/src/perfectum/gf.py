"""Finite fields GF(p**f) in polynomial basis.

Elements are coefficient tuples (low degree first) over the integers mod p,
reduced by a stored monic irreducible modulus.  GF(q**2) is always built
directly as GF(p**(2f)); conjugation x -> x**q is the Frobenius map applied
f times.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from perfectum.primes import is_prime

# ---------------------------------------------------------------------------
# polynomials over GF(p) as int lists, low degree first


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """a mod m over GF(p); m need not be monic."""
    a = _trim([c % p for c in a])
    m = _trim([c % p for c in m])
    inv = pow(m[-1], -1, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - dm
        for j, b in enumerate(m):
            a[shift + j] = (a[shift + j] - c * b) % p
        _trim(a)
    return a


def _pmulmod(a: Sequence[int], b: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _pmod(out, m, p)


def _ppowmod(a: Sequence[int], e: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return _pmod(result, m, p)


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _prime_factors(f: int) -> list[int]:
    return [r for r in range(2, f + 1) if f % r == 0 and is_prime(r)]


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over GF(p)."""
    f = len(modulus) - 1
    if f < 1:
        return False
    if f == 1:
        return True
    x = [0, 1]
    if _ppowmod(x, p**f, modulus, p) != _pmod(x, modulus, p):
        return False
    for r in _prime_factors(f):
        h = _ppowmod(x, p ** (f // r), modulus, p)
        diff = _trim([(a - b) % p for a, b in itertools.zip_longest(h, x, fillvalue=0)])
        if len(_pgcd(modulus, diff, p)) != 1:
            return False
    return True


def _has_root(modulus: Sequence[int], p: int) -> bool:
    return any(sum(c * pow(t, i, p) for i, c in enumerate(modulus)) % p == 0 for t in range(p))


def _has_small_factor(modulus: Sequence[int], p: int) -> bool:
    """Exhaustive trial division by every monic polynomial of degree 1..f/2."""
    f = len(modulus) - 1
    for deg in range(1, f // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if not _pmod(modulus, list(low) + [1], p):
                return True
    return False


# ---------------------------------------------------------------------------
# fields


@dataclass(frozen=True)
class FieldSpec:
    p: int
    f: int
    modulus: tuple[int, ...]

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if len(self.modulus) != self.f + 1 or self.modulus[-1] != 1:
            raise ValueError(f"modulus {self.modulus} is not monic of degree {self.f}")
        if self.f > 1 and _has_root(self.modulus, self.p):
            raise ValueError(f"modulus {self.modulus} has a root mod {self.p}")
        if 1 < self.f <= 4 and _has_small_factor(self.modulus, self.p):
            raise ValueError(f"modulus {self.modulus} factors mod {self.p}")
        if not is_irreducible(self.modulus, self.p):
            raise ValueError(f"modulus {self.modulus} is reducible mod {self.p}")

    @property
    def order(self) -> int:
        return self.p**self.f

    def element(self, coeffs: Sequence[int] | int) -> FieldElement:
        if isinstance(coeffs, int):
            return self.from_index(coeffs)
        if len(coeffs) > self.f:
            raise ValueError(f"{len(coeffs)} coefficients for a degree-{self.f} field")
        cs = [c % self.p for c in coeffs] + [0] * (self.f - len(coeffs))
        return FieldElement(self, tuple(cs))

    def from_index(self, idx: int) -> FieldElement:
        """Element whose base-p digits (least significant first) are its coefficients."""
        if not 0 <= idx < self.order:
            raise ValueError(f"index {idx} outside GF({self.order})")
        cs = []
        for _ in range(self.f):
            idx, c = divmod(idx, self.p)
            cs.append(c)
        return FieldElement(self, tuple(cs))

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, (0,) * self.f)

    @property
    def one(self) -> FieldElement:
        return self.element([1])

    @property
    def gen(self) -> FieldElement:
        """The class of x, or 0 in the prime field whose modulus is x."""
        return self.element(_pmod([0, 1], self.modulus, self.p))

    def elements(self) -> Iterator[FieldElement]:
        for idx in range(self.order):
            yield self.from_index(idx)

    def nonzero(self) -> Iterator[FieldElement]:
        for idx in range(1, self.order):
            yield self.from_index(idx)

    def __str__(self) -> str:
        return f"GF({self.p}^{self.f})"


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    coeffs: tuple[int, ...]

    def _same(self, other: FieldElement) -> None:
        if other.spec != self.spec:
            raise ValueError(f"mixed fields {self.spec} and {other.spec}")

    @property
    def index(self) -> int:
        return sum(c * self.spec.p**i for i, c in enumerate(self.coeffs))

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __add__(self, other: FieldElement) -> FieldElement:
        self._same(other)
        p = self.spec.p
        return FieldElement(self.spec, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: FieldElement) -> FieldElement:
        self._same(other)
        p = self.spec.p
        return FieldElement(self.spec, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> FieldElement:
        p = self.spec.p
        return FieldElement(self.spec, tuple(-a % p for a in self.coeffs))

    def __mul__(self, other: FieldElement | int) -> FieldElement:
        if isinstance(other, int):
            p = self.spec.p
            return FieldElement(self.spec, tuple(a * other % p for a in self.coeffs))
        return gf_mul(self.spec, self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> FieldElement:
        if k < 0:
            return self.inverse() ** (-k)
        s = self.spec
        return s.element(_ppowmod(list(self.coeffs), k, s.modulus, s.p))

    def inverse(self) -> FieldElement:
        if not self:
            raise ZeroDivisionError("zero has no inverse")
        return self ** (self.spec.order - 2)

    def __truediv__(self, other: FieldElement) -> FieldElement:
        return self * other.inverse()

    def __repr__(self) -> str:
        terms = [
            ("" if c == 1 and i else str(c)) + ("" if i == 0 else "x" if i == 1 else f"x^{i}")
            for i, c in enumerate(self.coeffs)
            if c
        ]
        return " + ".join(terms) if terms else "0"


def field_make(p: int, f: int) -> FieldSpec:
    """GF(p**f) with the lexicographically smallest monic irreducible modulus.

    Candidates x**f + c_{f-1} x**(f-1) + ... + c_0 are compared by the tuple
    (c_0, c_1, ..., c_{f-1}).
    """
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if not 1 <= f <= 8:
        raise ValueError(f"extension degree {f} outside 1..8")
    for low in itertools.product(range(p), repeat=f):
        # product() varies the last position fastest; reverse to make c_0 most significant
        cand = tuple(reversed(low))
        modulus = cand + (1,)
        if f > 1 and cand[0] == 0:
            continue
        if is_irreducible(modulus, p):
            return FieldSpec(p, f, modulus)
    raise RuntimeError(f"no irreducible polynomial of degree {f} over GF({p})")


def gf_mul(spec: FieldSpec, a: FieldElement, b: FieldElement) -> FieldElement:
    if a.spec != spec or b.spec != spec:
        raise ValueError("element does not belong to this field")
    return spec.element(_pmulmod(list(a.coeffs), list(b.coeffs), spec.modulus, spec.p))


def gf_pow_frobenius(spec: FieldSpec, a: FieldElement, k: int) -> FieldElement:
    """a**(p**k)."""
    if a.spec != spec:
        raise ValueError("element does not belong to this field")
    if not 0 <= k <= spec.f:
        raise ValueError(f"Frobenius power {k} outside 0..{spec.f}")
    out = a
    for _ in range(k):
        out = out**spec.p
    return out


def gf_trace(spec: FieldSpec, a: FieldElement) -> int:
    """Absolute trace to GF(p), returned as an int in 0..p-1."""
    acc = spec.zero
    cur = a
    for _ in range(spec.f):
        acc = acc + cur
        cur = gf_pow_frobenius(spec, cur, 1)
    if any(acc.coeffs[1:]):
        raise ArithmeticError(f"trace of {a} left the prime field")
    return acc.coeffs[0]


def conjugate(spec_q2: FieldSpec, a: FieldElement) -> FieldElement:
    """a**q in GF(q**2)."""
    if spec_q2.f % 2:
        raise ValueError(f"{spec_q2} is not a quadratic extension of a subfield")
    return gf_pow_frobenius(spec_q2, a, spec_q2.f // 2)


def hermitian_dot(
    spec_q2: FieldSpec, u: Sequence[FieldElement], v: Sequence[FieldElement]
) -> FieldElement:
    if len(u) != len(v):
        raise ValueError(f"length mismatch {len(u)} != {len(v)}")
    acc = spec_q2.zero
    for a, b in zip(u, v):
        acc = acc + a * conjugate(spec_q2, b)
    return acc


SymplecticRow = tuple[Sequence[FieldElement], Sequence[FieldElement]]


def symplectic_phase(spec_q: FieldSpec, row1: SymplecticRow, row2: SymplecticRow) -> int:
    """trace(sum_j a_j b'_j - a'_j b_j); zero iff the two operators commute."""
    (a, b), (a2, b2) = row1, row2
    n = len(a)
    if not (len(b) == len(a2) == len(b2) == n):
        raise ValueError("symplectic blocks differ in length")
    acc = spec_q.zero
    for j in range(n):
        acc = acc + a[j] * b2[j] - a2[j] * b[j]
    return gf_trace(spec_q, acc)


def subfield_embedding(big: FieldSpec, small: FieldSpec) -> FieldElement:
    """A root in ``big`` of ``small``'s modulus, fixing an embedding small -> big.

    The smallest root by index is chosen so the embedding is reproducible.
    """
    if big.p != small.p or big.f % small.f:
        raise ValueError(f"{small} is not a subfield of {big}")
    for t in big.elements():
        acc = big.zero
        power = big.one
        for c in small.modulus:
            acc = acc + power * c
            power = power * t
        if not acc:
            return t
    raise RuntimeError(f"{small} modulus has no root in {big}")


def embed(theta: FieldElement, a: FieldElement) -> FieldElement:
    """Image of ``a`` under the embedding sending the generator to ``theta``."""
    big = theta.spec
    acc = big.zero
    power = big.one
    for c in a.coeffs:
        acc = acc + power * c
        power = power * theta
    return acc
