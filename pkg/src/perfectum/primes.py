"""Trial-division primality and prime-power helpers (q up to 2**16)."""

from __future__ import annotations

MAX_Q = 1 << 16


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def prime_power_decompose(q: int) -> tuple[int, int] | None:
    """Return (p, f) with q == p**f, or None when q is not a prime power."""
    if q < 2:
        return None
    d = 2
    while d * d <= q:
        if q % d == 0:
            break
        d += 1
    else:
        return q, 1
    f = 0
    while q % d == 0:
        q //= d
        f += 1
    return (d, f) if q == 1 else None


def is_prime_power(q: int) -> bool:
    return prime_power_decompose(q) is not None
