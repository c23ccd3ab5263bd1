"""Search (q, n, e) for parameters a perfect quantum code could have.

A candidate survives when its error sphere is an even power of q and the
Lloyd polynomial has e distinct integer zeros.  Survivors are classified
against the quantum Hamming family; anything else is an ``Unexpected``
verdict and gets flagged loudly by the reports.
"""

from __future__ import annotations

import enum
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from perfectum.annihilator import lloyd_condition, lloyd_zeros
from perfectum.primes import MAX_Q, prime_power_decompose


class VerdictKind(enum.Enum):
    TRIVIAL = "Trivial"
    HAMMING = "HammingFamily"
    UNEXPECTED = "Unexpected"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    l: int | None = None

    def __str__(self) -> str:
        if self.kind is VerdictKind.HAMMING:
            return f"HammingFamily({self.l})"
        return self.kind.value


@dataclass(frozen=True)
class CandidateRecord:
    q: int
    n: int
    e: int
    sphere: int
    l: int | None
    lloyd_ok: bool
    lloyd_zeros: tuple[int, ...] = ()
    verdict: Verdict | None = None

    @property
    def d(self) -> int:
        return 2 * self.e + 1

    @property
    def survives(self) -> bool:
        return self.l is not None and self.lloyd_ok


class SieveError(ValueError):
    pass


def check_q(q: int) -> tuple[int, int]:
    if not 2 <= q <= MAX_Q:
        raise SieveError(f"q={q} outside the supported range 2..{MAX_Q}")
    pf = prime_power_decompose(q)
    if pf is None:
        raise SieveError(f"q={q} is not a prime power")
    return pf


def sphere_size(n: int, e: int, q: int) -> int:
    if not 0 <= e <= n:
        raise ValueError(f"need 0 <= e <= n, got e={e}, n={n}")
    Q1 = q * q - 1
    total = 0
    term = 1
    for i in range(e + 1):
        total += term
        term = term * Q1 * (n - i) // (i + 1)
    return total


def power_exponent(value: int, base: int) -> int | None:
    """l with value == base**l, else None, by repeated exact division."""
    if value < 1:
        return None
    l = 0
    while value % base == 0:
        value //= base
        l += 1
    return l if value == 1 else None


def lemma8_exponent(n: int, e: int, q: int) -> int | None:
    """l with sphere_size(n, e, q) == q**(2l), if one exists."""
    return power_exponent(sphere_size(n, e, q), q * q)


def hamming_length(q: int, l: int) -> int:
    Q = q * q
    return (Q**l - 1) // (Q - 1)


def classify(rec: CandidateRecord) -> Verdict:
    if rec.sphere < 1:
        raise ValueError(f"inconsistent record: sphere={rec.sphere}")
    if rec.l is not None and rec.sphere != (rec.q * rec.q) ** rec.l:
        raise ValueError(f"inconsistent record: sphere={rec.sphere} != q^(2*{rec.l})")
    if rec.e == 0 or rec.sphere == rec.q**rec.n:
        return Verdict(VerdictKind.TRIVIAL)
    if rec.e == 1 and rec.l is not None and rec.n == hamming_length(rec.q, rec.l):
        return Verdict(VerdictKind.HAMMING, rec.l)
    return Verdict(VerdictKind.UNEXPECTED)


def evaluate_candidate(q: int, n: int, e: int, full: bool = False) -> CandidateRecord:
    """Build the record for one (q, n, e).

    The Lloyd scan only runs when the power condition holds, unless
    ``full`` asks for every flag.
    """
    sphere = sphere_size(n, e, q)
    l = power_exponent(sphere, q * q)
    if l is not None or full:
        zeros = tuple(lloyd_zeros(e, n, q))
        ok = lloyd_condition(e, n, q)
    else:
        zeros, ok = (), False
    rec = CandidateRecord(q=q, n=n, e=e, sphere=sphere, l=l, lloyd_ok=ok, lloyd_zeros=zeros)
    return replace(rec, verdict=classify(rec)) if rec.survives else rec


def _sieve_chunk(args: tuple[int, int, int, int, bool]) -> list[CandidateRecord]:
    q, n_lo, n_hi, e_max, verbose = args
    out = []
    for n in range(n_lo, n_hi + 1):
        for e in range(1, min(e_max, (n - 1) // 2) + 1):
            rec = evaluate_candidate(q, n, e, full=verbose)
            if verbose or rec.survives:
                out.append(rec)
    return out


def resolve_workers(workers: int | None) -> int:
    if workers is None:
        workers = int(os.environ.get("PERFECTUM_PARALLELISM", "1") or 1)
    if workers <= 0:
        workers = os.cpu_count() or 1
    return workers


def _chunks(n_max: int, parts: int) -> list[tuple[int, int]]:
    lo, total = 2, n_max - 1
    parts = max(1, min(parts, total))
    size, extra = divmod(total, parts)
    out = []
    for k in range(parts):
        hi = lo + size - 1 + (1 if k < extra else 0)
        out.append((lo, hi))
        lo = hi + 1
    return out


def sieve_range(
    q_list,
    n_max: int,
    e_max: int,
    workers: int | None = 1,
    verbose: bool = False,
) -> list[CandidateRecord]:
    """Survivors (or, with ``verbose``, every candidate) in (q, n, e) order.

    ``workers`` > 1 splits each n-range into contiguous chunks run in a
    process pool; 0 means one worker per CPU.  Output order does not depend
    on the split.
    """
    q_list = sorted(set(int(q) for q in q_list))
    for q in q_list:
        check_q(q)
    if n_max < 2:
        raise ValueError(f"n_max must be >= 2, got {n_max}")
    if e_max < 1:
        raise ValueError(f"e_max must be >= 1, got {e_max}")
    workers = resolve_workers(workers)
    tasks = [
        (q, lo, hi, e_max, verbose)
        for q in q_list
        for lo, hi in _chunks(n_max, workers if workers > 1 else 1)
    ]
    if workers == 1:
        parts = [_sieve_chunk(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_sieve_chunk, tasks))
    records = [r for part in parts for r in part]
    records.sort(key=lambda r: (r.q, r.n, r.e))
    return records


def verify_record(rec: CandidateRecord) -> bool:
    """Recompute both survival conditions from scratch."""
    return lemma8_exponent(rec.n, rec.e, rec.q) is not None and lloyd_condition(
        rec.e, rec.n, rec.q
    )

