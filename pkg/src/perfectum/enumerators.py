"""Weight distributions of stabilizer codes and the checks derived from them.

``A_i`` counts stabilizer elements of weight i (the support of
tr(E_h^dagger P) is exactly the stabilizer), and ``B_i`` is its Krawtchouk
transform normalized so that ``B_0 = 1``.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from perfectum.annihilator import (
    AnnihilatorPoly,
    annihilator_from_sigmas,
    lemma5_check,
    lloyd_poly,
)
from perfectum.exactmath import DensePoly, rational_str
from perfectum.krawtchouk import KrawtchoukContext, kraw_coefficients, kraw_value
from perfectum.stabilizer import (
    StabilizerCode,
    min_undetectable_weight,
    perfection_check,
    purity_check,
    stabilizer_elements,
    weights_of,
)

log = logging.getLogger(__name__)


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class WeightDistribution:
    A: tuple[Fraction, ...]
    n: int
    q: int


@dataclass(frozen=True)
class DualDistribution:
    B: tuple[Fraction, ...]
    n: int
    q: int


@dataclass(frozen=True)
class Theorem6Record:
    pure: bool
    d: int
    e: int
    s: int
    sigmas: tuple[int, ...]
    perfect: bool

    @property
    def consistent(self) -> bool:
        return self.perfect == (self.s == self.e)


def weight_distribution(code: StabilizerCode) -> WeightDistribution:
    elems = stabilizer_elements(code)
    w = weights_of(elems, code.n, code.f)
    counts = np.bincount(w, minlength=code.n + 1)
    return WeightDistribution(tuple(Fraction(int(c)) for c in counts), code.n, code.q)


def dual_distribution(A: WeightDistribution, K: int | Fraction) -> DualDistribution:
    """B_j = (K / q**n) * sum_i A_i P_j(i).

    ``K`` must satisfy sum(A) == q**n / K; it may be rational so the
    transform can be applied back to a dual distribution (with K -> 1/K).
    """
    n, q = A.n, A.q
    if n < 1:
        raise ValueError("distributions need n >= 1")
    if len(A.A) != n + 1:
        raise ValueError(f"A has {len(A.A)} entries, expected {n + 1}")
    K = Fraction(K)
    if K <= 0 or sum(A.A) != Fraction(q**n) / K:
        raise ValueError(f"sum(A) = {sum(A.A)} but q^n/K = {Fraction(q**n) / K}")
    Q = q * q
    scale = K / q**n
    B = tuple(scale * sum(a * kraw_value(n, Q, j, i) for i, a in enumerate(A.A)) for j in range(n + 1))
    if B[0] != 1:
        raise ArithmeticError(f"dual distribution has B_0 = {B[0]}")
    if any(b < 0 for b in B):
        raise ArithmeticError(f"negative dual weight in {B}")
    return DualDistribution(B, n, q)


def sigma_and_s(A: WeightDistribution | Sequence[Fraction]) -> tuple[list[int], int]:
    values = A.A if isinstance(A, WeightDistribution) else tuple(A)
    if values[0] != 1:
        raise ValueError(f"A_0 must be 1, got {values[0]}")
    sigmas = [i for i in range(1, len(values)) if values[i] != 0]
    return sigmas, len(sigmas)


def code_annihilator(code: StabilizerCode, A: WeightDistribution | None = None) -> AnnihilatorPoly:
    A = A or weight_distribution(code)
    sigmas, _ = sigma_and_s(A)
    return annihilator_from_sigmas(code.n, code.q, code.K, sigmas)


def theorem6_verify(code: StabilizerCode, d: int) -> Theorem6Record:
    """Assemble the perfect-iff-s=e record for a pure code of odd distance d.

    Raises :class:`PreconditionError` when the code is not pure to d or
    fails to detect every error of weight below d.  A record whose
    ``consistent`` flag is false, or whose s falls below e, is logged as an
    error rather than raised, so callers can report it.
    """
    if d < 1 or d % 2 == 0:
        raise PreconditionError(f"d must be odd and positive, got {d}")
    if not purity_check(code, d):
        raise PreconditionError(f"code is not pure to distance {d}")
    if d > 1 and min_undetectable_weight(code, d - 1) is not None:
        raise PreconditionError(f"code does not reach distance {d}")
    e = (d - 1) // 2
    A = weight_distribution(code)
    sigmas, s = sigma_and_s(A)
    perfect = perfection_check(code, radius=e)
    rec = Theorem6Record(pure=True, d=d, e=e, s=s, sigmas=tuple(sigmas), perfect=perfect)
    if s < e:
        log.error("FALSIFICATION: pure code with s=%d < e=%d", s, e)
    if not rec.consistent:
        log.error("FALSIFICATION: perfect=%s but s=%d, e=%d", perfect, s, e)
    if perfect:
        alpha = annihilator_from_sigmas(code.n, code.q, code.K, sigmas)
        if e < code.n and alpha.poly != lloyd_poly(e, code.n, code.q).poly:
            raise ArithmeticError(f"annihilator {alpha.poly} is not the Lloyd polynomial")
        if not lemma5_check(alpha, KrawtchoukContext(code.n, code.q)):
            raise ArithmeticError("annihilator Krawtchouk coefficients are not all 1")
    return rec


# ---------------------------------------------------------------------------
# explicit-matrix oracle


def _shift_clock(q: int) -> tuple[np.ndarray, np.ndarray]:
    omega = np.exp(2j * np.pi / q)
    X = np.roll(np.eye(q, dtype=complex), 1, axis=0)
    Z = np.diag(omega ** np.arange(q))
    return X, Z


def _operator(a: Sequence[int], b: Sequence[int], q: int) -> np.ndarray:
    X, Z = _shift_clock(q)
    out = np.ones((1, 1), dtype=complex)
    for x, z in zip(a, b):
        local = np.linalg.matrix_power(X, x) @ np.linalg.matrix_power(Z, z)
        out = np.kron(out, local)
    return out


def code_projector(code: StabilizerCode) -> np.ndarray:
    """Projector onto the joint fixed space of the generators.

    Each generator M is rescaled to c*M with (c*M)**p = I (for qubits
    c = i**(a.b) absorbs the sign of (XZ)**2), so (1/p) sum_k (cM)**k
    projects onto its +1 eigenspace.
    """
    if code.f != 1:
        raise ValueError("the matrix oracle needs prime q")
    q, n = code.q, code.n
    dim = q**n
    P = np.eye(dim, dtype=complex)
    for a, b in code.generators:
        ai = [x.coeffs[0] for x in a]
        bi = [z.coeffs[0] for z in b]
        M = _operator(ai, bi, q)
        if q == 2:
            M = M * (1j ** (sum(x * z for x, z in zip(ai, bi)) % 4))
        proj = np.zeros((dim, dim), dtype=complex)
        power = np.eye(dim, dtype=complex)
        for _ in range(q):
            proj += power
            power = power @ M
        P = P @ (proj / q)
    if np.abs(P @ P - P).max() > 1e-9 or abs(np.trace(P).real - code.K) > 1e-9:
        raise ArithmeticError("stabilizer materialization is not a rank-K projector")
    return P


def theorem2_residual(code: StabilizerCode, alpha: AnnihilatorPoly | DensePoly) -> float:
    """max |sum_i alpha_i sum_{wt(g)=i} E_g P E_g^dagger - I| over matrix entries.

    The sum runs over every error label g; labels whose weight exceeds the
    degree of alpha carry a zero coefficient and are skipped.
    """
    if code.f != 1 or code.q not in (2, 3):
        raise ValueError(f"matrix oracle supports q in (2, 3), got q={code.q}")
    if code.n > 5:
        raise ValueError(f"matrix oracle supports n <= 5, got n={code.n}")
    poly = alpha.poly if isinstance(alpha, AnnihilatorPoly) else alpha
    coeffs = kraw_coefficients(KrawtchoukContext(code.n, code.q), poly)
    q, n = code.q, code.n
    P = code_projector(code)
    total = np.zeros_like(P)
    for label in itertools.product(itertools.product(range(q), repeat=2), repeat=n):
        w = sum(1 for x, z in label if x or z)
        if w >= len(coeffs) or coeffs[w] == 0:
            continue
        E = _operator([x for x, _ in label], [z for _, z in label], q)
        total += float(coeffs[w]) * (E @ P @ E.conj().T)
    return float(np.abs(total - np.eye(q**n)).max())


# ---------------------------------------------------------------------------
# report


def verification_report(
    code: StabilizerCode, d: int, residual: float | None = None
) -> dict:
    A = weight_distribution(code)
    B = dual_distribution(A, code.K)
    rec = theorem6_verify(code, d)
    return {
        "code_params": {
            "q": code.q,
            "n": code.n,
            "K": str(code.K),
            "d": d,
            "m": code.m,
        },
        "A": [rational_str(a) for a in A.A],
        "B": [rational_str(b) for b in B.B],
        "sigmas": list(rec.sigmas),
        "s": rec.s,
        "e": rec.e,
        "pure": rec.pure,
        "perfect": rec.perfect,
        "consistent": rec.consistent,
        "theorem2_residual": residual,
    }
