"""Dense linear algebra over the prime field GF(p) on int64 numpy arrays."""

from __future__ import annotations

import numpy as np


def rref(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p and the pivot column indices."""
    R = np.array(M, dtype=np.int64) % p
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            R[[r, k]] = R[[k, r]]
        R[r] = R[r] * pow(int(R[r, c]), -1, p) % p
        others = np.nonzero(R[:, c])[0]
        for i in others:
            if i != r:
                R[i] = (R[i] - R[i, c] * R[r]) % p
        pivots.append(c)
        r += 1
    return R[:r], pivots


def rank(M: np.ndarray, p: int) -> int:
    if M.size == 0:
        return 0
    return len(rref(M, p)[1])


def independent_rows(M: np.ndarray, p: int) -> list[int]:
    """Indices of a maximal independent subset of rows, greedily in order."""
    kept: list[int] = []
    basis = np.zeros((0, M.shape[1]), dtype=np.int64)
    current = 0
    for i in range(M.shape[0]):
        trial = np.vstack([basis, M[i : i + 1] % p])
        rk = rank(trial, p)
        if rk > current:
            basis, current = trial, rk
            kept.append(i)
    return kept


def solve(A: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution x of A x = b mod p (free variables zero), or None."""
    rows, cols = A.shape
    aug = np.hstack([A % p, (b % p).reshape(-1, 1)])
    R, pivots = rref(aug, p)
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for r, c in enumerate(pivots):
        x[c] = R[r, -1]
    return x


class RowSpace:
    """Membership tests against the GF(p) row space of a matrix."""

    def __init__(self, M: np.ndarray, p: int):
        self.p = p
        self.width = M.shape[1]
        if M.shape[0]:
            self.basis, self.pivots = rref(M, p)
        else:
            self.basis, self.pivots = np.zeros((0, self.width), dtype=np.int64), []

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def contains(self, v: np.ndarray) -> bool:
        v = np.array(v, dtype=np.int64) % self.p
        for r, c in enumerate(self.pivots):
            if v[c]:
                v = (v - v[c] * self.basis[r]) % self.p
        return not v.any()


def span_elements(G: np.ndarray, p: int) -> np.ndarray:
    """Every GF(p) combination of the rows of G, one per row of the result."""
    r = G.shape[0]
    if r == 0:
        return np.zeros((1, G.shape[1]), dtype=np.int64)
    count = p**r
    idx = np.arange(count, dtype=np.int64)
    digits = np.empty((count, r), dtype=np.int64)
    for j in range(r):
        digits[:, j] = idx % p
        idx //= p
    return digits @ (G % p) % p
