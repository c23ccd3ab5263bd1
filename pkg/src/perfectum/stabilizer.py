"""Quantum Hamming codes as qudit stabilizer codes, and exhaustive checks on them.

Construction: the m x n simplex check matrix over GF(q**2) (one column per
projective point) is made Hermitian self-orthogonal, then every row r is
expanded into symplectic rows (a|b) over GF(q) by writing beta*t*r = a + gamma*b
for t in {1, gamma} and beta running over a GF(p)-basis of GF(q).

Checks work on the GF(p) expansion of each row: a GF(q) entry becomes its
f polynomial-basis coordinates, so a row over GF(q) of length 2n becomes a
GF(p) vector of length 2nf (all a-digits first, then all b-digits).  The
trace form tr(x*y) on GF(q) becomes the f x f Gram matrix ``T``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from perfectum import gfp
from perfectum.gf import (
    FieldElement,
    FieldSpec,
    embed,
    field_make,
    gf_trace,
    hermitian_dot,
    subfield_embedding,
    symplectic_phase,
)
from perfectum.primes import prime_power_decompose

MAX_ROWSPACE = 1 << 20


class ConstructionError(RuntimeError):
    pass


@dataclass(frozen=True)
class ErrorClass:
    """A qudit error operator up to phase: one (a_j, b_j) pair per site."""

    a: tuple[FieldElement, ...]
    b: tuple[FieldElement, ...]

    @property
    def weight(self) -> int:
        return sum(1 for x, z in zip(self.a, self.b) if x or z)

    def __add__(self, other: ErrorClass) -> ErrorClass:
        return ErrorClass(
            tuple(x + y for x, y in zip(self.a, other.a)),
            tuple(x + y for x, y in zip(self.b, other.b)),
        )


@dataclass(frozen=True)
class StabilizerCode:
    q: int
    p: int
    f: int
    n: int
    m: int
    generators: tuple[tuple[tuple[FieldElement, ...], tuple[FieldElement, ...]], ...]
    basis_gamma: tuple[int, ...] = ()
    column_scaling: tuple[int, ...] | None = field(default=None, compare=False)

    @cached_property
    def field(self) -> FieldSpec:
        return field_make(self.p, self.f)

    @property
    def num_rows(self) -> int:
        return len(self.generators)

    @property
    def K(self) -> int:
        """Code dimension q**n / p**r for r independent GF(p) generator rows."""
        return self.p ** (self.n * self.f - self.num_rows)

    @cached_property
    def trace_gram(self) -> np.ndarray:
        F = self.field
        basis = [F.element([0] * s + [1]) for s in range(self.f)]
        return np.array([[gf_trace(F, x * y) for y in basis] for x in basis], dtype=np.int64)

    @cached_property
    def generator_matrix(self) -> np.ndarray:
        """Rows (a|b) as GF(p) vectors of length 2nf."""
        if not self.generators:
            return np.zeros((0, 2 * self.n * self.f), dtype=np.int64)
        return np.array(
            [expand_row(a, b) for a, b in self.generators], dtype=np.int64
        ).reshape(self.num_rows, 2 * self.n * self.f)

    @cached_property
    def syndrome_matrix(self) -> np.ndarray:
        """M with syndrome(e) = M @ e mod p for expanded error vectors e."""
        G = self.generator_matrix
        nf = self.n * self.f
        A = G[:, :nf].reshape(-1, self.n, self.f)
        B = G[:, nf:].reshape(-1, self.n, self.f)
        T = self.trace_gram
        left = (-(B @ T)).reshape(-1, nf)
        right = (A @ T).reshape(-1, nf)
        return np.hstack([left, right]) % self.p

    @cached_property
    def row_space(self) -> gfp.RowSpace:
        return gfp.RowSpace(self.generator_matrix, self.p)

    def without_generator(self, index: int) -> StabilizerCode:
        gens = self.generators[:index] + self.generators[index + 1 :]
        return StabilizerCode(self.q, self.p, self.f, self.n, self.m, gens, self.basis_gamma)


def expand_row(a: Sequence[FieldElement], b: Sequence[FieldElement]) -> list[int]:
    return [c for x in a for c in x.coeffs] + [c for z in b for c in z.coeffs]


def error_vector(err: ErrorClass) -> np.ndarray:
    return np.array(expand_row(err.a, err.b), dtype=np.int64)


def weights_of(vectors: np.ndarray, n: int, f: int) -> np.ndarray:
    """Per-row site weight of expanded (a|b) vectors."""
    nf = n * f
    a = vectors[:, :nf].reshape(-1, n, f).any(axis=2)
    b = vectors[:, nf:].reshape(-1, n, f).any(axis=2)
    return (a | b).sum(axis=1)


# ---------------------------------------------------------------------------
# construction


def _square_field(Q: int) -> tuple[int, int, FieldSpec]:
    pf = prime_power_decompose(Q)
    if pf is None or pf[1] % 2:
        raise ValueError(f"Q={Q} is not an even power of a prime")
    p, F = pf
    return p, F // 2, field_make(p, F)


def projective_columns(m: int, Q: int) -> list[list[FieldElement]]:
    """m x (Q**m-1)/(Q-1) matrix over GF(Q): one column per projective point.

    Each column's topmost nonzero entry is 1; columns are ordered
    lexicographically by their tuple of element indices.
    """
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    _, _, FQ = _square_field(Q)
    cols = []
    for idx in itertools.product(range(Q), repeat=m):
        lead = next((x for x in idx if x), 0)
        if lead == 1:
            cols.append([FQ.from_index(x) for x in idx])
    return [[c[i] for c in cols] for i in range(m)]


def is_hermitian_self_orthogonal(FQ: FieldSpec, H: list[list[FieldElement]]) -> bool:
    return all(not hermitian_dot(FQ, H[i], H[j]) for i in range(len(H)) for j in range(len(H)))


def _gram_column_vectors(
    FQ: FieldSpec, H: list[list[FieldElement]], sub_basis: list[FieldElement]
) -> np.ndarray:
    """GF(p) matrix whose column (k, s) is vec(beta_s * h_k h_k^dagger)."""
    m, n = len(H), len(H[0])
    q_pow = FQ.f // 2
    cols = []
    for k in range(n):
        col = [H[i][k] for i in range(m)]
        conj = [x ** (FQ.p**q_pow) for x in col]
        outer = [col[i] * conj[j] for i in range(m) for j in range(m)]
        for beta in sub_basis:
            cols.append([c for z in outer for c in (beta * z).coeffs])
    return np.array(cols, dtype=np.int64).T


def find_hermitian_scaling(
    FQ: FieldSpec, H: list[list[FieldElement]], theta: FieldElement, f: int, seed: int = 0
) -> list[FieldElement]:
    """Nonzero column scalars c_k making diag(c) applied to H Hermitian self-orthogonal.

    Scaling column k by c multiplies its Gram contribution by the norm
    c**(q+1), an arbitrary element of GF(q)*.  The norm weights w_k solve a
    linear system with only m*m GF(q)-constraints: free weights are drawn at
    random (nonzero) and the pivot weights are solved for, retrying until
    every weight is nonzero.
    """
    p, n = FQ.p, len(H[0])
    sub_basis = [theta**s for s in range(f)]
    full = _gram_column_vectors(FQ, H, sub_basis)
    _, pivots = gfp.rref(full, p)
    pivot_sites = sorted({c // f for c in pivots})
    pivot_cols = [k * f + s for k in pivot_sites for s in range(f)]
    free_sites = [k for k in range(n) if k not in set(pivot_sites)]
    rng = random.Random(seed)
    q = p**f
    for _ in range(10000):
        w = np.zeros(n * f, dtype=np.int64)
        for k in free_sites:
            digits = _digits(rng.randrange(1, q), p, f)
            w[k * f : (k + 1) * f] = digits
        rhs = -(full @ w) % p
        sol = gfp.solve(full[:, pivot_cols], rhs, p)
        if sol is None:
            raise ConstructionError("Gram system unexpectedly inconsistent")
        w[pivot_cols] = sol
        weights = w.reshape(n, f)
        if weights.any(axis=1).all():
            break
    else:
        raise ConstructionError("no nonzero Hermitian column scaling found")
    norm_root: dict[int, FieldElement] = {}
    q_exp = p**f + 1
    for c in FQ.nonzero():
        norm_root.setdefault((c**q_exp).index, c)
    scalars = []
    for k in range(n):
        wk = FQ.zero
        for s in range(f):
            wk = wk + sub_basis[s] * int(weights[k, s])
        scalars.append(norm_root[wk.index])
    return scalars


def _digits(x: int, p: int, f: int) -> list[int]:
    out = []
    for _ in range(f):
        x, d = divmod(x, p)
        out.append(d)
    return out


def build_quantum_hamming(m: int, q: int, seed: int = 0) -> StabilizerCode:
    """The ((n, q**(n-2m), 3))_q quantum Hamming code with n = (q**(2m)-1)/(q**2-1)."""
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    pf = prime_power_decompose(q)
    if pf is None:
        raise ValueError(f"q={q} is not a prime power")
    p, f = pf
    Fq = field_make(p, f)
    FQ = field_make(p, 2 * f)
    H = projective_columns(m, q * q)
    n = len(H[0])

    scaling: tuple[int, ...] | None = None
    theta = subfield_embedding(FQ, Fq)
    if not is_hermitian_self_orthogonal(FQ, H):
        scalars = find_hermitian_scaling(FQ, H, theta, f, seed=seed)
        H = [[row[k] * scalars[k] for k in range(n)] for row in H]
        scaling = tuple(c.index for c in scalars)
        if not is_hermitian_self_orthogonal(FQ, H):
            raise ConstructionError("column scaling failed to produce a self-orthogonal matrix")

    gamma = FQ.gen
    if gamma ** (q) == gamma:
        raise ConstructionError("gamma lies in GF(q); cannot split GF(q^2) = GF(q) + gamma GF(q)")
    split: dict[int, tuple[FieldElement, FieldElement]] = {}
    for a in Fq.elements():
        for b in Fq.elements():
            z = embed(theta, a) + gamma * embed(theta, b)
            split[z.index] = (a, b)
    if len(split) != FQ.order:
        raise ConstructionError("{1, gamma} is not a GF(q)-basis of GF(q^2)")

    sub_basis = [theta**s for s in range(f)]
    rows = []
    for r in H:
        for t in (FQ.one, gamma):
            for beta in sub_basis:
                pairs = [split[(beta * t * z).index] for z in r]
                rows.append((tuple(x for x, _ in pairs), tuple(y for _, y in pairs)))

    code = StabilizerCode(q, p, f, n, m, tuple(rows), tuple(gamma.coeffs), scaling)
    keep = gfp.independent_rows(code.generator_matrix, p)
    if len(keep) != 2 * m * f:
        raise ConstructionError(f"expected {2 * m * f} independent rows, got {len(keep)}")
    code = StabilizerCode(
        q, p, f, n, m, tuple(rows[i] for i in keep), tuple(gamma.coeffs), scaling
    )
    if not commutation_check(code):
        raise ConstructionError("generators do not commute")
    return code


def code_from_rows(q: int, rows: Sequence[tuple[Sequence[int], Sequence[int]]], n: int | None = None, m: int = 0) -> StabilizerCode:
    """Code from (a, b) rows of GF(q) element indices; handy for hand-built examples."""
    pf = prime_power_decompose(q)
    if pf is None:
        raise ValueError(f"q={q} is not a prime power")
    p, f = pf
    F = field_make(p, f)
    if n is None:
        if not rows:
            raise ValueError("n is required when there are no rows")
        n = len(rows[0][0])
    gens = tuple(
        (tuple(F.from_index(x) for x in a), tuple(F.from_index(z) for z in b)) for a, b in rows
    )
    return StabilizerCode(q, p, f, n, m, gens)


# ---------------------------------------------------------------------------
# checks


def commutation_check(code: StabilizerCode) -> bool:
    """All generator pairs commute, via the exact trace-symplectic form."""
    F = code.field
    gens = code.generators
    return all(
        symplectic_phase(F, gens[i], gens[j]) == 0
        for i in range(len(gens))
        for j in range(i + 1, len(gens))
    )


def generators_independent(code: StabilizerCode) -> bool:
    return gfp.rank(code.generator_matrix, code.p) == code.num_rows


def syndrome_of(code: StabilizerCode, err: ErrorClass) -> tuple[int, ...]:
    if len(err.a) != code.n or len(err.b) != code.n:
        raise ValueError(f"error has length {len(err.a)}, code has n={code.n}")
    F = code.field
    return tuple(symplectic_phase(F, g, (err.a, err.b)) for g in code.generators)


def syndromes(code: StabilizerCode, vectors: np.ndarray) -> np.ndarray:
    """Syndromes of expanded error vectors (one per row)."""
    return vectors @ code.syndrome_matrix.T % code.p


def local_errors(code: StabilizerCode) -> list[np.ndarray]:
    """The q**2 - 1 nonzero (a, b) pairs on one site as 2f-digit vectors."""
    p, f = code.p, code.f
    return [np.array(_digits(x, p, 2 * f)) for x in range(1, p ** (2 * f))]


def single_site_errors(code: StabilizerCode) -> np.ndarray:
    """Expanded vectors of all n(q**2-1) weight-one error classes, site-major."""
    n, f = code.n, code.f
    nf = n * f
    out = []
    for j in range(n):
        for loc in local_errors(code):
            v = np.zeros(2 * nf, dtype=np.int64)
            v[j * f : (j + 1) * f] = loc[:f]
            v[nf + j * f : nf + (j + 1) * f] = loc[f:]
            out.append(v)
    return np.array(out, dtype=np.int64).reshape(-1, 2 * nf)


def error_classes_upto(code: StabilizerCode, radius: int) -> Iterator[np.ndarray]:
    """Expanded vectors of every error class of weight <= radius."""
    n, f = code.n, code.f
    nf = n * f
    locs = local_errors(code)
    for w in range(radius + 1):
        for sites in itertools.combinations(range(n), w):
            for choice in itertools.product(locs, repeat=w):
                v = np.zeros(2 * nf, dtype=np.int64)
                for j, loc in zip(sites, choice):
                    v[j * f : (j + 1) * f] = loc[:f]
                    v[nf + j * f : nf + (j + 1) * f] = loc[f:]
                yield v


@dataclass(frozen=True)
class PerfectionReport:
    classes: int
    syndrome_space: int
    injective: bool
    collision: tuple[int, int] | None = None

    @property
    def perfect(self) -> bool:
        return self.injective and self.classes == self.syndrome_space


def perfection_report(code: StabilizerCode, radius: int = 1) -> PerfectionReport:
    """Compare error classes of weight <= radius against the syndrome space."""
    vecs = np.array(list(error_classes_upto(code, radius)), dtype=np.int64).reshape(
        -1, 2 * code.n * code.f
    )
    synd = syndromes(code, vecs)
    seen: dict[bytes, int] = {}
    collision = None
    for i, s in enumerate(synd):
        key = s.tobytes()
        if key in seen:
            collision = (seen[key], i)
            break
        seen[key] = i
    return PerfectionReport(
        classes=len(vecs),
        syndrome_space=code.p**code.num_rows,
        injective=collision is None,
        collision=collision,
    )


def perfection_check(code: StabilizerCode, radius: int = 1) -> bool:
    return perfection_report(code, radius).perfect


def min_undetectable_weight(code: StabilizerCode, limit: int = 3) -> int | None:
    """Smallest weight <= limit of a zero-syndrome class outside the stabilizer, else None.

    Weight-2 and weight-3 kernels are found by matching sums of single-site
    syndromes in a hash table, so the search is quadratic in n(q**2-1).
    """
    if code.n > 128:
        raise ValueError(f"n={code.n} too large for exhaustive low-weight search")
    singles = single_site_errors(code)
    synd = syndromes(code, singles)
    per_site = len(local_errors(code))
    site = np.repeat(np.arange(code.n), per_site)
    p = code.p
    space = code.row_space

    for i in np.nonzero(~synd.any(axis=1))[0]:
        if not space.contains(singles[i]):
            return 1
    if limit < 2:
        return None

    table: dict[bytes, list[int]] = {}
    for i, s in enumerate(synd):
        table.setdefault(s.tobytes(), []).append(i)

    def lookup(target: np.ndarray, after: int) -> list[int]:
        return [k for k in table.get((target % p).tobytes(), ()) if site[k] > after]

    for i in range(len(singles)):
        for k in lookup(-synd[i], site[i]):
            if not space.contains(singles[i] + singles[k]):
                return 2
    if limit < 3:
        return None
    for i in range(len(singles)):
        for j in range(i + 1, len(singles)):
            if site[j] <= site[i]:
                continue
            for k in lookup(-(synd[i] + synd[j]), site[j]):
                if not space.contains(singles[i] + singles[j] + singles[k]):
                    return 3
    return None


def distance3_check(code: StabilizerCode) -> bool:
    """True iff the least weight of an undetectable error class is exactly 3."""
    return min_undetectable_weight(code, 3) == 3


def stabilizer_elements(code: StabilizerCode) -> np.ndarray:
    if code.p**code.num_rows > MAX_ROWSPACE:
        raise ValueError(f"row space of size {code.p}^{code.num_rows} too large to enumerate")
    return gfp.span_elements(code.generator_matrix, code.p)


def purity_check(code: StabilizerCode, d: int) -> bool:
    """No nonidentity stabilizer element has weight below d."""
    elems = stabilizer_elements(code)
    w = weights_of(elems, code.n, code.f)
    nonzero = elems.any(axis=1)
    return not bool(((w < d) & nonzero).any())


# ---------------------------------------------------------------------------
# export


def code_to_json(code: StabilizerCode) -> dict:
    return {
        "q": code.q,
        "p": code.p,
        "f": code.f,
        "n": code.n,
        "m": code.m,
        "basis_gamma": list(code.basis_gamma),
        "generators": [
            [[list(x.coeffs) for x in a], [list(z.coeffs) for z in b]] for a, b in code.generators
        ],
    }


def code_from_json(doc: dict) -> StabilizerCode:
    p, f, n = int(doc["p"]), int(doc["f"]), int(doc["n"])
    q = int(doc["q"])
    if p**f != q:
        raise ValueError(f"inconsistent field parameters q={q}, p={p}, f={f}")
    F = field_make(p, f)
    gens = []
    for a, b in doc["generators"]:
        if len(a) != n or len(b) != n:
            raise ValueError("generator row length does not match n")
        gens.append((tuple(F.element(x) for x in a), tuple(F.element(z) for z in b)))
    return StabilizerCode(
        q, p, f, n, int(doc.get("m", 0)), tuple(gens), tuple(doc.get("basis_gamma", ()))
    )
