import itertools

import numpy as np
import pytest

from perfectum import gfp
from perfectum.gf import field_make, hermitian_dot
from perfectum.sieve import sphere_size
from perfectum.stabilizer import (
    ErrorClass,
    build_quantum_hamming,
    code_from_json,
    code_from_rows,
    code_to_json,
    commutation_check,
    distance3_check,
    error_vector,
    generators_independent,
    min_undetectable_weight,
    perfection_check,
    perfection_report,
    projective_columns,
    purity_check,
    stabilizer_elements,
    syndrome_of,
    syndromes,
    weights_of,
)

FAMILY = [(2, 2), (2, 3), (3, 2), (4, 2), (5, 2)]  # (q, m)


@pytest.fixture(scope="module")
def codes():
    return {(q, m): build_quantum_hamming(m, q) for q, m in FAMILY}


@pytest.fixture(scope="module")
def five():
    return build_quantum_hamming(2, 2)


def single(code, site, a, b):
    F = code.field
    av = [F.zero] * code.n
    bv = [F.zero] * code.n
    av[site], bv[site] = F.from_index(a), F.from_index(b)
    return ErrorClass(tuple(av), tuple(bv))


@pytest.mark.parametrize("m, Q, count", [(2, 4, 5), (3, 4, 21), (2, 9, 10), (2, 16, 17)])
def test_projective_columns_count(m, Q, count):
    H = projective_columns(m, Q)
    assert len(H) == m and len(H[0]) == count


def test_projective_columns_are_distinct_points():
    H = projective_columns(2, 9)
    cols = list(zip(*H))
    for c in cols:
        first = next(x for x in c if x)
        assert first.index == 1
    F = H[0][0].spec
    # no column is a scalar multiple of another
    for c1, c2 in itertools.combinations(cols, 2):
        for lam in F.nonzero():
            assert [x * lam for x in c1] != list(c2)
    keys = [tuple(x.index for x in c) for c in cols]
    assert keys == sorted(keys)


def test_projective_columns_errors():
    with pytest.raises(ValueError):
        projective_columns(1, 4)
    with pytest.raises(ValueError):
        projective_columns(2, 8)


@pytest.mark.parametrize("q, m", FAMILY)
def test_family_parameters(codes, q, m):
    code = codes[(q, m)]
    n = ((q * q) ** m - 1) // (q * q - 1)
    assert code.n == n
    assert code.num_rows == 2 * m * code.f
    assert code.K == q ** (n - 2 * m)
    assert commutation_check(code)
    assert generators_independent(code)


def test_examples(codes):
    assert codes[(2, 2)].n == 5 and codes[(2, 2)].K == 2 and codes[(2, 2)].num_rows == 4
    assert codes[(2, 3)].n == 21 and codes[(2, 3)].K == 2**15
    assert codes[(3, 2)].n == 10 and codes[(3, 2)].K == 3**6


def test_scaling_recorded_only_when_needed(codes):
    assert codes[(2, 2)].column_scaling is None
    assert codes[(3, 2)].column_scaling is not None


def test_build_errors():
    with pytest.raises(ValueError):
        build_quantum_hamming(1, 2)
    with pytest.raises(ValueError):
        build_quantum_hamming(2, 6)


@pytest.mark.parametrize("q, m", FAMILY)
def test_perfection_distance_purity(codes, q, m):
    code = codes[(q, m)]
    assert perfection_check(code)
    assert distance3_check(code)
    assert purity_check(code, 3)
    assert perfection_check(code) == (sphere_size(code.n, 1, q) == q ** (2 * m))


def test_syndrome_examples(five):
    F = five.field
    zero = ErrorClass((F.zero,) * 5, (F.zero,) * 5)
    assert syndrome_of(five, zero) == (0, 0, 0, 0)
    x1, z1 = single(five, 0, 1, 0), single(five, 0, 0, 1)
    sx, sz = syndrome_of(five, x1), syndrome_of(five, z1)
    assert any(sx) and any(sz) and sx != sz
    for a, b in five.generators:
        assert syndrome_of(five, ErrorClass(a, b)) == (0, 0, 0, 0)
    with pytest.raises(ValueError):
        syndrome_of(five, ErrorClass((F.zero,), (F.zero,)))


@pytest.mark.parametrize("q, m", [(2, 2), (3, 2), (4, 2)])
def test_fast_syndromes_match_exact(codes, q, m):
    code = codes[(q, m)]
    for site in range(0, code.n, 3):
        for a in range(q):
            for b in range(q):
                err = single(code, site, a, b)
                fast = syndromes(code, error_vector(err)[None, :])[0]
                assert tuple(int(x) for x in fast) == syndrome_of(code, err)


def test_syndrome_linearity(codes):
    code = codes[(4, 2)]
    e1 = single(code, 1, 2, 3) + single(code, 4, 1, 0)
    e2 = single(code, 4, 3, 3) + single(code, 9, 0, 2)
    s = syndrome_of(code, e1 + e2)
    s1, s2 = syndrome_of(code, e1), syndrome_of(code, e2)
    assert s == tuple((x + y) % code.p for x, y in zip(s1, s2))


def test_deleted_generator_is_not_perfect(five):
    broken = five.without_generator(3)
    report = perfection_report(broken)
    assert report.classes == 16 and report.syndrome_space == 8
    assert not report.injective and report.collision is not None
    assert not perfection_check(broken)


def test_distance_negative_controls():
    trivial = code_from_rows(2, [], n=2)
    assert min_undetectable_weight(trivial) == 1
    assert not distance3_check(trivial)


def test_hermitian_self_orthogonality_of_scaled_matrix():
    # rebuild the scaled check matrix from the recorded scalars and re-test it
    code = build_quantum_hamming(2, 3)
    FQ = field_make(3, 2)
    H = projective_columns(2, 9)
    scal = [FQ.from_index(i) for i in code.column_scaling]
    Hs = [[row[k] * scal[k] for k in range(code.n)] for row in H]
    for r1 in Hs:
        for r2 in Hs:
            assert not hermitian_dot(FQ, r1, r2)


def test_purity_examples(five):
    assert purity_check(five, 3)
    assert purity_check(five, 1)
    w2 = code_from_rows(2, [([1, 1, 0], [0, 0, 0])])
    assert not purity_check(w2, 3)
    assert purity_check(w2, 2)


def test_stabilizer_weights_of_five_qubit_code(five):
    w = weights_of(stabilizer_elements(five), 5, 1)
    assert sorted(w.tolist()) == [0] + [4] * 15


def test_normalizer_size_by_enumeration(five):
    # 4^5 classes, those with zero syndrome form the normalizer: q^n * K = 64
    vecs = np.array(list(itertools.product(range(2), repeat=10)))
    s = syndromes(five, vecs)
    assert int((~s.any(axis=1)).sum()) == 64


def test_json_round_trip(codes):
    for code in codes.values():
        back = code_from_json(code_to_json(code))
        assert back == code
        assert np.array_equal(back.generator_matrix, code.generator_matrix)


def test_json_rejects_inconsistent():
    doc = code_to_json(build_quantum_hamming(2, 2))
    doc["q"] = 3
    with pytest.raises(ValueError):
        code_from_json(doc)


def test_generators_span_has_expected_rank(codes):
    for code in codes.values():
        assert gfp.rank(code.generator_matrix, code.p) == 2 * code.m * code.f
