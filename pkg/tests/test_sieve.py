import pytest

from perfectum.annihilator import lloyd_poly
from perfectum.exactmath import binomial
from perfectum.sieve import (
    CandidateRecord,
    SieveError,
    Verdict,
    VerdictKind,
    classify,
    hamming_length,
    lemma8_exponent,
    sieve_range,
    sphere_size,
    verify_record,
)


def direct_sphere(n, e, q):
    return sum((q * q - 1) ** i * binomial(n, i) for i in range(e + 1))


def brute_survivors(q, n_max, e_max):
    """Oracle: both conditions from scratch, Lloyd roots by plain evaluation."""
    out = []
    for n in range(2, n_max + 1):
        for e in range(1, min(e_max, (n - 1) // 2) + 1):
            s = direct_sphere(n, e, q)
            l, power = 0, 1
            while power < s:
                power *= q * q
                l += 1
            if power != s:
                continue
            L = lloyd_poly(e, n, q).poly
            roots = [t for t in range(1, n) if L(t) == 0]
            if len(roots) == e:
                out.append((n, e))
    return out


@pytest.mark.parametrize("n, e, q, expected", [(5, 0, 2, 1), (5, 1, 2, 16), (10, 1, 3, 81)])
def test_sphere_examples(n, e, q, expected):
    assert sphere_size(n, e, q) == expected


def test_sphere_matches_direct_sum_and_grows():
    for q in (2, 3, 4, 5):
        for n in range(1, 40):
            for e in range(n + 1):
                assert sphere_size(n, e, q) == direct_sphere(n, e, q)
                if e < n:
                    assert sphere_size(n, e + 1, q) > sphere_size(n, e, q)


def test_power_exponent_examples():
    assert lemma8_exponent(5, 1, 2) == 2
    assert lemma8_exponent(4, 1, 2) is None
    assert lemma8_exponent(10, 1, 3) == 2


def test_sieve_examples():
    assert [(r.n, r.e) for r in sieve_range([2], 100, 5)] == [(5, 1), (21, 1), (85, 1)]
    assert sieve_range([2], 4, 5) == []


def test_sieve_q3_recomputed_independently():
    got = [(r.n, r.e) for r in sieve_range([3], 100, 5)]
    assert got == brute_survivors(3, 100, 5) == [(10, 1), (91, 1)]


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_sieve_matches_bruteforce_oracle(q):
    got = [(r.n, r.e) for r in sieve_range([q], 120, 4)]
    assert got == brute_survivors(q, 120, 4)


def test_sieve_rejects_bad_q():
    with pytest.raises(SieveError):
        sieve_range([6], 10, 2)
    with pytest.raises(SieveError):
        sieve_range([1], 10, 2)


def test_pruning_soundness_verbose():
    records = sieve_range([2, 3], 60, 4, verbose=True)
    for r in records:
        assert r.survives == verify_record(r)
        assert (r.verdict is not None) == r.survives
        assert r.sphere == direct_sphere(r.n, r.e, r.q)
    survivors = [r for r in records if r.survives]
    assert survivors == sieve_range([2, 3], 60, 4)


def test_classify_examples():
    rec = CandidateRecord(q=2, n=5, e=1, sphere=16, l=2, lloyd_ok=True, lloyd_zeros=(4,))
    assert classify(rec) == Verdict(VerdictKind.HAMMING, 2)
    rec = CandidateRecord(q=3, n=10, e=1, sphere=81, l=2, lloyd_ok=True, lloyd_zeros=(9,))
    assert str(classify(rec)) == "HammingFamily(2)"
    rec = CandidateRecord(q=2, n=5, e=0, sphere=1, l=0, lloyd_ok=True)
    assert classify(rec).kind is VerdictKind.TRIVIAL
    rec = CandidateRecord(q=2, n=7, e=1, sphere=22, l=None, lloyd_ok=False)
    assert classify(rec).kind is VerdictKind.UNEXPECTED
    with pytest.raises(ValueError):
        classify(CandidateRecord(q=2, n=5, e=1, sphere=16, l=3, lloyd_ok=True))


def test_hamming_length():
    assert [hamming_length(2, l) for l in (2, 3, 4)] == [5, 21, 85]
    assert hamming_length(3, 2) == 10


def test_parallel_matches_serial():
    serial = sieve_range([2, 3], 200, 4, workers=1)
    parallel = sieve_range([2, 3], 200, 4, workers=3)
    assert serial == parallel
