import numpy as np
import pytest

from manypoints import linalg


@pytest.mark.parametrize("k,r,p", [(4, 2, 2), (5, 3, 2), (4, 2, 3), (6, 1, 2), (3, 3, 3)])
def test_iter_rref_counts_gaussian_binomial(k, r, p):
    seen = set()
    for batch in linalg.iter_rref(k, r, p, batch=7):
        for M in batch:
            assert linalg.rank(M, p) == r
            seen.add(frozenset(map(tuple, linalg.span(M, p).tolist())))
    assert len(seen) == linalg.gaussian_binomial(k, r, p)


def test_gaussian_binomial_values():
    assert linalg.gaussian_binomial(4, 2, 2) == 35
    assert linalg.gaussian_binomial(3, 1, 3) == 13


def test_nullspace_and_solve():
    rng = np.random.default_rng(1)
    for p in (2, 3, 5):
        M = rng.integers(0, p, size=(4, 7))
        N = linalg.nullspace(M, p)
        assert N.shape[0] == 7 - linalg.rank(M, p)
        assert not np.any(M @ N.T % p)
        x = rng.integers(0, p, size=7)
        sol = linalg.solve(M, M @ x % p, p)
        assert np.array_equal(M @ sol % p, M @ x % p)


def test_span_size():
    assert len(linalg.span(np.eye(3, dtype=np.int64), 3)) == 27
    assert len(linalg.projective_vectors(3, 2)) == 7
