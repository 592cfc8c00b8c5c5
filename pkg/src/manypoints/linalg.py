"""Dense linear algebra over a prime field F_p on small integer numpy arrays."""

from __future__ import annotations

from itertools import combinations

import numpy as np


def _inv(a: int, p: int) -> int:
    return pow(int(a), p - 2, p)


def rref(M, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = np.array(M, dtype=np.int64) % p
    if A.ndim != 2:
        raise ValueError("need a 2-d matrix")
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = A[r] * _inv(A[r, c], p) % p
        col = A[:, c].copy()
        col[r] = 0
        A = (A - np.outer(col, A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(M, p: int) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(M, p)[1])


def nullspace(M, p: int) -> np.ndarray:
    """Rows spanning ``{v : M @ v == 0 (mod p)}``."""
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref(M, p)
    free = [c for c in range(n) if c not in piv]
    out = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        out[i, f] = 1
        for r, c in enumerate(piv):
            out[i, c] = (-R[r, f]) % p
    return out


def row_basis(M, p: int) -> np.ndarray:
    return rref(M, p)[0]


def independent(M, p: int) -> bool:
    M = np.asarray(M)
    return rank(M, p) == M.shape[0]


def solve(M, b, p: int):
    """One solution x of ``M @ x == b`` or None."""
    M = np.asarray(M, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    R, piv = rref(np.hstack([M, b]), p)
    n = M.shape[1]
    if n in piv:
        return None
    x = np.zeros(n, dtype=np.int64)
    for r, c in enumerate(piv):
        x[c] = R[r, n]
    return x


def coefficient_vectors(r: int, p: int) -> np.ndarray:
    """All of F_p^r as rows, in base-p counting order (first coordinate least
    significant)."""
    idx = np.arange(p**r, dtype=np.int64)
    return (idx[:, None] // p ** np.arange(r, dtype=np.int64)[None, :]) % p


def span(basis, p: int) -> np.ndarray:
    """Every F_p-combination of the rows of ``basis`` (zero row first)."""
    basis = np.asarray(basis, dtype=np.int64)
    return coefficient_vectors(basis.shape[0], p) @ basis % p


def projective_vectors(r: int, p: int) -> np.ndarray:
    """One representative per line of F_p^r: last nonzero coordinate is 1."""
    v = coefficient_vectors(r, p)[1:]
    last = np.array([row[np.nonzero(row)[0][-1]] for row in v])
    return v[last == 1]


def gaussian_binomial(k: int, r: int, p: int) -> int:
    if r < 0 or r > k:
        return 0
    num = den = 1
    for i in range(r):
        num *= p ** (k - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def iter_rref(k: int, r: int, p: int, batch: int = 1 << 16):
    """Yield every r x k reduced echelon matrix of rank r, in chunks.

    Each chunk has shape ``(B, r, k)``.  Pivot patterns come in lexicographic
    order; within a pattern the free entries count up in base p.  This visits
    each r-dimensional subspace of F_p^k exactly once.
    """
    if r == 0:
        yield np.zeros((1, 0, k), dtype=np.int64)
        return
    for piv in combinations(range(k), r):
        pset = set(piv)
        free = [(i, j) for i, c in enumerate(piv) for j in range(c + 1, k) if j not in pset]
        base = np.zeros((r, k), dtype=np.int64)
        base[list(range(r)), list(piv)] = 1
        total = p ** len(free)
        fr = np.array([f[0] for f in free], dtype=np.int64)
        fc = np.array([f[1] for f in free], dtype=np.int64)
        pw = p ** np.arange(len(free), dtype=np.int64)
        for start in range(0, total, batch):
            idx = np.arange(start, min(total, start + batch), dtype=np.int64)
            out = np.broadcast_to(base, (idx.size, r, k)).copy()
            if free:
                out[:, fr, fc] = (idx[:, None] // pw[None, :]) % p
            yield out
