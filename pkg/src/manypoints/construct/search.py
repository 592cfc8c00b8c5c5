"""Search helpers shared by the construction methods."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import linalg
from ..curve import genus_of_function
from ..errors import DependentBasis, SearchExhausted
from ..function import FunctionExpr, as_reduce


def encode(vectors: np.ndarray, p: int) -> np.ndarray:
    vectors = np.asarray(vectors, dtype=np.int64)
    return vectors @ (p ** np.arange(vectors.shape[-1], dtype=np.int64))


def find_subspace(good, p: int, r: int, first=None, budget: int = 10**6):
    """An r-dimensional subspace whose nonzero vectors all lie in ``good``.

    ``good`` is an array of F_p digit vectors closed under multiplication by
    F_p^*.  ``first`` optionally masks which vectors may serve as the first
    basis vector.  Later basis vectors are taken in increasing candidate
    order, which loses no subspace (take each successive minimum outside the
    current span).  Returns an ``(r, k)`` basis or None; raises
    SearchExhausted after ``budget`` expanded nodes.
    """
    good = np.asarray(good, dtype=np.int64)
    if r == 0:
        return np.zeros((0, good.shape[1] if good.ndim == 2 else 0), dtype=np.int64)
    if good.size == 0:
        return None
    codes = np.sort(encode(good, p))
    k = good.shape[1]
    nodes = 0

    def closed(cands, span):
        if cands.size == 0:
            return cands
        sums = (cands[:, None, :] + span[None, :, :]) % p
        return cands[np.isin(encode(sums, p), codes).all(axis=1)]

    def extend(span, v):
        return np.concatenate([(lam * v + span) % p for lam in range(p)])

    def rec(span, cands, chosen):
        nonlocal nodes
        if len(chosen) == r:
            return np.array(chosen)
        for i in range(len(cands)):
            nodes += 1
            if nodes > budget:
                raise SearchExhausted(f"subspace search exceeded {budget} nodes")
            new_span = extend(span, cands[i])
            rest = closed(cands[i + 1 :], new_span)
            if len(rest) < r - len(chosen) - 1:
                continue
            out = rec(new_span, rest, chosen + [cands[i]])
            if out is not None:
                return out
        return None

    zero = np.zeros((1, k), dtype=np.int64)
    if first is None:
        return rec(zero, good, [])
    for v in good[np.asarray(first, dtype=bool)]:
        nodes += 1
        if nodes > budget:
            raise SearchExhausted(f"subspace search exceeded {budget} nodes")
        span = extend(zero, v)
        out = rec(span, closed(good, span), [v])
        if out is not None:
            return out
    return None


@dataclass
class MemberTable:
    """Reduced form, genus and traces of every F_p-combination of blocks."""

    blocks: list
    p: int
    q: int
    reduced: list
    genus: np.ndarray
    tr: np.ndarray
    regular: np.ndarray

    @classmethod
    def build(cls, blocks) -> "MemberTable":
        tbl = blocks[0].tbl
        p, q, k = tbl.p, tbl.q, len(blocks)
        reduced, G, TR, RG = [], [], [], []
        for lam in linalg.coefficient_vectors(k, p):
            f = FunctionExpr.zero(tbl)
            for c, b in zip(lam, blocks):
                if c:
                    f = f + b.times_int(int(c))
            red = None if f.is_zero() else as_reduce(f)
            if red is None:
                if np.any(lam):
                    raise DependentBasis(f"blocks combination {tuple(int(x) for x in lam)} is trivial")
                reduced.append(None)
                G.append(0)
                TR.append(np.zeros(q + 1, dtype=np.int64))
                RG.append(np.ones(q + 1, dtype=bool))
                continue
            t, g = red.trace_values()
            reduced.append(red)
            G.append(genus_of_function(red))
            TR.append(t)
            RG.append(g)
        return cls(list(blocks), p, q, reduced, np.array(G), np.array(TR), np.array(RG))


def span_pipeline(blocks, max_dim: int | None = None, budget: int = 10**7):
    """Enumerate every subspace of the F_p-span of ``blocks`` and keep, for
    each genus, the largest point count with the first witness reaching it.

    Returns ``{genus: (count, coefficient_rows)}`` where the rows express a
    witness basis in terms of the blocks.
    """
    mt = MemberTable.build(blocks)
    p, k = mt.p, len(blocks)
    max_dim = k if max_dim is None else min(max_dim, k)
    total = sum(linalg.gaussian_binomial(k, r, p) for r in range(1, max_dim + 1))
    if total > budget:
        raise SearchExhausted(f"{total} subspaces exceed the budget {budget}")
    pw = p ** np.arange(k, dtype=np.int64)
    best: dict[int, tuple[int, np.ndarray]] = {}
    for r in range(1, max_dim + 1):
        cv = linalg.coefficient_vectors(r, p)[1:]
        for batch in linalg.iter_rref(k, r, p, batch=1 << 14):
            idx = (np.einsum("mr,brk->bmk", cv, batch) % p) @ pw
            reg = mt.regular[idx]
            ok = np.all((mt.tr[idx] == 0) | ~reg, axis=1)
            N = np.where(ok, reg.sum(axis=1) + 1, 0).sum(axis=1)
            G = mt.genus[idx].sum(axis=1) // (p - 1)
            for g in np.unique(G):
                sel = np.nonzero(G == g)[0]
                j = sel[np.argmax(N[sel])]
                g, n = int(g), int(N[j])
                if g not in best or n > best[g][0]:
                    best[g] = (n, batch[j].copy())
    return best


def pareto(best: dict) -> list[tuple[int, int]]:
    """(g, N) pairs not beaten by a smaller genus with at least as many points."""
    out, top = [], -1
    for g in sorted(best):
        n = best[g][0]
        if n > top:
            out.append((g, n))
            top = n
    return out


def combine(blocks, coeffs, p: int):
    """Functions sum_j coeffs[i, j] * blocks[j] for each row i."""
    out = []
    for row in np.asarray(coeffs):
        f = FunctionExpr.zero(blocks[0].tbl)
        for c, b in zip(row, blocks):
            if int(c) % p:
                f = f + b.times_int(int(c))
        out.append(f)
    return out
