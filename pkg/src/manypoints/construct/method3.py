"""Odd characteristic: spaces of quadratic-type functions a x^2 + b x (and
a1 x^4 + a0 x^2 + b x) on which every member has the extremal count."""

from __future__ import annotations

from math import isqrt

import numpy as np

from .. import linalg
from ..errors import RankOutOfRange, SearchExhausted
from ..function import FunctionExpr
from ..gf import FieldTable
from .result import ConstructionResult, finish
from .search import find_subspace


def _require_odd(tbl: FieldTable):
    if tbl.p == 2:
        raise ValueError("needs odd characteristic")


def _linear_traces(tbl: FieldTable) -> np.ndarray:
    """T[b, x] = Tr(b x) for b, x in F_q."""
    x = tbl.elements()
    return np.array([tbl.trace_table[tbl.mul(b, x)] for b in range(tbl.q)], dtype=np.int64)


def _monomial_traces(tbl: FieldTable, k: int) -> np.ndarray:
    """M[a, x] = Tr(a x^k)."""
    xk = np.array([tbl.pow(int(v), k) for v in tbl.elements()], dtype=np.int64)
    return _linear_traces(tbl)[:, xk]


def affine_counts(tbl: FieldTable, base: np.ndarray, T: np.ndarray) -> np.ndarray:
    """p * #{x : base(x) + Tr(b x) = 0} + 1 for every b (one pole at infinity)."""
    vals = (base[None, :] + T) % tbl.p
    return tbl.p * np.count_nonzero(vals == 0, axis=1) + 1


def method3_claim(tbl: FieldTable, r: int) -> tuple[int, int]:
    p, q = tbl.p, tbl.q
    g = p**r * (p - 1) // 2
    if tbl.m % 2:
        return g, q + 1 + p**r * isqrt(p * q)
    return g, q + 1 + p**r * (p - 1) * isqrt(q)


def _elements_of(tbl: FieldTable, digit_rows) -> list[int]:
    return [int(np.asarray(v) @ tbl.powers) for v in digit_rows]


def translate_space(tbl: FieldTable, r: int, a: int | None = None, budget: int = 10**6):
    """F_p (a x^2 + b0 x) + U x with dim U = r, every member with lambda != 0
    having the extremal single count.  Returns (a, b0, U) or None."""
    p, q, m = tbl.p, tbl.q, tbl.m
    single = q + 1 + (isqrt(p * q) if m % 2 else (p - 1) * isqrt(q))
    T = _linear_traces(tbl)
    Q = _monomial_traces(tbl, 2)
    k = m + 1
    vecs = linalg.coefficient_vectors(k, p)  # (lambda, digits of b)
    lam = vecs[:, 0]
    bidx = vecs[:, 1:] @ tbl.powers
    for a_ in ([a] if a is not None else range(1, q)):
        good_b = affine_counts(tbl, Q[a_], T) == single
        if not good_b.any():
            continue
        good = np.zeros(len(vecs), dtype=bool)
        nz = lam != 0
        # b / lambda for lambda in F_p^*
        inv = np.array([pow(int(l), -1, p) if l else 0 for l in lam])
        scaled = np.array([tbl.scale(int(c), int(b)) for c, b in zip(inv[nz], bidx[nz])])
        good[nz] = good_b[scaled]
        good[~nz] = bidx[~nz] != 0
        first = nz & (lam == 1)
        found = find_subspace(vecs[good], p, r + 1, first=first[good], budget=budget)
        if found is not None:
            b0 = int(found[0, 1:] @ tbl.powers)
            rest = found[1:] - found[1:, :1] * found[0]  # clear lambda in later rows
            U = _elements_of(tbl, rest[:, 1:] % p)
            return a_, b0, U
    return None


def _translate_basis(tbl, a, b0, U):
    out = [FunctionExpr.build(tbl, {2: a, 1: b0} if b0 else {2: a})]
    out += [FunctionExpr.build(tbl, {1: u}) for u in U]
    return out


def method3(tbl: FieldTable, r: int, budget: int = 10**6) -> ConstructionResult:
    """Fibre product over F_p(a x^2 + b0 x) + U x with dim U = r."""
    _require_odd(tbl)
    m = tbl.m
    limit = (m - 1) // 2 if m % 2 else m // 2
    if not 1 <= r <= limit:
        raise RankOutOfRange(f"r must lie in [1, {limit}] for m = {m}")
    g, n = method3_claim(tbl, r)
    found = translate_space(tbl, r, budget=budget)
    if found is None:
        raise SearchExhausted(f"no translate space of dimension {r} over GF({tbl.q})")
    a, b0, U = found
    basis = _translate_basis(tbl, a, b0, U)
    return finish("III", {"family": "translate", "r": r, "a": a, "b0": b0, "U": U}, basis, g, n,
                  "translates of a x^2 with extremal counts")


def _good_polys(tbl: FieldTable, degrees, target: int, chunk: int = 1 << 12) -> np.ndarray:
    """Digit vectors (coefficients of x^d for d in degrees, then of x) of all
    polynomials with nonzero leading coefficient whose single count is
    ``target``.  Each coefficient contributes m digits."""
    p, q, m = tbl.p, tbl.q, tbl.m
    T = _linear_traces(tbl)
    tops = [_monomial_traces(tbl, d) for d in degrees]
    k = len(degrees)
    out = []
    total = q**k
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk))
        coeffs = [(idx // q**i) % q for i in range(k)]  # coeffs[0] is the leading one
        lead = coeffs[0]
        keep = lead != 0
        if not keep.any():
            continue
        base = sum(tops[i][coeffs[i][keep]] for i in range(k)) % p
        # counts for every b at once: (batch, b, x)
        vals = (base[:, None, :] + T[None, :, :]) % p
        N = p * np.count_nonzero(vals == 0, axis=2) + 1
        rows, bs = np.nonzero(N == target)
        sel = np.nonzero(keep)[0][rows]
        for i_, b in zip(sel, bs):
            out.append(np.concatenate([tbl.digits[int(c[i_])] for c in coeffs] + [tbl.digits[b]]))
    if not out:
        return np.zeros((0, (k + 1) * m), dtype=np.int64)
    return np.array(out, dtype=np.int64)


def _vectors_to_functions(tbl, vecs, degrees):
    m = tbl.m
    out = []
    for v in vecs:
        poly = {}
        for i, d in enumerate(list(degrees) + [1]):
            c = int(v[i * m : (i + 1) * m] @ tbl.powers)
            if c:
                poly[d] = c
        out.append(FunctionExpr.build(tbl, poly))
    return out


def _closed_search(tbl, good, r, budget):
    """find_subspace on a good set that is closed under F_p^*; the
    vectors are added with all their scalar multiples first."""
    p = tbl.p
    if len(good) == 0:
        return None
    allv = np.concatenate([(lam * good) % p for lam in range(1, p)])
    allv = np.unique(allv, axis=0)
    return find_subspace(allv, p, r, budget=budget)


def quadric_family(tbl: FieldTable, budget: int = 10**6) -> ConstructionResult:
    """Two-dimensional space of a x^2 + b x, each member with
    q + 1 + sqrt(3q) points; genus 4 and q + 1 + 4 sqrt(3q) points."""
    if tbl.p != 3 or tbl.m % 2 == 0 or tbl.m < 3:
        raise ValueError("needs q = 3^m with m odd, m >= 3")
    q = tbl.q
    target = q + 1 + isqrt(3 * q)
    good = _good_polys(tbl, [2], target)
    found = _closed_search(tbl, good, 2, budget)
    if found is None:
        raise SearchExhausted(f"no quadric pair over GF({q})")
    basis = _vectors_to_functions(tbl, found, [2])
    return finish("III", {"family": "quadric"}, basis, 4, q + 1 + 4 * isqrt(3 * q),
                  "pairs of elliptic Artin-Schreier curves")


def degree4_family(tbl: FieldTable, budget: int = 10**6) -> ConstructionResult:
    """Two-dimensional space of a1 x^4 + a0 x^2 + b x whose members all have
    q + 1 + 6 sqrt(q) points; genus 12, attaining the Hasse-Weil bound."""
    if tbl.p != 3 or tbl.m % 4:
        raise ValueError("needs q = 3^m with 4 | m")
    q = tbl.q
    s = isqrt(q)
    target = q + 1 + 6 * s
    good = _good_polys(tbl, [4, 2], target)
    found = _closed_search(tbl, good, 2, budget)
    if found is None:
        raise SearchExhausted(f"no degree-4 pair over GF({q})")
    basis = _vectors_to_functions(tbl, found, [4, 2])
    return finish("III", {"family": "degree4"}, basis, 12, q + 1 + 24 * s, "pairs of maximal genus-3 curves")
