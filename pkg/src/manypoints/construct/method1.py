"""Fibre products from trace forms that vanish identically on F_q."""

from __future__ import annotations

from math import gcd, isqrt

import numpy as np

from .. import linalg
from ..code import kernel_of_phi, xr_function
from ..errors import RankOutOfRange
from ..function import FunctionExpr, as_reduce
from ..gf import FieldTable
from .result import ConstructionResult, finish
from .search import combine, span_pipeline


def kernel_degree(tbl: FieldTable) -> int:
    """The h for which the evaluation map R_h -> C_h has the large kernel."""
    return tbl.m // 2 if tbl.m % 2 == 0 else (tbl.m + 1) // 2


def method1_claim(tbl: FieldTable, r: int) -> tuple[int, int]:
    p, q = tbl.p, tbl.q
    root = isqrt(q) if tbl.m % 2 == 0 else isqrt(p * q)
    return (p**r - 1) * root // 2, p**r * q + 1


def method1(tbl: FieldTable, r: int) -> ConstructionResult:
    """r independent kernel elements x*R(x); every member has pq+1 points."""
    m = tbl.m
    limit = m // 2 if m % 2 == 0 else m
    if not 1 <= r <= limit:
        raise RankOutOfRange(f"r must lie in [1, {limit}] for m = {m}")
    h = kernel_degree(tbl)
    kernel = kernel_of_phi(tbl, h)
    basis = [xr_function(tbl, R) for R in kernel[:r]]
    g, n = method1_claim(tbl, r)
    return finish("I", {"h": h, "r": r, "R": [dict(R) for R in kernel[:r]]}, basis, g, n, "maximal kernel family")


# -- variants -------------------------------------------------------------------


def _field_basis(tbl: FieldTable) -> list[int]:
    return [int(a) for a in tbl.powers]


def _trace_zero_kernel(tbl: FieldTable) -> list[int]:
    """F_p-basis of {b : b^sqrt(q) + b = 0}."""
    s = isqrt(tbl.q)
    if s * s != tbl.q:
        raise ValueError("needs an even extension degree")
    sols = [b for b in range(tbl.q) if tbl.add(tbl.pow(b, s), b) == 0]
    vecs = tbl.digits[sols].astype(np.int64)
    basis = linalg.row_basis(vecs, tbl.p)
    return [int(v @ tbl.powers) for v in basis]


def variant_blocks(tbl: FieldTable, family: str, params: dict | None = None) -> list[FunctionExpr]:
    """Building blocks of one of the vanishing trace-form families.

    ``shifted``   x^t (a x^q - a x) for each ``t`` in ``params["t"]`` prime to p
    ``twoterm``   a x^r - a^(p^t) x^s with s = r p^t mod (q-1), pairs ``(r, t)``
                  in ``params["rt"]``
    ``threeterm`` x (a x^(p^(m-1)) + b x^sqrt(q) - a^p x^p), m even; the a-part
                  and the b-part (b^sqrt(q) + b = 0) are given separately
    ``a`` runs over an F_p-basis of F_q in every family.
    """
    params = params or {}
    p, q, m = tbl.p, tbl.q, tbl.m
    out: list[FunctionExpr] = []
    if family == "shifted":
        for t in params.get("t", [1]):
            if gcd(t, p) != 1:
                continue
            for a in _field_basis(tbl):
                out.append(FunctionExpr.build(tbl, {t + q: a, t + 1: tbl.neg(a)}))
    elif family == "twoterm":
        for r, t in params.get("rt", [(1, 1)]):
            s = (r * p**t) % (q - 1) or (q - 1)
            for a in _field_basis(tbl):
                poly = {r: a}
                poly[s] = tbl.sub(poly.get(s, 0), tbl.frobenius(a, t))
                out.append(FunctionExpr.build(tbl, poly))
    elif family == "threeterm":
        if m % 2:
            raise ValueError("threeterm needs m even")
        for a in _field_basis(tbl):
            poly = {p ** (m - 1) + 1: a}
            poly[p + 1] = tbl.sub(poly.get(p + 1, 0), tbl.frobenius(a, 1))
            out.append(FunctionExpr.build(tbl, poly))
        for b in _trace_zero_kernel(tbl):
            out.append(FunctionExpr.build(tbl, {isqrt(q) + 1: b}))
    else:
        raise ValueError(f"unknown family {family!r}")
    return out


def _reduced_vector(f: FunctionExpr, keys: dict) -> np.ndarray | None:
    """Digits of the nonconstant part of the reduced form, one block of m
    digits per monomial key."""
    red = as_reduce(f)
    tbl = f.tbl
    items = []
    if red is not None:
        items += [(("x", k), c) for k, c in red.poly if k > 0]
        items += [((a, k), c) for a, t in red.poles for k, c in t]
    for key, _ in items:
        keys.setdefault(key, len(keys))
    vec = np.zeros(len(keys) * tbl.m, dtype=np.int64)
    for key, c in items:
        i = keys[key]
        vec[i * tbl.m : (i + 1) * tbl.m] = tbl.digits[c]
    return vec


def independent_blocks(funcs) -> list[FunctionExpr]:
    """Greedy subset that stays F_p-independent modulo Artin-Schreier
    equivalence (so no nonzero combination is trivial)."""
    funcs = list(funcs)
    if not funcs:
        return []
    p = funcs[0].spec.p
    keys: dict = {}
    vecs = [_reduced_vector(f, keys) for f in funcs]
    width = len(keys) * funcs[0].spec.m
    vecs = [np.pad(v, (0, width - len(v))) for v in vecs]
    kept, rows = [], []
    for f, v in zip(funcs, vecs):
        if not v.any():
            continue
        if linalg.rank(np.array(rows + [v]), p) == len(rows) + 1:
            rows.append(v)
            kept.append(f)
    return kept


def pipeline(blocks, max_dim: int | None = None, budget: int = 10**7, method: str = "I-variant") -> list[ConstructionResult]:
    """Best verified fibre product per genus over the F_p-span of ``blocks``."""
    blocks = list(blocks)
    p = blocks[0].spec.p
    best = span_pipeline(blocks, max_dim=max_dim, budget=budget)
    out = []
    for g in sorted(best):
        n, coeffs = best[g]
        basis = combine(blocks, coeffs, p)
        res = finish(method, {"blocks": [str(b) for b in blocks], "coefficients": coeffs.tolist()}, basis, g, n, "span search")
        out.append(res)
    return out


def method1_variants(tbl: FieldTable, family: str, params: dict | None = None, max_dim: int | None = None,
                     budget: int = 10**7, extra_blocks=()) -> list[ConstructionResult]:
    """Run the span pipeline on one variant family (plus optional extra
    blocks); returns one verified result per genus, locally best in N."""
    blocks = independent_blocks(list(variant_blocks(tbl, family, params)) + list(extra_blocks))
    if not blocks:
        return []
    return pipeline(blocks, max_dim=max_dim, budget=budget)
