"""Fibre products from subcodes of small support weight."""

from __future__ import annotations

from math import isqrt

import numpy as np

from .. import linalg
from ..code import (
    DEFAULT_BUDGET,
    Subcode,
    TraceCode,
    build_Ch,
    generalized_hamming_weight,
    subcode_weight,
)
from ..curve import genus_of_function
from ..errors import BudgetExceeded, RankOutOfRange
from ..function import as_reduce
from ..gf import FieldTable
from .quadratic import product_function
from .result import ConstructionResult, finish


def _is_melas(code: TraceCode) -> bool:
    return code.name == "MelasDual"


def member_genera(D: Subcode) -> list[int]:
    """Genus of the curve of every nonzero member of D (0 for trivial ones)."""
    out = []
    for lam in linalg.coefficient_vectors(D.r, D.code.p)[1:]:
        f = D.code.function(lam @ D.coeffs % D.code.p)
        red = as_reduce(f)
        out.append(0 if red is None else genus_of_function(red))
    return out


def count_from_weight(code: TraceCode, r: int, w: int) -> int:
    """Point count predicted by the weight of an r-dimensional subcode: for
    the C_h codes p^r (q - w) + 1, for the dual Melas code p^r (q - 1 - w) + 2
    (exact when no member is rational)."""
    p, q = code.p, code.tbl.q
    if _is_melas(code):
        return p**r * (q - 1 - w) + 2
    return p**r * (q - w) + 1


def min_weight_subcodes(code: TraceCode, r: int, budget: int = DEFAULT_BUDGET, limit: int = 10**5):
    """(d_r, list of coefficient arrays) of every r-dimensional subcode of
    minimum support weight, at most ``limit`` of them."""
    k, p = code.dim, code.p
    if not 1 <= r <= k:
        raise RankOutOfRange(f"r must lie in [1, {k}]")
    count = linalg.gaussian_binomial(k, r, p)
    if count > budget:
        raise BudgetExceeded(f"{count} subspaces exceed the budget {budget}")
    best, found = None, []
    for batch in linalg.iter_rref(k, r, p, batch=max(1, (1 << 22) // max(1, r * code.n))):
        words = np.einsum("brk,kn->brn", batch, code.G) % p
        w = np.count_nonzero(np.any(words != 0, axis=1), axis=1)
        lo = int(w.min())
        if best is None or lo < best:
            best, found = lo, []
        if lo == best and len(found) < limit:
            found.extend(batch[w == best][: limit - len(found)])
    return best, found


def _result(code: TraceCode, D: Subcode, w: int, source: str, seed=None) -> ConstructionResult:
    genera = member_genera(D)
    rational = sum(1 for g in genera if g == 0)
    claim = count_from_weight(code, D.r, w)
    notes = []
    if _is_melas(code) and rational:
        notes.append(f"{rational} rational members: the weight gives only a lower bound {claim}")
        claim = None
    params = {"code": code.name, "q": code.tbl.q, "r": D.r, "weight": w,
              "coefficients": D.coeffs.tolist(), "member_genera": genera}
    res = finish("IV", params, D.functions(), None, claim, source, seed=seed)
    res.notes.extend(notes)
    return res


def method4(code: TraceCode, r: int, strategy: str = "exhaustive", budget: int = DEFAULT_BUDGET,
            seed: int = 0, samples: int = 20000) -> ConstructionResult:
    """Curve from a minimum-weight r-dimensional subcode.  For the dual
    Melas code a witness without rational members is preferred."""
    if strategy == "exhaustive":
        w, cands = min_weight_subcodes(code, r, budget=budget)
        chosen = cands[0]
        if _is_melas(code):
            for c in cands:
                if 0 not in member_genera(Subcode(code, c)):
                    chosen = c
                    break
        D = Subcode(code, chosen)
        return _result(code, D, subcode_weight(D), "weight of a minimum subcode")
    ghw = generalized_hamming_weight(code, r, strategy=strategy, budget=budget, seed=seed, samples=samples)
    return _result(code, ghw.witness, ghw.weight, "weight of a sampled subcode", seed=seed)


def method4_variants(code: TraceCode, r: int, budget: int = DEFAULT_BUDGET, limit: int = 10**5) -> list[ConstructionResult]:
    """One verified result per distinct (genus, count) among all
    minimum-weight subcodes."""
    w, cands = min_weight_subcodes(code, r, budget=budget, limit=limit)
    seen: dict[tuple[int, int], ConstructionResult] = {}
    for c in cands:
        D = Subcode(code, c)
        genera = member_genera(D)
        key = (sum(genera) // (code.p - 1), 0 in genera)
        if key in seen:
            continue
        seen[key] = _result(code, D, w, "weight of a minimum subcode")
    return sorted(seen.values(), key=lambda res: (res.genus, -res.count))


# -- products of linear forms --------------------------------------------------------


def product_claim(tbl: FieldTable, r: int) -> tuple[int, int]:
    q = tbl.q
    return (2**r - 1) * isqrt(q // 8), q + 1 + (2**r - 1) * q // 2


def product_subcode(tbl: FieldTable, r: int) -> ConstructionResult:
    """Members Tr(x) Tr(b x) for b in an r-dimensional space avoiding 1: each
    word has minimum weight q/4 in the second order Reed-Muller code and the
    subcode attains d_r = (2^r - 1) q / 2^(r+1)."""
    if tbl.p != 2 or tbl.m % 2 == 0 or tbl.m < 3:
        raise ValueError("needs q = 2^m with m odd, m >= 3")
    m, q = tbl.m, tbl.q
    if not 1 <= r < m:
        raise RankOutOfRange(f"r must lie in [1, {m - 1}]")
    a = 1
    V = [int(b) for b in tbl.powers if b != a][:r]
    basis = [product_function(tbl, [a], [b]) for b in V]
    g, n = product_claim(tbl, r)
    code = build_Ch(tbl, (m - 1) // 2)
    words = np.array([f.trace_values()[0][code.coords] for f in basis])
    weight = int(np.count_nonzero(np.any(linalg.span(words, 2) != 0, axis=0)))
    res = finish("IV", {"family": "products", "r": r, "a": a, "V": V, "weight": weight}, basis, g, n,
                 "minimum-weight words of the second order Reed-Muller code")
    expected = (2**r - 1) * q // 2 ** (r + 1)
    if weight != expected:
        res.notes.append(f"subcode weight {weight} differs from {expected}")
    return res
