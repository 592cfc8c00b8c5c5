"""Quadratic forms Tr(x R(x)) in characteristic 2 and the (a, b) products
used to build curves from them."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import isqrt

import numpy as np

from .. import linalg
from ..code import xr_function
from ..errors import NoSolution, RankOutOfRange, SearchExhausted
from ..function import FunctionExpr, as_reduce
from ..gf import FieldTable
from .result import ConstructionResult, finish
from .search import find_subspace


@dataclass
class QuadraticFormReport:
    R: dict
    radical: list[int]
    w: int
    radical_singular: bool
    rank: int
    zeros: int

    def as_dict(self) -> dict:
        return {
            "R": {int(k): int(v) for k, v in self.R.items()},
            "radical": self.radical,
            "w": self.w,
            "W_equals_W0": self.radical_singular,
            "rank": self.rank,
            "zeros": self.zeros,
        }


def _require_char2(tbl: FieldTable):
    if tbl.p != 2:
        raise ValueError("quadratic-form machinery here is for p = 2")


def form_values(f: FunctionExpr) -> np.ndarray:
    """Tr f(x) for x in F_q."""
    return f.trace_values()[0][: f.spec.q]


def quad_report(tbl: FieldTable, R: dict) -> QuadraticFormReport:
    """Radical, rank and zero count of Q(x) = Tr(x R(x)), p = 2."""
    _require_char2(tbl)
    if not any(R.values()):
        raise ValueError("R must be nonzero")
    Q = form_values(xr_function(tbl, R))
    basis = [int(b) for b in tbl.powers]
    x = tbl.elements()
    # B(e_j, y) = Q(e_j + y) + Q(e_j) + Q(y) for every y
    Bmat = np.array([(Q[tbl.add(e, x)] + Q[e] + Q) % 2 for e in basis])
    # y in W iff B(e_j, y) = 0 for all j; B is F_2-bilinear, so test on digits
    cols = Bmat[:, basis].T  # (y basis) x (e_j)
    null = linalg.nullspace(cols.T, 2)
    radical = [int(v @ tbl.powers) for v in null]
    w = len(radical)
    singular = all(Q[v] == 0 for v in radical)
    rank = tbl.m - w if singular else tbl.m - w + 1
    zeros = int(np.count_nonzero(Q == 0))
    if w % 2 != tbl.m % 2:
        raise AssertionError(f"radical dimension {w} has the wrong parity")
    hmax = max(k for k, v in R.items() if v)
    # for h = 0 the form is linear and B vanishes, so only h >= 1 is bounded
    if hmax >= 1 and w > 2 * hmax:
        raise AssertionError(f"radical dimension {w} exceeds 2h = {2 * hmax}")
    q = tbl.q
    if singular:
        s = isqrt(2**w * q)
        allowed = {(q + s) // 2, (q - s) // 2}
    else:
        allowed = {q // 2}
    if zeros not in allowed:
        raise AssertionError(f"zero count {zeros} not in {sorted(allowed)}")
    return QuadraticFormReport(dict(R), radical, w, singular, rank, zeros)


def product_function(tbl: FieldTable, a, b) -> FunctionExpr:
    """The function with trace sum_i Tr(a_i x) Tr(b_i x) on F_q.

    Expanding Tr(a x) b x gives terms b a^(2^k) x^(2^k+1); for k > m/2 the
    term is rewritten as (b a^(2^k))^(2^(m-k)) x^(2^(m-k)+1), which has the
    same trace.  A middle term c x^(sqrt(q)+1) with c^sqrt(q) + c = 0 has
    zero trace everywhere and is dropped.
    """
    m = tbl.m
    poly: dict[int, int] = {}
    for ai, bi in zip(a, b):
        for k in range(m):
            c = tbl.mul(bi, tbl.frobenius(ai, k))
            if k > m / 2:
                c, k = tbl.frobenius(c, m - k), m - k
            key = 2**k + 1
            poly[key] = tbl.add(poly.get(key, 0), c)
    if m % 2 == 0:
        key = 2 ** (m // 2) + 1
        c = poly.get(key, 0)
        if c and tbl.add(c, tbl.frobenius(c, m // 2)) == 0:
            del poly[key]
    return FunctionExpr.build(tbl, poly)


def dl_coefficients(tbl: FieldTable, a, b, js) -> list[int]:
    """sum_i a_i^(2^j) b_i + a_i b_i^(2^j) for each j in js."""
    out = []
    for j in js:
        acc = 0
        for ai, bi in zip(a, b):
            acc = tbl.add(acc, tbl.mul(tbl.frobenius(ai, j), bi))
            acc = tbl.add(acc, tbl.mul(ai, tbl.frobenius(bi, j)))
        out.append(acc)
    return out


@dataclass
class DLSolution:
    a: tuple[int, ...]
    b_basis: list[tuple[int, ...]]  # F_2-basis of the b-tuples solving the system
    js: list[int]

    def b_tuples(self) -> list[tuple[int, ...]]:
        """All solutions, zero first, as F_2-combinations of the basis."""
        n = len(self.b_basis)
        out = []
        for lam in linalg.coefficient_vectors(n, 2):
            acc = [0] * len(self.a)
            for c, bt in zip(lam, self.b_basis):
                if c:
                    acc = [x ^ y for x, y in zip(acc, bt)]
            out.append(tuple(acc))
        return out


def _independent(tbl: FieldTable, elems) -> bool:
    return linalg.independent(tbl.digits[list(elems)].astype(np.int64), 2)


def dl_equations(tbl: FieldTable, h: int) -> list[int]:
    return list(range(h + 1, tbl.m // 2 + 1))


def solve_dl_system(tbl: FieldTable, h: int, w: int, a=None, limit: int = 64) -> list[DLSolution]:
    """Solutions of the system sum_i a_i^(2^j) b_i + a_i b_i^(2^j) = 0 for
    j = h+1..floor(m/2).

    For fixed a's the system is F_2-linear in the b's, so each a-tuple gives a
    solution space found by a nullspace computation.  Tuples are visited in
    canonical order (or only ``a`` if given); at most ``limit`` a-tuples with
    a usable solution (one making a, b independent) are returned.
    """
    _require_char2(tbl)
    m = tbl.m
    if (m - w) % 2 or m - w < 2:
        raise ValueError("need w = m mod 2 and (m - w)/2 >= 1")
    n = (m - w) // 2
    js = dl_equations(tbl, h)
    basis = [int(e) for e in tbl.powers]
    if a is not None:
        candidates = [tuple(a)]
    else:
        candidates = (tuple(basis[i] for i in idx) for idx in combinations(range(m), n))
    out = []
    for at in candidates:
        if not _independent(tbl, at):
            continue
        # linear map (b_1..b_n) in F_2^(n m) -> F_2^(len(js) m)
        cols = []
        for i in range(n):
            for e in basis:
                bt = [0] * n
                bt[i] = e
                coeffs = dl_coefficients(tbl, at, bt, js)
                cols.append(np.concatenate([tbl.digits[c] for c in coeffs]) if js else np.zeros(0))
        M = np.array(cols, dtype=np.int64).T if js else np.zeros((0, n * m), dtype=np.int64)
        null = linalg.nullspace(M, 2)
        b_basis = []
        for v in null:
            bt = tuple(int(v[i * m : (i + 1) * m] @ tbl.powers) for i in range(n))
            b_basis.append(bt)
        sol = DLSolution(at, b_basis, js)
        if any(_independent(tbl, at + bt) for bt in sol.b_tuples()[1:]):
            out.append(sol)
            if len(out) >= limit:
                break
    if not out:
        raise NoSolution(f"no solutions for h={h}, w={w} over GF({tbl.q})")
    return out


def method2_params(tbl: FieldTable) -> tuple[int, int, int]:
    """(h, w, max r) for the odd and even extension-degree cases."""
    m = tbl.m
    if m % 2:
        return (m - 3) // 2, m - 4, m - 3
    return (m - 2) // 2, m - 2, (m - 2) // 2


def method2_claim(tbl: FieldTable, r: int) -> tuple[int, int]:
    m, q = tbl.m, tbl.q
    if m % 2:
        return (2**r - 1) * 2 ** ((m - 5) // 2), q + 1 + (2**r - 1) * 2 ** (m - 2)
    return (2**r - 1) * 2 ** ((m - 4) // 2), q + 1 + (2**r - 1) * 2 ** (m - 1)


def method2(tbl: FieldTable, r: int, max_a: int = 64, budget: int = 10**5) -> ConstructionResult:
    """An r-dimensional space of products sum Tr(a_i x) Tr(b_i x) with a
    fixed, all of whose members have the extremal zero count and full degree.
    """
    _require_char2(tbl)
    m, q = tbl.m, tbl.q
    if (m % 2 and m < 5) or (m % 2 == 0 and m < 4):
        raise RankOutOfRange(f"m = {m} is too small")
    h, w, rmax = method2_params(tbl)
    if not 1 <= r <= rmax:
        raise RankOutOfRange(f"r must lie in [1, {rmax}]")
    target_zeros = (q + isqrt(q * 2**w)) // 2
    top = 2**h + 1
    g, n = method2_claim(tbl, r)
    for sol in solve_dl_system(tbl, h, w, limit=max_a):
        tuples = sol.b_tuples()
        k = len(sol.b_basis)
        vecs = linalg.coefficient_vectors(k, 2)
        good = np.zeros(len(tuples), dtype=bool)
        funcs = {}
        for i, bt in enumerate(tuples):
            if i == 0 or not _independent(tbl, sol.a + bt):
                continue
            f = product_function(tbl, sol.a, bt)
            red = as_reduce(f)
            if red is None or red.pole_orders().get(q) != top:
                continue
            vals = form_values(f)
            if np.count_nonzero(vals == 0) != target_zeros:
                continue
            good[i] = True
            funcs[i] = f
        try:
            found = find_subspace(vecs[good], 2, r, budget=budget)
        except SearchExhausted:
            continue
        if found is None:
            continue
        pw = 2 ** np.arange(k)
        basis = [funcs[int(v @ pw)] for v in found]
        params = {"h": h, "w": w, "r": r, "a": list(sol.a),
                  "b": [list(tuples[int(v @ pw)]) for v in found]}
        return finish("II", params, basis, g, n, "quadric products with extremal zero count")
    raise NoSolution(f"no {r}-dimensional space found over GF({q})")
