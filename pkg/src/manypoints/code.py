"""Trace codes over F_p built from function spaces on P^1, their weights and
generalized Hamming weights, and the word <-> curve dictionary."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .curve import count_function
from .errors import BudgetExceeded, DefinitionMismatch, RelationViolated
from .function import FunctionExpr, as_reduce
from .gf import FieldTable

DEFAULT_BUDGET = 10**8


class TraceCode:
    """Words ``(Tr f(x))_{x in coords}`` for f in the F_p-span of ``gens``.

    ``gens`` may be F_p-dependent as words (the evaluation map can have a
    kernel); ``basis_idx`` picks generators whose words form a basis, and
    ``G`` is the matching generator matrix.
    """

    def __init__(self, tbl: FieldTable, gens, coords, name: str = "custom"):
        self.tbl = tbl
        self.p = tbl.p
        self.name = name
        self.gens = list(gens)
        self.coords = np.asarray(coords, dtype=np.int64)
        rows = [f.trace_values()[0][self.coords] for f in self.gens]
        self.full = np.array(rows, dtype=np.int64).reshape(len(self.gens), len(self.coords))
        self.basis_idx = self._independent_rows()
        self.G = self.full[self.basis_idx]

    def _independent_rows(self) -> list[int]:
        picked: list[int] = []
        for i in range(len(self.gens)):
            if linalg.rank(self.full[picked + [i]], self.p) == len(picked) + 1:
                picked.append(i)
        return picked

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def dim(self) -> int:
        return len(self.basis_idx)

    @property
    def basis_functions(self) -> list[FunctionExpr]:
        return [self.gens[i] for i in self.basis_idx]

    def function(self, coeffs) -> FunctionExpr:
        """The function behind the word ``coeffs @ G``."""
        f = FunctionExpr.zero(self.tbl)
        for c, g in zip(coeffs, self.basis_functions):
            if int(c) % self.p:
                f = f + g.times_int(int(c))
        return f

    def word(self, coeffs) -> np.ndarray:
        return np.asarray(coeffs, dtype=np.int64) @ self.G % self.p

    def words(self, batch: int = 1 << 14):
        """Yield ``(coeffs, words)`` chunks over the whole code."""
        total = self.p**self.dim
        pw = self.p ** np.arange(self.dim, dtype=np.int64)
        for start in range(0, total, batch):
            idx = np.arange(start, min(total, start + batch), dtype=np.int64)
            coeffs = (idx[:, None] // pw[None, :]) % self.p
            yield coeffs, coeffs @ self.G % self.p

    def weight_distribution(self) -> np.ndarray:
        A = np.zeros(self.n + 1, dtype=np.int64)
        for _, w in self.words():
            A += np.bincount(np.count_nonzero(w, axis=1), minlength=self.n + 1)
        return A

    def __repr__(self) -> str:
        return f"TraceCode({self.name}, GF({self.tbl.q}), n={self.n}, k={self.dim})"


def additive_generators(tbl: FieldTable, h: int) -> list[tuple[int, int]]:
    """F_p-basis of R_h as ``(i, a)`` meaning ``a * x^(p^i)``."""
    return [(i, int(tbl.powers[j])) for i in range(h + 1) for j in range(tbl.m)]


def xr_function(tbl: FieldTable, R: dict[int, int]) -> FunctionExpr:
    """``x * R(x)`` for the additive polynomial ``R = sum a_i x^(p^i)``."""
    poly: dict[int, int] = {}
    for i, a in R.items():
        k = tbl.p**i + 1
        poly[k] = tbl.add(poly.get(k, 0), a)
    return FunctionExpr.build(tbl, poly)


def build_Ch(tbl: FieldTable, h: int, punctured: bool = False) -> TraceCode:
    if not 0 <= h <= tbl.m:
        raise ValueError(f"h must lie in [0, {tbl.m}]")
    gens = [xr_function(tbl, {i: a}) for i, a in additive_generators(tbl, h)]
    coords = np.arange(1 if punctured else 0, tbl.q)
    return TraceCode(tbl, gens, coords, name=f"C_{h}" + ("*" if punctured else ""))


def build_melas_dual(tbl: FieldTable) -> TraceCode:
    if tbl.q < 4:
        raise ValueError("need q >= 4")
    basis = [int(b) for b in tbl.powers]
    gens = [FunctionExpr.build(tbl, {1: a}) for a in basis]
    gens += [FunctionExpr.build(tbl, poles={0: {1: b}}) for b in basis]
    return TraceCode(tbl, gens, np.arange(1, tbl.q), name="MelasDual")


def melas_function(tbl: FieldTable, a: int, b: int) -> FunctionExpr:
    return FunctionExpr.build(tbl, {1: a}, {0: {1: b}} if b else None)


# -- subcodes ------------------------------------------------------------------


@dataclass
class Subcode:
    """An r-dimensional subcode given by coefficient rows over the code basis."""

    code: TraceCode
    coeffs: np.ndarray
    words: np.ndarray = field(init=False)

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=np.int64) % self.code.p
        if self.coeffs.ndim == 1:
            self.coeffs = self.coeffs[None, :]
        self.words = self.coeffs @ self.code.G % self.code.p
        if not linalg.independent(self.words, self.code.p):
            raise ValueError("subcode words are dependent")

    @property
    def r(self) -> int:
        return self.coeffs.shape[0]

    def functions(self) -> list[FunctionExpr]:
        return [self.code.function(c) for c in self.coeffs]

    def all_words(self) -> np.ndarray:
        return linalg.span(self.words, self.code.p)


def support_weight(words: np.ndarray) -> int:
    return int(np.count_nonzero(np.any(np.asarray(words) != 0, axis=0)))


def subcode_weight(D: Subcode) -> int:
    """Support size of D, checked against the averaged-weight formula."""
    p, r = D.code.p, D.r
    total = int(np.count_nonzero(D.all_words()))
    denom = p**r - p ** (r - 1)
    support = support_weight(D.words)
    if total % denom or total // denom != support:
        raise DefinitionMismatch(f"averaged weight {total}/{denom} != support {support}")
    return support


@dataclass
class GHWResult:
    r: int
    weight: int
    witness: Subcode
    exact: bool
    examined: int
    seed: int | None = None

    def as_dict(self) -> dict:
        return {
            "r": self.r,
            "weight": self.weight,
            "exact": self.exact,
            "examined": self.examined,
            "seed": self.seed,
            "witness": [str(f) for f in self.witness.functions()],
        }


def _weights_of(batch: np.ndarray, G: np.ndarray, p: int) -> np.ndarray:
    words = np.einsum("brk,kn->brn", batch, G) % p
    return np.count_nonzero(np.any(words != 0, axis=1), axis=1)


def generalized_hamming_weight(
    code: TraceCode,
    r: int,
    strategy: str = "exhaustive",
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    samples: int = 20000,
) -> GHWResult:
    """d_r with a witness.  ``exhaustive`` visits every r-dimensional subspace
    once via reduced echelon forms; ``randomized`` samples ``samples`` random
    subspaces and returns the best (an upper bound on d_r)."""
    k, p = code.dim, code.p
    if not 1 <= r <= k:
        raise ValueError(f"r must lie in [1, {k}]")
    if strategy == "exhaustive":
        count = linalg.gaussian_binomial(k, r, p)
        if count > budget:
            raise BudgetExceeded(f"{count} subspaces exceed the budget {budget}")
        best, witness = None, None
        for batch in linalg.iter_rref(k, r, p, batch=max(1, (1 << 22) // max(1, r * code.n))):
            w = _weights_of(batch, code.G, p)
            i = int(np.argmin(w))
            if best is None or w[i] < best:
                best, witness = int(w[i]), batch[i]
        return GHWResult(r, best, Subcode(code, witness), True, count)
    if strategy == "randomized":
        rng = np.random.default_rng(seed)
        best, witness, seen = None, None, 0
        while seen < samples:
            m = rng.integers(0, p, size=(min(4096, samples - seen), r, k))
            seen += m.shape[0]
            w = _weights_of(m, code.G, p)
            # rank-deficient samples have too-small support; drop them
            for i in np.argsort(w, kind="stable"):
                if best is not None and w[i] >= best:
                    break
                if linalg.rank(m[i], p) == r:
                    best, witness = int(w[i]), linalg.row_basis(m[i], p)
                    break
        if witness is None:
            raise BudgetExceeded("no full-rank sample drawn")
        return GHWResult(r, best, Subcode(code, witness), False, seen, seed)
    raise ValueError(f"unknown strategy {strategy!r}")


def weight_hierarchy(code: TraceCode, budget: int = DEFAULT_BUDGET) -> list[int]:
    return [generalized_hamming_weight(code, r, budget=budget).weight for r in range(1, code.dim + 1)]


# -- words and curves -----------------------------------------------------------


def word_curve_check(code: TraceCode, coeffs) -> dict:
    """Compare a word's weight with the point count of its curve.

    Over the coordinate set a zero entry lifts to p points and a nonzero one
    to none; points of P^1 outside the coordinates add p (regular, trace 0),
    1 (pole) or 0.  For C_h this is ``w = q - (N-1)/p`` and for Melas words
    with a, b != 0 it is ``w = q - 1 - (N-2)/p``.
    """
    f = code.function(coeffs)
    w = int(np.count_nonzero(code.word(coeffs)))
    red = as_reduce(f)
    if red is None:
        raise RelationViolated(f"{f} gives no curve")
    N = count_function(red)
    tr, regular = red.trace_values()
    outside = np.ones(code.tbl.q + 1, dtype=bool)
    outside[code.coords] = False
    extra = int(np.count_nonzero(outside & ~regular) + code.p * np.count_nonzero(outside & regular & (tr == 0)))
    if (N - extra) % code.p:
        raise RelationViolated(f"N - {extra} = {N - extra} not divisible by p")
    predicted = code.n - (N - extra) // code.p
    if predicted != w:
        raise RelationViolated(f"weight {w} but curve predicts {predicted} (N={N})")
    return {"function": str(f), "weight": w, "points": N, "outside": extra, "predicted_weight": predicted}


def kernel_of_phi(tbl: FieldTable, h: int) -> list[dict[int, int]]:
    """Basis of additive polynomials R in R_h with Tr(x R(x)) = 0 on F_q,
    each returned as ``{i: a_i}`` for ``R = sum a_i x^(p^i)``."""
    gens = additive_generators(tbl, h)
    G = np.array([xr_function(tbl, {i: a}).trace_values()[0][: tbl.q] for i, a in gens])
    null = linalg.nullspace(G.T, tbl.p)
    out = []
    for vec in null:
        R: dict[int, int] = {}
        for c, (i, a) in zip(vec, gens):
            if c:
                R[i] = tbl.add(R.get(i, 0), tbl.scale(int(c), a))
        out.append({i: a for i, a in R.items() if a})
    return out
