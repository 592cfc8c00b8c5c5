"""Artin-Schreier covers y^p - y = f(x) of P^1, their fibre products, and the
point/genus/zeta bookkeeping around them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import linalg
from .errors import (
    ArityMismatch,
    DependentBasis,
    NonIntegralResult,
    NotReduced,
    SizeLimitExceeded,
)
from .function import FunctionExpr, as_reduce, parse_curve, render_curve
from .gf import build_field, embedding

EXTENSION_LIMIT = 1 << 20
ROOT_TOLERANCE = 1e-6


def _exact_div(a: int, b: int, what: str) -> int:
    if a % b:
        raise NonIntegralResult(f"{what}: {a} is not divisible by {b}")
    return a // b


class ArtinSchreierCurve:
    """The complete nonsingular model of ``y^p - y = f`` for a reduced ``f``."""

    def __init__(self, f: FunctionExpr):
        r = as_reduce(f)
        if r is None:
            raise NotReduced(f"{f} is Artin-Schreier trivial")
        if r != f:
            raise NotReduced(f"{f} is not reduced; use ArtinSchreierCurve.reduced")
        self.f = f

    @classmethod
    def reduced(cls, f: FunctionExpr) -> "ArtinSchreierCurve":
        r = as_reduce(f)
        if r is None:
            raise NotReduced(f"{f} is Artin-Schreier trivial")
        return cls(r)

    @classmethod
    def parse(cls, text: str, tbl) -> "ArtinSchreierCurve":
        return cls.reduced(parse_curve(text, tbl))

    @property
    def q(self) -> int:
        return self.f.spec.q

    @property
    def p(self) -> int:
        return self.f.spec.p

    def __repr__(self) -> str:
        return f"ArtinSchreierCurve({render_curve(self.f)!r} over {self.f.spec})"


def _curve(c) -> ArtinSchreierCurve:
    return c if isinstance(c, ArtinSchreierCurve) else ArtinSchreierCurve(c)


def genus_of_function(f: FunctionExpr) -> int:
    """Genus of the cover for a reduced nonconstant ``f``."""
    p = f.spec.p
    total = sum(d + 1 for d in f.pole_orders().values())
    return (p - 1) * (total - 2) // 2


def _count_from_traces(tr: np.ndarray, regular: np.ndarray, p: int) -> int:
    return int(p * np.count_nonzero((tr == 0) & regular) + np.count_nonzero(~regular))


def count_function(f: FunctionExpr) -> int:
    """Rational points of the cover of a reduced ``f`` over its own field."""
    tr, regular = f.trace_values()
    return _count_from_traces(tr, regular, f.spec.p)


def genus(c) -> int:
    return genus_of_function(_curve(c).f)


def count_points(c) -> int:
    """``p * #{x regular with Tr f(x) = 0} + #poles``; infinity included."""
    return count_function(_curve(c).f)


def lift(f: FunctionExpr, r: int, limit: int = EXTENSION_LIMIT) -> FunctionExpr:
    """The same function over the degree-r extension of its field."""
    spec = f.spec
    if spec.q**r > limit:
        raise SizeLimitExceeded(f"GF({spec.q}^{r}) exceeds the limit {limit}")
    if r == 1:
        return f
    big = build_field(spec.p, spec.m * r, limit=limit)
    return f.map_field(big, embedding(f.tbl, big))


def count_extension(c, r: int, limit: int = EXTENSION_LIMIT) -> int:
    """#C(F_{q^r}), counted directly in the bigger field."""
    c = _curve(c)
    if r < 1:
        raise ValueError("extension degree must be positive")
    return count_function(lift(c.f, r, limit))


def power_sums_to_zeta(q: int, g: int, counts) -> list[int]:
    """P_1 coefficients from c(1..g) via Newton's identities and the
    functional equation, in exact integers."""
    if len(counts) < g:
        raise ValueError(f"need {g} counts, got {len(counts)}")
    s = [q**i + 1 - counts[i - 1] for i in range(1, g + 1)]
    b = [1]
    for k in range(1, g + 1):
        acc = -sum(s[i - 1] * b[k - i] for i in range(1, k + 1))
        b.append(_exact_div(acc, k, "Newton identity"))
    for i in range(g - 1, -1, -1):
        b.append(q ** (g - i) * b[i])
    return b


def zeta_numerator(c, limit: int = EXTENSION_LIMIT) -> list[int]:
    c = _curve(c)
    g = genus(c)
    counts = [count_extension(c, r, limit) for r in range(1, g + 1)]
    return power_sums_to_zeta(c.q, g, counts)


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    """Exact division of coefficient lists, highest degree first."""
    a = list(a)
    quo = []
    while len(a) >= len(b):
        c = a[0] / b[0]
        quo.append(c)
        for i, x in enumerate(b):
            a[i] -= c * x
        a.pop(0)
    while a and a[0] == 0:
        a.pop(0)
    return quo, a


def _poly_gcd(a: list, b: list) -> list:
    while b:
        a, b = b, _poly_divmod(a, b)[1]
    return [x / a[0] for x in a]


def squarefree_parts(coeffs) -> list[tuple[list, int]]:
    """Yun's decomposition over Q: ``(factor, multiplicity)`` pairs whose
    product is the monic version of ``coeffs`` (highest degree first)."""
    f = [Fraction(int(c)) for c in coeffs]
    deg = len(f) - 1
    df = [c * (deg - i) for i, c in enumerate(f[:-1])]
    a = _poly_gcd(f, df)
    b = _poly_divmod(f, a)[0]
    c = _poly_divmod(df, a)[0]
    out, k = [], 1
    while len(b) > 1:
        db = [x * (len(b) - 1 - i) for i, x in enumerate(b[:-1])]
        d = [x - y for x, y in zip(c, [Fraction(0)] * (len(c) - len(db)) + db)]
        while d and d[0] == 0:
            d.pop(0)
        a = _poly_gcd(b, d) if d else [x / b[0] for x in b]
        if len(a) > 1:
            out.append((a, k))
        b = _poly_divmod(b, a)[0]
        c = _poly_divmod(d, a)[0] if d else []
        k += 1
    return out


def reciprocal_roots(coeffs) -> np.ndarray:
    """Roots of t^(2g) P_1(1/t), i.e. the Frobenius eigenvalues.

    Repeated roots are split off exactly first, so each numeric root comes
    from a squarefree factor and keeps full precision.
    """
    if len(coeffs) == 1:
        return np.zeros(0, dtype=complex)
    roots = [np.roots(np.array([float(x) for x in fac])) for fac, k in squarefree_parts(coeffs) for _ in range(k)]
    return np.concatenate(roots).astype(complex)


def check_zeta(q: int, coeffs, tol: float = ROOT_TOLERANCE) -> bool:
    """Functional equation and |alpha| = sqrt(q) for every root."""
    g2 = len(coeffs) - 1
    if g2 % 2 or coeffs[0] != 1:
        return False
    g = g2 // 2
    if any(coeffs[g2 - i] != q ** (g - i) * coeffs[i] for i in range(g + 1)):
        return False
    roots = reciprocal_roots(coeffs)
    return bool(np.all(np.abs(np.abs(roots) - np.sqrt(q)) <= tol))


def counts_from_zeta(q: int, coeffs, n: int) -> list[int]:
    """c(1..n) predicted by a zeta numerator (inverse Newton identities)."""
    b = list(coeffs) + [0] * max(0, n + 1 - len(coeffs))
    s = []
    for k in range(1, n + 1):
        val = -k * b[k] - sum(s[i - 1] * b[k - i] for i in range(1, k))
        s.append(val)
    return [q**k + 1 - s[k - 1] for k in range(1, n + 1)]


@dataclass
class CurveReport:
    genus: int
    counts: list[int]
    trace_frobenius: int
    zeta_numerator: list[int] | None = None

    def as_dict(self) -> dict:
        return {
            "genus": self.genus,
            "counts": list(self.counts),
            "trace_frobenius": self.trace_frobenius,
            "zeta_numerator": self.zeta_numerator,
        }


def curve_report(c, extensions: int = 1, zeta: bool = False) -> CurveReport:
    c = _curve(c)
    counts = [count_points(c)] + [count_extension(c, r) for r in range(2, extensions + 1)]
    z = zeta_numerator(c) if zeta else None
    return CurveReport(genus(c), counts, c.q + 1 - counts[0], z)


# -- fibre products -----------------------------------------------------------


@dataclass(frozen=True)
class FibreProductSpec:
    """The fibre product over P^1 of the covers attached to ``basis``."""

    basis: tuple[FunctionExpr, ...]
    _check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        if not self.basis:
            raise ValueError("empty basis")
        if len({f.spec for f in self.basis}) != 1:
            raise ValueError("basis functions live over different fields")
        if self._check:
            _ = self.members

    @property
    def spec(self):
        return self.basis[0].spec

    @property
    def r(self) -> int:
        return len(self.basis)

    @property
    def p(self) -> int:
        return self.spec.p

    @property
    def q(self) -> int:
        return self.spec.q

    @cached_property
    def members(self) -> list[tuple[tuple[int, ...], FunctionExpr]]:
        """Reduced representative of every nonzero F_p-combination."""
        p = self.p
        out = []
        for lam in linalg.coefficient_vectors(self.r, p)[1:]:
            f = FunctionExpr.zero(self.basis[0].tbl)
            for c, b in zip(lam, self.basis):
                if c:
                    f = f + b.times_int(int(c))
            red = as_reduce(f)
            if red is None:
                raise DependentBasis(f"combination {tuple(int(x) for x in lam)} is trivial")
            out.append((tuple(int(x) for x in lam), red))
        return out

    @cached_property
    def _traces(self) -> tuple[np.ndarray, np.ndarray]:
        rows = [f.trace_values() for _, f in self.members]
        return np.array([t for t, _ in rows]), np.array([g for _, g in rows])

    def pole_set(self) -> frozenset[int]:
        out = set()
        for _, f in self.members:
            out |= f.pole_set()
        return frozenset(out)

    def member_counts(self) -> list[int]:
        tr, reg = self._traces
        return [_count_from_traces(t, g, self.p) for t, g in zip(tr, reg)]


def fibre_epsilon(spec: FibreProductSpec) -> np.ndarray:
    """dim of the subspace of members regular at each point of P^1."""
    _, reg = spec._traces
    size = reg.sum(axis=0) + 1
    eps = np.round(np.log(size) / np.log(spec.p)).astype(np.int64)
    if np.any(spec.p**eps != size):
        raise NonIntegralResult("regular members at a point do not form a subspace")
    return eps


def fibre_count(spec: FibreProductSpec) -> int:
    """Points of the fibre product: above each point Q there are p^eps(Q)
    rational points when every member regular at Q has trace 0 there, and
    none otherwise.  Away from the poles eps = r."""
    tr, reg = spec._traces
    eps = fibre_epsilon(spec)
    ok = np.all((tr == 0) | ~reg, axis=0)
    return int(np.sum(np.where(ok, spec.p**eps, 0)))


def fibre_trace(spec: FibreProductSpec) -> int:
    total = sum(spec.q + 1 - n for n in spec.member_counts())
    return _exact_div(total, spec.p - 1, "trace sum")


def fibre_genus(spec: FibreProductSpec) -> int:
    total = sum(genus_of_function(f) for _, f in spec.members)
    return _exact_div(total, spec.p - 1, "genus sum")


def fibre_report(spec: FibreProductSpec) -> dict:
    n = fibre_count(spec)
    tau = fibre_trace(spec)
    if spec.q + 1 - n != tau:
        raise NonIntegralResult(f"point count {n} disagrees with trace {tau}")
    return {"genus": fibre_genus(spec), "count": n, "trace_frobenius": tau}


# -- covers of a general base curve, formula level ------------------------------


def simple_pole_genus(g_base: int, poles: int, p: int) -> int:
    """Genus of y^p - y = f over a genus-g base when f has ``poles`` simple
    poles (counted over the algebraic closure)."""
    return g_base + (p - 1) * (g_base + poles - 1)


@dataclass
class CoverData:
    """One cover C_f -> C: its Frobenius trace plus either its genus or its
    number of simple poles."""

    trace: int
    genus: int | None = None
    simple_poles: int | None = None


def cover_compose(base, covers, r: int, p: int = 2) -> tuple[int, int, int]:
    """``(g_L, tau_L, N_L)`` for the fibre product of the covers.

    ``base`` is ``(g, n, tau)`` with ``n`` the number of rational points of the
    base curve, which fixes ``q = n + tau - 1``.  ``covers`` holds one
    CoverData (or ``(genus, trace)`` pair) per line of the r-dimensional
    function space.
    """
    g0, n0, tau0 = base
    q = n0 + tau0 - 1
    lines = (p**r - 1) // (p - 1)
    covers = list(covers)
    if len(covers) != lines:
        raise ArityMismatch(f"expected {lines} covers for r={r}, p={p}, got {len(covers)}")
    g_sum = tau_sum = 0
    for cv in covers:
        if not isinstance(cv, CoverData):
            cv = CoverData(trace=cv[1], genus=cv[0])
        gf = cv.genus
        if gf is None:
            if cv.simple_poles is None:
                raise ValueError("cover needs a genus or a simple pole count")
            gf = simple_pole_genus(g0, cv.simple_poles, p)
        g_sum += gf - g0
        tau_sum += cv.trace - tau0
    g_l = g0 + g_sum
    tau_l = tau0 + tau_sum
    return g_l, tau_l, q + 1 - tau_l
