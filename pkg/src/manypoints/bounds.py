"""Upper bounds for the number of rational points of a genus-g curve over F_q."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from math import isqrt

import numpy as np
from scipy.optimize import linprog

from .errors import InvalidTestFunction, NotPrimePower, NotSquare
from .gf import prime_power

POSITIVITY_SAMPLES = 10**5
ROUNDING_SLACK = 1e-9  # floor(x + slack): errs on the side of a larger upper bound


def _check(q: int, g: int):
    try:
        prime_power(q)
    except Exception as exc:
        raise NotPrimePower(f"{q} is not a prime power") from exc
    if g < 0:
        raise ValueError("genus must be nonnegative")


def _square_root(q: int) -> int | None:
    s = isqrt(q)
    return s if s * s == q else None


def hasse_weil(q: int, g: int) -> int:
    """q + 1 + floor(2 g sqrt(q))."""
    _check(q, g)
    return q + 1 + isqrt(4 * g * g * q)


def serre_bound(q: int, g: int) -> int:
    """q + 1 + g floor(2 sqrt(q))."""
    _check(q, g)
    return q + 1 + g * isqrt(4 * q)


def ihara_bound(q: int, g: int) -> int:
    """q + 1 + floor((sqrt((8q+1) g^2 + 4 (q^2 - q) g) - g) / 2)."""
    _check(q, g)
    s = isqrt((8 * q + 1) * g * g + 4 * (q * q - q) * g)
    # floor((sqrt(D) - g)/2) = floor((isqrt(D) - g)/2) since the floor of a
    # real divided by 2 only depends on its integer part
    return q + 1 + (s - g) // 2


def ft_maximal_admissible(q: int, g: int) -> bool:
    """Whether a maximal curve of genus g over F_q (q square) can exist."""
    s = _square_root(q)
    if s is None:
        raise NotSquare(f"{q} is not a square")
    return 4 * g <= (s - 1) ** 2 or 2 * g == q - s


# -- explicit formulae -------------------------------------------------------------


@dataclass(frozen=True)
class ExplicitFormulaParams:
    u: tuple

    def __init__(self, u):
        object.__setattr__(self, "u", tuple(Fraction(x) if not isinstance(x, float) else x for x in u))

    def f(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        n = np.arange(1, len(self.u) + 1)
        return 1 + 2 * np.cos(np.multiply.outer(theta, n)) @ np.array([float(x) for x in self.u])

    def psi(self, t: float) -> float:
        return sum(float(x) * t**n for n, x in enumerate(self.u, start=1))

    def min_value(self) -> float:
        """Minimum of f over [0, pi]: exact for up to two terms, otherwise
        sampled on a dense grid (a heuristic check)."""
        u = [float(x) for x in self.u]
        if len(u) == 1:
            return 1 - 2 * abs(u[0])
        if len(u) == 2:
            # f = 1 + 2 u1 c + 2 u2 (2c^2 - 1) for c = cos(theta) in [-1, 1]
            cands = [-1.0, 1.0]
            if u[1]:
                c0 = -u[0] / (4 * u[1])
                if -1 < c0 < 1:
                    cands.append(c0)
            return min(1 + 2 * u[0] * c + 2 * u[1] * (2 * c * c - 1) for c in cands)
        theta = np.linspace(0, np.pi, POSITIVITY_SAMPLES)
        return float(self.f(theta).min())

    def validate(self):
        if not self.u or not any(self.u):
            raise InvalidTestFunction("psi_1 vanishes identically")
        if any(x < 0 for x in self.u):
            raise InvalidTestFunction("coefficients must be nonnegative")
        lo = self.min_value()
        if lo < 0:
            raise InvalidTestFunction(f"f takes the negative value {lo:.3g}")


def explicit_formula_value(q: int, g: int, params: ExplicitFormulaParams) -> float:
    """a_f g + b_f with a_f = 1/psi(1/sqrt q), b_f = 1 + psi(sqrt q)/psi(1/sqrt q)."""
    r = q**0.5
    lo = params.psi(1 / r)
    return (g + params.psi(r)) / lo + 1


def explicit_formula_bound(q: int, g: int, params: ExplicitFormulaParams) -> int:
    _check(q, g)
    params.validate()
    return int(np.floor(explicit_formula_value(q, g, params) + ROUNDING_SLACK))


def search_explicit_formula(q: int, g: int, k: int = 10, grid: int = 2000) -> tuple[int, ExplicitFormulaParams]:
    """A good test function with k coefficients, found by linear programming.

    Minimising (g + psi(sqrt q)) / psi(1/sqrt q) is a linear-fractional
    problem; with v = s u and psi(1/sqrt q) scaled to 1 it becomes
    min s g + sum v_n q^(n/2) subject to s + 2 sum v_n cos(n theta) >= 0 on a
    grid.  The result is shrunk until f is nonnegative on a finer grid.  This
    is an upper bound, not necessarily the optimal one.
    """
    _check(q, g)
    n = np.arange(1, k + 1)
    r = q**0.5
    theta = np.linspace(0, np.pi, grid)
    # variables (s, v_1..v_k)
    c = np.concatenate([[g], r**n])
    A_ub = -np.hstack([np.ones((grid, 1)), 2 * np.cos(np.outer(theta, n))])
    b_ub = np.zeros(grid)
    A_eq = np.concatenate([[0.0], r ** (-n)])[None, :]
    res = linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=[1.0], bounds=[(0, None)] * (k + 1), method="highs")
    if not res.success or res.x[0] <= 0:
        u = [0.5]
    else:
        u = list(res.x[1:] / res.x[0])
    params = ExplicitFormulaParams([max(0.0, x) for x in u])
    lo = params.min_value()
    if lo < 0:
        # f -> (f - 2 lo) / (1 - 2 lo) keeps a strictly positive margin
        params = ExplicitFormulaParams([x / (1 - 2 * lo) for x in params.u])
    if params.min_value() < 0:
        params = ExplicitFormulaParams([0.5])
    return explicit_formula_bound(q, g, params), params


# -- aggregate -------------------------------------------------------------------------


@dataclass
class BoundSet:
    q: int
    g: int
    hasse_weil: int
    serre: int
    ihara: int
    combined: int
    explicit_formula: int | None = None
    ft_admissible_maximal: bool | None = None
    shaved: bool = False

    @property
    def best(self) -> int:
        if self.explicit_formula is None:
            return self.combined
        return min(self.combined, self.explicit_formula)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["best"] = self.best
        return d


def best_upper(q: int, g: int, explicit: ExplicitFormulaParams | None = None, search: bool = False) -> BoundSet:
    """All bounds at (q, g).  ``combined`` is min(Serre, Ihara), lowered by
    one when it equals the maximal count and no maximal curve of genus g can
    exist."""
    hw, se, ih = hasse_weil(q, g), serre_bound(q, g), ihara_bound(q, g)
    combined = min(se, ih)
    admissible, shaved = None, False
    s = _square_root(q)
    if s is not None:
        admissible = ft_maximal_admissible(q, g)
        if g > 0 and combined == q + 1 + 2 * g * s and not admissible:
            combined -= 1
            shaved = True
    ef = None
    if explicit is not None:
        ef = explicit_formula_bound(q, g, explicit)
    elif search:
        ef = search_explicit_formula(q, g)[0]
    return BoundSet(q, g, hw, se, ih, combined, ef, admissible, shaved)
