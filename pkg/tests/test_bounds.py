import numpy as np
import pytest

from manypoints.bounds import (
    ExplicitFormulaParams,
    best_upper,
    explicit_formula_bound,
    ft_maximal_admissible,
    hasse_weil,
    ihara_bound,
    search_explicit_formula,
    serre_bound,
)
from manypoints.errors import InvalidTestFunction, NotPrimePower, NotSquare
from manypoints.gf import prime_power


def test_small_values():
    assert best_upper(16, 1).combined == 25
    assert (hasse_weil(8, 2), serre_bound(8, 2)) == (20, 19)
    assert ihara_bound(4, 6) == 21
    assert best_upper(8, 3).combined == 24
    assert best_upper(2, 1).combined == 5


def test_maximal_shave():
    b = best_upper(16, 4)
    assert min(b.serre, b.ihara) == 49
    assert b.shaved and b.combined == 48
    assert not best_upper(16, 6).shaved


def test_maximal_admissibility():
    assert ft_maximal_admissible(16, 6)
    assert ft_maximal_admissible(16, 2)
    assert not ft_maximal_admissible(16, 4)
    with pytest.raises(NotSquare):
        ft_maximal_admissible(8, 1)


def _prime_powers(limit):
    out = []
    for q in range(2, limit):
        try:
            prime_power(q)
            out.append(q)
        except Exception:
            pass
    return out


def test_integer_formulas_match_extended_precision():
    rng = np.random.default_rng(7)
    qs = _prime_powers(1024)
    for _ in range(10_000):
        q, g = int(rng.choice(qs)), int(rng.integers(0, 200))
        sq = np.sqrt(np.longdouble(q))
        assert hasse_weil(q, g) == q + 1 + int(np.floor(2 * g * sq))
        assert serre_bound(q, g) == q + 1 + g * int(np.floor(2 * sq))
        D = np.longdouble((8 * q + 1) * g * g + 4 * (q * q - q) * g)
        assert ihara_bound(q, g) == q + 1 + int(np.floor((np.sqrt(D) - g) / 2))


def test_weil_test_function_reproduces_hasse_weil_form():
    # u = [1/2]: f = 1 + cos(theta), giving N <= q + 1 + 2 g sqrt(q) via
    # a_f = 2 sqrt(q), b_f = q + 1
    params = ExplicitFormulaParams([0.5])
    qs = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]
    for q in qs:
        for g in range(10):
            want = q + 1 + int(np.floor(2 * g * np.sqrt(q) + 1e-9))
            assert explicit_formula_bound(q, g, params) == want


def test_invalid_test_functions():
    for u in ([], [0, 0], [-0.1], [0.9]):
        with pytest.raises(InvalidTestFunction):
            explicit_formula_bound(4, 3, ExplicitFormulaParams(u))


def test_explicit_search():
    b, params = search_explicit_formula(4, 6)
    assert b <= 21
    params.validate()
    assert search_explicit_formula(2, 39)[0] == 33
    bs = best_upper(2, 39, search=True)
    assert bs.ihara == 64 and bs.best == 33


def test_errors():
    with pytest.raises(NotPrimePower):
        serre_bound(6, 1)
    with pytest.raises(ValueError):
        hasse_weil(4, -1)
