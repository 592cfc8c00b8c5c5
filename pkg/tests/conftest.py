import numpy as np
import pytest

from manypoints.function import FunctionExpr, as_reduce


def random_function(tbl, rng, max_deg=7, max_poles=2, max_order=3):
    """A random function with a nontrivial reduced form."""
    while True:
        poly = {int(k): int(rng.integers(0, tbl.q)) for k in rng.integers(0, max_deg + 1, size=3)}
        poles = {}
        for a in rng.choice(tbl.q, size=int(rng.integers(0, max_poles + 1)), replace=False):
            poles[int(a)] = {int(k): int(rng.integers(1, tbl.q)) for k in rng.integers(1, max_order + 1, size=2)}
        f = FunctionExpr.build(tbl, poly, poles)
        if as_reduce(f) is not None:
            return f


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
