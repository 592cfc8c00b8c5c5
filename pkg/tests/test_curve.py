import numpy as np
import pytest

from manypoints.curve import (
    ArtinSchreierCurve,
    CoverData,
    FibreProductSpec,
    check_zeta,
    count_extension,
    count_points,
    counts_from_zeta,
    cover_compose,
    fibre_count,
    fibre_genus,
    fibre_report,
    fibre_trace,
    genus,
    reciprocal_roots,
    squarefree_parts,
    zeta_numerator,
)
from manypoints.errors import ArityMismatch, DependentBasis, NotReduced
from manypoints.function import FunctionExpr, as_reduce, parse_function
from manypoints.gf import build_field

from conftest import random_function
from oracles import NaiveField, affine_points, curve_points, naive_genus

FIELDS = [(2, 3), (2, 4), (3, 2), (3, 3), (5, 1), (2, 5)]


def naive(tbl):
    return NaiveField(tbl.p, tbl.m, tbl.spec.modulus)


@pytest.mark.parametrize("pm", FIELDS)
def test_count_and_genus_match_enumeration(pm, rng):
    tbl = build_field(*pm)
    F = naive(tbl)
    for _ in range(12):
        c = ArtinSchreierCurve.reduced(random_function(tbl, rng))
        assert count_points(c) == curve_points(F, c.f)
        assert genus(c) == naive_genus(tbl.p, c.f)


def test_known_curves():
    f8 = build_field(2, 3)
    c = ArtinSchreierCurve.parse("y^2 - y = x^5", f8)
    assert (genus(c), count_points(c)) == (2, 9)
    # Hermitian curve over F_4: maximal of genus 1
    f4 = build_field(2, 2)
    h = ArtinSchreierCurve.parse("y^2 + y = x^3", f4)
    assert (genus(h), count_points(h)) == (1, 9)


def test_unreduced_curve_rejected():
    tbl = build_field(2, 3)
    with pytest.raises(NotReduced):
        ArtinSchreierCurve(parse_function("x^6 + x^5", tbl))
    with pytest.raises(NotReduced):
        ArtinSchreierCurve.reduced(parse_function("x^2 + x", tbl))


@pytest.mark.parametrize("pm", [(2, 2), (2, 3), (3, 1), (3, 2)])
def test_zeta(pm, rng):
    tbl = build_field(*pm)
    for _ in range(3):
        c = ArtinSchreierCurve.reduced(random_function(tbl, rng, max_deg=5, max_poles=1, max_order=2))
        g = genus(c)
        if g > 4:
            continue
        P = zeta_numerator(c)
        assert len(P) == 2 * g + 1
        assert check_zeta(tbl.q, P)
        pred = counts_from_zeta(tbl.q, P, g + 1)
        assert pred[g] == count_extension(c, g + 1)


def _random_spec(tbl, rng, r):
    while True:
        basis = [random_function(tbl, rng, max_deg=6, max_poles=1, max_order=2) for _ in range(r)]
        try:
            return FibreProductSpec(tuple(basis))
        except DependentBasis:
            continue


@pytest.mark.parametrize("pm", [(2, 3), (2, 4), (3, 2), (3, 3)])
def test_fibre_count_against_enumeration(pm, rng):
    tbl = build_field(*pm)
    F = naive(tbl)
    for r in (1, 2, 3):
        spec = _random_spec(tbl, rng, r)
        # trace identity, with each member counted by the oracle
        taus = [tbl.q + 1 - curve_points(F, f) for _, f in spec.members]
        assert sum(taus) % (tbl.p - 1) == 0
        assert fibre_count(spec) == tbl.q + 1 - sum(taus) // (tbl.p - 1)
        assert fibre_trace(spec) == sum(taus) // (tbl.p - 1)
        assert fibre_genus(spec) >= 0
        fibre_report(spec)


def test_polynomial_fibre_product_affine_count(rng):
    # no finite poles: affine points by enumeration plus one point at infinity
    tbl = build_field(2, 4)
    F = naive(tbl)
    for _ in range(5):
        basis = [as_reduce(FunctionExpr.build(tbl, {k: int(rng.integers(1, tbl.q))})) for k in (3, 5, 9)]
        spec = FibreProductSpec(tuple(basis))
        assert fibre_count(spec) == affine_points(F, basis) + 1


def test_dependent_basis():
    tbl = build_field(2, 3)
    f = parse_function("x^3", tbl)
    with pytest.raises(DependentBasis):
        FibreProductSpec((f, f))


@pytest.mark.parametrize("n", range(5, 11))
def test_cover_compose_elliptic_base(n):
    # E/F_2 with 5 points; every f in L(Q_n - sum P_i) has n simple poles and
    # vanishes at the P_i, so each cover has 10 points
    r = n - 5
    covers = [CoverData(trace=3 - 10, simple_poles=n)] * (2**r - 1)
    g, tau, N = cover_compose((1, 5, -2), covers, r)
    assert (g, N) == (1 + (2 ** (n - 5) - 1) * n, 5 * 2 ** (n - 5))
    assert tau == 3 - N


def test_cover_compose_genus2_base():
    covers = [CoverData(trace=3 - 12, simple_poles=7)] * 3
    assert cover_compose((2, 6, -3), covers, 2) == (26, -21, 24)


def test_cover_compose_arity():
    with pytest.raises(ArityMismatch):
        cover_compose((1, 5, -2), [(2, -7)] * 2, 2)


@pytest.mark.parametrize("P", [[1, -6, -9, 108, -81, -486, 729], [1, 0, 9], [1, 6, 27, 54, 81], [1, 2, 2]])
def test_squarefree_parts_reassemble(P):
    prod = np.array([1.0])
    for fac, k in squarefree_parts(P):
        for _ in range(k):
            prod = np.polymul(prod, [float(x) for x in fac])
    assert np.allclose(prod, np.array(P, dtype=float) / P[0])
    assert len(reciprocal_roots(P)) == len(P) - 1
