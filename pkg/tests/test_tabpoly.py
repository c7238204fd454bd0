"""Operator-formula tableau polynomials against the literal expansion."""

import pytest
from hypothesis import given, settings, strategies as st

from cwbound.combinatorics import partitions, semistandard_tableaux
from cwbound.polyalg import Poly, var_index
from cwbound.tabpoly import (
    corner_det_product,
    direct_expansion,
    factorial_rescale,
    tab_poly,
)


def mono(m, pairs):
    exps = [0] * (m * m)
    for i, j in pairs:
        exps[var_index(m, i, j)] += 1
    return tuple(exps)


def test_single_row_same_tableau():
    # shape (2), tau = sigma = [1,2]
    p = direct_expansion((2,), ((1, 2),), ((1, 2),), 2)
    expect = Poly(2, {mono(2, [(1, 1), (2, 2)]): 2, mono(2, [(1, 2), (2, 1)]): 2})
    assert p == expect
    assert tab_poly((2,), ((1, 2),), ((1, 2),), 2) == expect


def test_single_column_same_tableau():
    p = direct_expansion((1, 1), ((1,), (2,)), ((1,), (2,)), 2)
    expect = Poly(2, {mono(2, [(1, 1), (2, 2)]): 2, mono(2, [(1, 2), (2, 1)]): -2})
    assert p == expect
    # operator route drops the column factorials: here a factor 2
    assert factorial_rescale((1, 1), 2) == 2
    assert tab_poly((1, 1), ((1,), (2,)), ((1,), (2,)), 2).scale(2) == expect


def test_highest_weight_gives_determinant_product():
    for m in (2, 3):
        for n in range(1, 5):
            for shape in partitions(n, m):
                hw = tuple(tuple(r + 1 for _ in range(part)) for r, part in enumerate(shape))
                assert tab_poly(shape, hw, hw, m) == corner_det_product(shape, m)


def test_single_cell_cross_terms():
    assert tab_poly((1,), ((1,),), ((2,),), 2) == Poly.variable(2, 1, 2)
    assert tab_poly((1,), ((2,),), ((1,),), 2) == Poly.variable(2, 2, 1)


def test_transpose_symmetry_small():
    for n in range(1, 5):
        for shape in partitions(n, 2):
            tabs = semistandard_tableaux(shape, 2)
            for tau in tabs:
                for sigma in tabs:
                    assert tab_poly(shape, tau, sigma, 2) == tab_poly(
                        shape, sigma, tau, 2
                    ).transpose()


def _sweep(n, m):
    bad = []
    for shape in partitions(n, m):
        scale = factorial_rescale(shape, m)
        tabs = semistandard_tableaux(shape, m)
        for tau in tabs:
            for sigma in tabs:
                got = tab_poly(shape, tau, sigma, m).scale(scale)
                want = direct_expansion(shape, tau, sigma, m)
                if got != want:
                    bad.append((shape, tau, sigma))
    return bad


@pytest.mark.parametrize("n,m", [(1, 2), (2, 2), (3, 2), (4, 2), (1, 3), (2, 3), (3, 3), (4, 3)])
def test_operator_equals_direct(n, m):
    assert _sweep(n, m) == []


def test_mixed_shape_spot_check():
    # shape (2,1), tau with a 2 in row one
    shape = (2, 1)
    tau = ((1, 2), (2,))
    sigma = ((1, 1), (2,))
    got = tab_poly(shape, tau, sigma, 2).scale(factorial_rescale(shape, 2))
    want = direct_expansion(shape, tau, sigma, 2)
    assert got == want
    assert not got.is_zero()


def test_empty_shape():
    assert tab_poly((), (), (), 2) == Poly.one(2)
    assert direct_expansion((), (), (), 2) == Poly.one(2)


def test_integrality_of_divided_powers():
    # division by row-count factorials must always be exact; probe the
    # largest two-symbol shapes used at small scale
    for shape in partitions(6, 2):
        for tau in semistandard_tableaux(shape, 2):
            for sigma in semistandard_tableaux(shape, 2):
                p = tab_poly(shape, tau, sigma, 2)
                assert all(isinstance(c, int) for c in p.terms.values())
