"""Exact linear forms and symmetric blocks."""

import pytest
from hypothesis import given, strategies as st

from cwbound.linform import Block, LinearForm


def test_constructors():
    assert LinearForm.constant(5).const == 5
    assert LinearForm.variable(3).coeffs == {3: 1}
    assert LinearForm.variable(3, 0).is_zero()
    assert LinearForm().is_zero()


def test_add_term_cancels_to_absence():
    f = LinearForm.variable(2, 4)
    f.add_term(2, -4)
    assert f.is_zero()
    assert 2 not in f.coeffs


def test_add_and_scale():
    f = LinearForm(1, {0: 2}) + LinearForm(2, {0: -2, 1: 7})
    assert f == LinearForm(3, {1: 7})
    assert f.scale(3) == LinearForm(9, {1: 21})
    assert f.scale(0).is_zero()


def test_divide_exact():
    f = LinearForm(6, {0: 9, 4: -3})
    assert f.divide_exact(3) == LinearForm(2, {0: 3, 4: -1})
    with pytest.raises(ArithmeticError):
        LinearForm(5).divide_exact(2)
    with pytest.raises(ArithmeticError):
        LinearForm(0, {0: 5}).divide_exact(2)


def test_pin_and_remap():
    f = LinearForm(1, {0: 3, 1: 2})
    assert f.pin({0: 2}) == LinearForm(7, {1: 2})
    assert f.remap({0: 9, 1: 0}) == LinearForm(1, {9: 3, 0: 2})


def test_evaluate():
    f = LinearForm(2, {0: 3, 2: -1})
    assert f.evaluate([1, 99, 4]) == 2 + 3 - 4


def test_equality_and_hash():
    a = LinearForm(1, {0: 2})
    b = LinearForm(1, {0: 2})
    assert a == b and hash(a) == hash(b)
    assert a != LinearForm(1, {0: 3})
    assert a != 1


@given(st.data())
def test_evaluate_is_linear(data):
    coeffs = data.draw(
        st.dictionaries(st.integers(0, 5), st.integers(-20, 20), max_size=4)
    )
    c = data.draw(st.integers(-20, 20))
    k = data.draw(st.integers(-5, 5))
    y = [data.draw(st.integers(-9, 9)) for _ in range(6)]
    f = LinearForm(c, {i: v for i, v in coeffs.items() if v})
    assert f.scale(k).evaluate(y) == k * f.evaluate(y)
    g = LinearForm.variable(0, 1)
    assert (f + g).evaluate(y) == f.evaluate(y) + g.evaluate(y)


@given(st.integers(1, 40), st.integers(-30, 30), st.integers(-30, 30))
def test_divide_undoes_scale(k, c, a):
    f = LinearForm(c, {1: a} if a else {})
    assert f.scale(k).divide_exact(k) == f


def test_block_entry_dense_and_diag():
    y0 = LinearForm.variable(0)
    one = LinearForm.constant(1)
    dense = Block("empty", (), ("r", "c"), ((one, y0), (y0, one)))
    assert dense.size == 2
    assert dense.entry(0, 1) == y0
    assert dense.check_symmetric()
    diag = Block("nonneg", (), (0, 1), (y0, one), diag=True)
    assert diag.entry(0, 0) == y0
    assert diag.entry(0, 1).is_zero()
    assert diag.check_symmetric()
    assert dense.variables() == {0}
    assert diag.variables() == {0}


def test_block_asymmetry_detected():
    y0 = LinearForm.variable(0)
    y1 = LinearForm.variable(1)
    bad = Block("empty", (), ("r", "c"), ((y0, y0), (y1, y0)))
    assert not bad.check_symmetric()
