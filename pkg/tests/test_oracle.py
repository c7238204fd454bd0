"""Brute-force reference side: clique search, explicit matrices,
equivalence harness."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import cwbound.oracle as oracle
from cwbound.linform import LinearForm
from cwbound.oracle import (
    CompatGraph,
    explicit_matrix,
    greedy_code,
    is_valid_code,
    max_code,
    pair_rep,
    reduction_equivalence_test,
    weight_words,
    words_from_key,
)
from cwbound.orbits import key_of_words, registry


def test_weight_words():
    assert weight_words(4, 2) == (0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100)
    assert len(weight_words(8, 3)) == math.comb(8, 3)


def test_is_valid_code():
    assert is_valid_code(6, 4, 3, (0b000111, 0b111000))
    assert not is_valid_code(6, 4, 3, (0b000111, 0b001011))
    assert not is_valid_code(6, 4, 3, (0b000111, 0b000111))
    assert not is_valid_code(6, 4, 3, (0b001111,))
    assert not is_valid_code(3, 2, 1, (0b1000,))


def test_compat_graph_degrees():
    g = CompatGraph(6, 4, 3)
    # each weight-3 word of length 6 conflicts with the 9 words at distance 2
    assert all(row.bit_count() == 10 for row in g.adj)


def test_max_code_trivial_families():
    for n in range(4, 13):
        for w in range(1, min(5, n)):
            assert max_code(n, 2, w).size == math.comb(n, w)
    for n in range(4, 13):
        for w in range(1, min(5, n // 2 + 1)):
            res = max_code(n, 2 * w, w)
            assert res.size == n // w, (n, w)
            assert res.exact
    assert max_code(9, 7, 3).size == 1
    assert max_code(9, 7, 3).code == ((1 << 3) - 1,)


def test_max_code_known_values():
    res = max_code(6, 4, 3)
    assert (res.size, res.exact) == (4, True)
    assert is_valid_code(6, 4, 3, res.code)
    res = max_code(8, 4, 4)
    assert (res.size, res.exact) == (14, True)
    res = max_code(9, 4, 3)
    assert (res.size, res.exact) == (12, True)


def test_max_code_rejects_degenerate_weight():
    with pytest.raises(ValueError):
        max_code(6, 4, 0)
    with pytest.raises(ValueError):
        max_code(6, 4, 6)


def test_vertex_guard_falls_back_to_greedy(monkeypatch):
    monkeypatch.setattr(oracle, "VERTEX_GUARD", 100)
    res = max_code(10, 4, 5)
    assert not res.exact
    assert is_valid_code(10, 4, 5, res.code)
    assert res.size >= 15


def test_time_cap_yields_lower_bound():
    res = max_code(10, 4, 4, time_cap=0.3)
    assert is_valid_code(10, 4, 4, res.code)
    assert res.size <= 30
    if res.exact:
        assert res.size == 30


def test_greedy_code_is_valid_and_seed_stable():
    for seed in range(5):
        code = greedy_code(10, 4, 3, seed=seed)
        assert is_valid_code(10, 4, 3, code)
        assert code == greedy_code(10, 4, 3, seed=seed)
        assert len(code) >= 8


def test_pair_rep():
    for n, w, t in [(6, 3, 2), (8, 4, 4), (10, 5, 1)]:
        a, b = pair_rep(n, w, t)
        assert a.bit_count() == w and b.bit_count() == w
        assert (a ^ b).bit_count() == 2 * t


def test_words_from_key_round_trip_fixture():
    reg = registry(8, 4, 3, 4)
    for key in reg.keys:
        words = words_from_key(key)
        assert key_of_words(8, words) == key


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_words_from_key_round_trip_random(data):
    n = data.draw(st.integers(3, 8))
    w = data.draw(st.integers(1, n - 1))
    k = data.draw(st.integers(1, 4))
    pool = weight_words(n, w)
    words = tuple(sorted(data.draw(
        st.sets(st.sampled_from(pool), min_size=1, max_size=k)
    )))
    key = key_of_words(n, words)
    assert key_of_words(n, words_from_key(key)) == key


def test_explicit_matrix_toy():
    blk = explicit_matrix(3, 2, 1, (), 2)
    # rows: empty code plus the three singletons
    assert blk.size == 4
    reg = registry(3, 2, 1, 2)
    assert blk.entry(0, 0) == LinearForm.constant(1)
    assert blk.entry(0, 1) == LinearForm.variable(reg.singleton_id)
    assert blk.entry(1, 1) == LinearForm.variable(reg.singleton_id)
    assert blk.entry(1, 2) == LinearForm.variable(reg.pair_ids[1])
    blk.check_symmetric()


def test_explicit_matrix_zero_on_infeasible_union():
    blk = explicit_matrix(6, 4, 3, (), 2)
    words = weight_words(6, 3)
    i = words.index(0b000111) + 1
    j = words.index(0b001011) + 1
    assert blk.entry(i, j).is_zero()


def test_explicit_matrix_guards():
    with pytest.raises(ValueError):
        explicit_matrix(9, 4, 3, (), 2)
    with pytest.raises(ValueError):
        explicit_matrix(6, 4, 3, (), 5)


def test_reduction_equivalence_smoke():
    rep = reduction_equivalence_test(3, 2, 1, "a2", draws=10)
    assert rep.counterexample is None
    assert rep.relative_gap <= 1e-5
    assert rep.explicit_value == pytest.approx(3.0, abs=1e-5)
