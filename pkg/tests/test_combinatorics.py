"""Partition and tableau enumeration against independent counting oracles."""

import math
from itertools import product

import pytest
from hypothesis import given, strategies as st

from cwbound.combinatorics import (
    binomial,
    conjugate,
    content,
    multinomial,
    partitions,
    row_symbol_counts,
    semistandard_tableaux,
    semistandard_tableaux_with_content,
)


def partition_count_dp(n: int, max_height: int) -> int:
    """Number of partitions of n into at most max_height parts, by the
    standard two-variable recurrence."""
    table = [[0] * (max_height + 1) for _ in range(n + 1)]
    for h in range(max_height + 1):
        table[0][h] = 1
    for total in range(1, n + 1):
        for h in range(1, max_height + 1):
            table[total][h] = table[total][h - 1]
            if total >= h:
                table[total][h] += table[total - h][h]
    return table[n][max_height]


def brute_ssyt(shape, max_entry):
    """Filter every filling of the shape; exponential reference."""
    cells = [(r, c) for r, part in enumerate(shape) for c in range(part)]
    found = []
    for values in product(range(1, max_entry + 1), repeat=len(cells)):
        grid = {}
        for cell, v in zip(cells, values):
            grid[cell] = v
        ok = True
        for (r, c), v in grid.items():
            if c > 0 and grid[(r, c - 1)] > v:
                ok = False
                break
            if r > 0 and grid[(r - 1, c)] >= v:
                ok = False
                break
        if ok:
            found.append(tuple(tuple(grid[(r, c)] for c in range(part)) for r, part in enumerate(shape)))
    return sorted(found)


def test_partition_counts_match_dp():
    for n in range(0, 26):
        for h in range(0, n + 2):
            assert len(partitions(n, h)) == partition_count_dp(n, h)


def test_partitions_default_height():
    assert len(partitions(20)) == partition_count_dp(20, 20)


def test_partition_order_reverse_lex():
    for n in range(1, 12):
        plist = partitions(n)
        assert plist[0] == (n,)
        assert plist[-1] == (1,) * n
        for a, b in zip(plist, plist[1:]):
            assert a > b


def test_partition_parts_sorted_and_sum():
    for n in range(1, 15):
        for p in partitions(n, 4):
            assert sum(p) == n
            assert all(a >= b for a, b in zip(p, p[1:]))
            assert len(p) <= 4


@given(st.integers(0, 18))
def test_conjugate_involution(n):
    for p in partitions(n, 5):
        assert conjugate(conjugate(p)) == p
        assert sum(conjugate(p)) == n


def test_binomial_against_math_comb():
    for n in range(0, 30):
        for k in range(-2, n + 3):
            expect = math.comb(n, k) if 0 <= k <= n else 0
            assert binomial(n, k) == expect


def test_multinomial():
    assert multinomial([2, 1]) == 3
    assert multinomial([3, 3, 3]) == math.factorial(9) // math.factorial(3) ** 3
    assert multinomial([]) == 1
    assert multinomial([0, 5, 0]) == 1


def test_ssyt_matches_bruteforce():
    for shape in [(1,), (2,), (2, 1), (2, 2), (3, 1), (1, 1, 1), (3, 2, 1)]:
        for m in range(1, 4):
            assert list(semistandard_tableaux(shape, m)) == brute_ssyt(shape, m)


def test_ssyt_lexicographic_order():
    for shape in [(3, 2), (2, 2, 1)]:
        tabs = semistandard_tableaux(shape, 4)
        flat = [sum(t, ()) for t in tabs]
        assert flat == sorted(flat)


def test_ssyt_two_symbol_two_row_count():
    # with entries in {1,2} a two-row shape has one filling per choice of
    # the number of 2s in row one
    for lam1 in range(1, 8):
        for lam2 in range(0, lam1 + 1):
            shape = (lam1, lam2) if lam2 else (lam1,)
            assert len(semistandard_tableaux(shape, 2)) == (
                lam1 - lam2 + 1 if len(shape) <= 2 else 0
            )


def test_ssyt_with_content_matches_filter():
    for shape in [(2, 1), (3, 1), (2, 2), (4, 2, 1)]:
        n = sum(shape)
        for m in (2, 3, 4):
            full = semistandard_tableaux(shape, m)
            seen = {}
            for t in full:
                seen.setdefault(content(t, m), []).append(t)
            for cont, tabs in seen.items():
                assert list(semistandard_tableaux_with_content(shape, cont)) == tabs
            # absent contents give nothing
            for cont in product(range(n + 1), repeat=m):
                if sum(cont) == n and cont not in seen:
                    assert semistandard_tableaux_with_content(shape, cont) == ()


def test_rsk_dimension_identity():
    # sum over shapes of (#standard tableaux) * (#ssyt with m symbols)
    # equals m^n
    for n in range(1, 7):
        for m in range(1, 4):
            total = 0
            for shape in partitions(n):
                f_lam = len(semistandard_tableaux_with_content(shape, (1,) * n))
                total += f_lam * len(semistandard_tableaux(shape, m))
            assert total == m**n


def test_row_symbol_counts():
    tab = ((1, 1, 2), (2, 3))
    assert row_symbol_counts(tab, 3) == ((2, 1, 0), (0, 1, 1))
    assert content(tab, 3) == (2, 2, 1)
