"""Block generators against hand-computed fixtures at toy scale."""

import pytest

from cwbound.blockgen_empty import ROOT, empty_blocks_s1, empty_blocks_s2, word_pair_contents
from cwbound.blockgen_pair import (
    group_sizes,
    legal_t_values,
    pair_blocks,
    row_quadruples,
)
from cwbound.combinatorics import binomial, content
from cwbound.linform import LinearForm
from cwbound.orbits import registry


def test_group_sizes():
    assert group_sizes(17, 7, 3) == (3, 4, 3, 7)
    assert sum(group_sizes(17, 7, 3)) == 17


def test_legal_t_values():
    assert legal_t_values(17, 6, 7) == (3, 4, 5, 6, 7)
    assert legal_t_values(22, 10, 10) == (5, 6, 7, 8, 9, 10)
    assert legal_t_values(3, 2, 1) == (1,)
    # odd d rounds up: pairs at distance d-1 stay illegal
    assert legal_t_values(10, 5, 4) == (3, 4)


def test_pair_blocks_rejects_bad_t():
    reg = registry(6, 4, 3, 4)
    with pytest.raises(ValueError):
        pair_blocks(reg, 1)
    with pytest.raises(ValueError):
        pair_blocks(reg, 4)


def test_tiny_pair_block_is_all_pair_variable():
    # two words at distance 2 in two coordinates: the only free word
    # choices are the two fixed words themselves
    reg = registry(2, 2, 1, 4)
    blocks = pair_blocks(reg, 1)
    assert len(blocks) == 1
    b = blocks[0]
    assert b.params == (1, ((1,), (), (1,), ()))
    assert b.size == 2
    pair = LinearForm.variable(reg.pair_ids[1])
    for i in range(2):
        for j in range(2):
            assert b.forms[i][j] == pair


def test_t0_single_row_block_has_unit_singleton_diagonal():
    reg = registry(6, 4, 3, 4)
    blocks = [b for b in pair_blocks(reg, 0) if b.params[1] == ((), (3,), (), (3,))]
    assert len(blocks) == 1
    b = blocks[0]
    hits = 0
    for i, quad in enumerate(b.labels):
        if content(quad[1], 2) == (0, 3):
            # third word equal to the fixed word
            assert b.forms[i][i] == LinearForm.variable(reg.singleton_id)
            hits += 1
    assert hits == 1


def test_row_quadruples_filter_weight_and_distance():
    # (6,4,3), t=2: every surviving third word has weight 3 and lies at
    # distance 0 or >= 4 from both fixed words
    n, d, w, t = 6, 4, 3, 2
    shapes = ((2,), (1,), (2,), (1,))
    for quad in row_quadruples(shapes, n, d, w):
        cts = [content(tab, 2) for tab in quad]
        assert sum(ct[1] for ct in cts) == w
        d1 = cts[0][0] + cts[1][0] + cts[2][1] + cts[3][1]
        d2 = cts[0][1] + cts[1][0] + cts[2][0] + cts[3][1]
        assert d1 == 0 or d1 >= d
        assert d2 == 0 or d2 >= d


def test_pair_blocks_symmetric_and_in_range():
    for n, d, w in [(6, 4, 3), (8, 4, 3), (8, 6, 4)]:
        reg = registry(n, d, w, 4)
        for t in (0,) + legal_t_values(n, d, w):
            for b in pair_blocks(reg, t):
                assert b.check_symmetric()
                assert all(0 <= i < len(reg) for i in b.variables())


def test_pair_blocks_deterministic():
    reg = registry(8, 4, 3, 4)
    a = pair_blocks(reg, 2)
    b = pair_blocks(reg, 2)
    assert [blk.params for blk in a] == [blk.params for blk in b]
    assert [blk.forms for blk in a] == [blk.forms for blk in b]


def test_empty_s1_toy_fixture():
    # the worked 2-variable program: root block and the (2,1) block
    reg = registry(3, 2, 1, 2)
    y0 = LinearForm.variable(reg.singleton_id)
    y1 = LinearForm.variable(reg.pair_ids[1])
    blocks = empty_blocks_s1(reg)
    assert [b.params for b in blocks] == [(1, (3,)), (1, (2, 1))]
    root = blocks[0]
    assert root.labels[0] == ROOT
    assert root.forms[0][0] == LinearForm.constant(1)
    assert root.forms[0][1] == y0.scale(3)
    assert root.forms[1][1] == y0.scale(3) + y1.scale(6)
    assert blocks[1].forms == ((y0.scale(2) + y1.scale(-2),),)


def test_empty_s1_root_inner_entry_formula():
    # bottom-right of the full-row block: binom(n,w) times the sum of
    # all pair-counting terms
    for n, d, w in [(6, 4, 3), (8, 4, 3), (22, 10, 10)]:
        reg = registry(n, d, w, 2)
        root = [b for b in empty_blocks_s1(reg) if b.params[1] == (n,)][0]
        expect = LinearForm.variable(reg.singleton_id)
        for t in legal_t_values(n, d, w):
            expect = expect + LinearForm.variable(
                reg.pair_ids[t], binomial(w, t) * binomial(n - w, t)
            )
        assert root.forms[1][1] == expect.scale(binomial(n, w))
        assert root.forms[0][1] == LinearForm.variable(reg.singleton_id, binomial(n, w))


def test_empty_s1_excludes_root_on_request():
    reg = registry(6, 4, 3, 2)
    blocks = empty_blocks_s1(reg, with_root=False)
    for b in blocks:
        assert ROOT not in b.labels


def test_word_pair_contents():
    assert word_pair_contents(6, 4, 3) == [
        (0, (3, 0, 0, 3)),
        (2, (1, 2, 2, 1)),
        (3, (0, 3, 3, 0)),
    ]


def test_empty_s2_root_row():
    # off-corner entries count the word pairs sharing each t
    reg = registry(6, 4, 3, 4)
    root = [b for b in empty_blocks_s2(reg) if b.params[1] == (6,)][0]
    assert root.labels[0] == ROOT
    assert root.size == 1 + len(word_pair_contents(6, 4, 3))
    assert root.forms[0][0] == LinearForm.constant(1)
    got = {}
    for j, tab in enumerate(root.labels[1:], start=1):
        c = content(tab, 4)
        t = c[1]
        got[t] = root.forms[0][j]
    assert got[0] == LinearForm.variable(reg.singleton_id, binomial(6, 3))
    for t in (2, 3):
        coeff = binomial(6, 3) * binomial(3, t) * binomial(3, t)
        assert got[t] == LinearForm.variable(reg.pair_ids[t], coeff)


def test_empty_s2_full_row_tableaux_match_legal_t():
    for n, d, w in [(6, 4, 3), (8, 4, 3), (8, 6, 4)]:
        reg = registry(n, d, w, 4)
        root = [b for b in empty_blocks_s2(reg) if b.params[1] == (n,)][0]
        assert root.size == 2 + len(legal_t_values(n, d, w))


def test_empty_blocks_symmetric_and_in_range():
    for n, d, w in [(6, 4, 3), (8, 4, 3)]:
        reg = registry(n, d, w, 4)
        for b in empty_blocks_s1(reg) + empty_blocks_s2(reg):
            assert b.check_symmetric()
            assert all(0 <= i < len(reg) for i in b.variables())
