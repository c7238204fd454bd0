"""Blocks indexed by tableaux alone, with no fixed words.

The single-word family uses two-symbol tableaux of straight shapes of
height at most 2, with symbol 2 marking the coordinates of one word;
the word pair family uses four-symbol tableaux of height at most 4,
one symbol per joint bit pattern of two words.  In both families the
full-row shape additionally carries a distinguished root row tied to
the empty set, whose corner is the constant 1; those entries anchor
the program's scale.
"""

from __future__ import annotations

from .blockgen_pair import legal_t_values
from .combinatorics import (
    binomial,
    multinomial,
    partitions,
    semistandard_tableaux,
    semistandard_tableaux_with_content,
)
from .linform import Block, LinearForm
from .orbits import Registry
from .tabpoly import _row_stage, factorial_rescale, tab_poly

ROOT = "root"


def empty_blocks_s1(reg: Registry, with_root: bool = True) -> list[Block]:
    n, w = reg.n, reg.w
    blocks = []
    for lam in partitions(n, 2):
        rows = [
            tab
            for tab in semistandard_tableaux(lam, 2)
            if sum(r.count(2) for r in tab) == w
        ]
        if not rows:
            continue
        root = with_root and lam == (n,)
        labels = ((ROOT,) if root else ()) + tuple(rows)
        m = len(labels)
        forms = [[None] * m for _ in range(m)]
        off = 1 if root else 0
        if root:
            forms[0][0] = LinearForm.constant(1)
            for j in range(1, m):
                f = LinearForm.variable(reg.singleton_id, binomial(n, w))
                forms[0][j] = f
                forms[j][0] = f
        for i, tau in enumerate(rows):
            for j in range(i, len(rows)):
                f = _inner_s1(reg, lam, tau, rows[j])
                forms[off + i][off + j] = f
                forms[off + j][off + i] = f
        blocks.append(
            Block(
                kind="empty",
                params=(1, lam),
                labels=labels,
                forms=tuple(tuple(row) for row in forms),
            )
        )
    return blocks


def _inner_s1(reg: Registry, lam, tau, sigma) -> LinearForm:
    form = LinearForm()
    scale = factorial_rescale(lam, 2)
    for mono, coeff in tab_poly(lam, tau, sigma, 2).sorted_terms():
        # flat m=2 exponent slots are already the four (row bit, column
        # bit) patterns in most-significant-first order
        oid = reg.lookup_counts(2, mono)
        if oid is not None:
            form.add_term(oid, coeff * scale)
    return form


def word_pair_contents(n: int, d: int, w: int) -> list[tuple[int, tuple[int, int, int, int]]]:
    """(t, symbol content) pairs realizable by two words of weight w at
    an allowed distance 2t, including the coincident t = 0 case."""
    out = []
    for t in (0,) + legal_t_values(n, d, w):
        out.append((t, (n - w - t, t, t, w - t)))
    return out


def empty_blocks_s2(reg: Registry, with_root: bool = True) -> list[Block]:
    n, d, w = reg.n, reg.d, reg.w
    blocks = []
    for lam in partitions(n, 4):
        rows: list[tuple] = []
        ts: list[int] = []
        for t, cont in word_pair_contents(n, d, w):
            for tab in semistandard_tableaux_with_content(lam, cont):
                rows.append(tab)
                ts.append(t)
        if not rows:
            continue
        root = with_root and lam == (n,)
        labels = ((ROOT,) if root else ()) + tuple(rows)
        m = len(labels)
        forms = [[None] * m for _ in range(m)]
        off = 1 if root else 0
        if root:
            forms[0][0] = LinearForm.constant(1)
            for j, t in enumerate(ts):
                size = multinomial((n - w - t, t, t, w - t))
                oid = reg.lookup_counts(2, (n - w - t, t, t, w - t))
                f = LinearForm.variable(oid, size)
                forms[0][off + j] = f
                forms[off + j][0] = f
        for i, tau in enumerate(rows):
            for j in range(i, len(rows)):
                f = _inner_s2(reg, lam, tau, rows[j])
                forms[off + i][off + j] = f
                forms[off + j][off + i] = f
        blocks.append(
            Block(
                kind="empty",
                params=(2, lam),
                labels=labels,
                forms=tuple(tuple(row) for row in forms),
            )
        )
        # row stages are only reused within one shape; at four symbols
        # they are large enough that keeping them across shapes would
        # dominate memory
        _row_stage.cache_clear()
    return blocks


def _inner_s2(reg: Registry, lam, tau, sigma) -> LinearForm:
    form = LinearForm()
    scale = factorial_rescale(lam, 4)
    for mono, coeff in tab_poly(lam, tau, sigma, 4).sorted_terms():
        # flat m=4 slots coincide with the sixteen joint bit patterns of
        # (row pair, column pair)
        oid = reg.lookup_counts(4, mono)
        if oid is not None:
            form.add_term(oid, coeff * scale)
    return form
