"""Polynomials attached to pairs of semistandard tableaux.

For a shape lam with at most m rows and two semistandard tableaux tau,
sigma of that shape with entries in 1..m, tab_poly(lam, tau, sigma, m)
is the bilinear-pairing polynomial whose monomial x_{a,b}-exponents
record how often a cell carries symbol a in a row rearrangement of tau
and simultaneously symbol b in one of sigma, alternating over column
permutations.  direct_expansion computes it literally from that
definition and serves as the oracle; tab_poly computes it by applying
divided-power shift operators to a product of corner determinants,
which is what makes large shapes tractable.

tab_poly drops the constant factor prod_k (k!)^(lam_k - lam_{k+1})
that the literal expansion carries; the two agree after multiplying by
factorial_rescale(lam).  Coefficients stay integers either way.
"""

from __future__ import annotations

import math
from functools import cache

from .combinatorics import Partition, Tableau, row_symbol_counts
from .polyalg import Poly, det_top_left, perm_sign, shift_first, shift_second


@cache
def corner_det_product(shape: Partition, m: int) -> Poly:
    """prod_k det_k^(lam_k - lam_{k+1}) with unit leading coefficients."""
    if len(shape) > m:
        raise ValueError("shape taller than symbol count")
    padded = tuple(shape) + (0,) * (m - len(shape))
    out = Poly.one(m)
    for k in range(1, m + 1):
        e = padded[k - 1] - (padded[k] if k < m else 0)
        if e:
            out = out * det_top_left(m, k).power(e)
    return out


def factorial_rescale(shape: Partition, m: int) -> int:
    padded = tuple(shape) + (0,) * (m - len(shape))
    out = 1
    for k in range(1, m + 1):
        e = padded[k - 1] - (padded[k] if k < m else 0)
        out *= math.factorial(k) ** e
    return out


@cache
def _row_stage(shape: Partition, tab: Tableau, m: int) -> Poly:
    """Apply the first-index shifts prescribed by tab to the determinant
    product, with divided-power normalization.

    Rows are processed bottom-up: symbols moved into a row must arrive
    after everything scheduled to leave it, otherwise the shifts feed
    each other.
    """
    counts = row_symbol_counts(tab, m)
    p = corner_det_product(shape, m)
    div = 1
    for j in range(len(shape), 0, -1):
        for i in range(j + 1, m + 1):
            t = counts[j - 1][i - 1]
            for _ in range(t):
                p = shift_first(p, j, i)
            div *= math.factorial(t)
    return p.divide_exact(div) if div > 1 else p


def tab_poly(shape: Partition, tau: Tableau, sigma: Tableau, m: int) -> Poly:
    """Operator-formula polynomial; first index tracks tau, second sigma.

    Deliberately uncached: block generation visits each (tau, sigma)
    pair once, and the expanded polynomials are far larger than the
    forms kept from them.  Only the sigma-independent row stage is
    worth remembering.
    """
    if not shape:
        return Poly.one(m)
    p = _row_stage(shape, tau, m)
    counts = row_symbol_counts(sigma, m)
    div = 1
    for j in range(len(shape), 0, -1):
        for i in range(j + 1, m + 1):
            s = counts[j - 1][i - 1]
            for _ in range(s):
                p = shift_second(p, j, i)
            div *= math.factorial(s)
    return p.divide_exact(div) if div > 1 else p


def _cells(shape: Partition) -> list[tuple[int, int]]:
    return [(r, c) for r, part in enumerate(shape) for c in range(part)]


def _distinct_row_orders(values: tuple[int, ...]):
    """Distinct permutations of a multiset, in lexicographic order."""
    pool = sorted(values)
    n = len(pool)
    out: list[tuple[int, ...]] = []
    cur: list[int] = []
    used = [False] * n

    def rec():
        if len(cur) == n:
            out.append(tuple(cur))
            return
        prev = None
        for i in range(n):
            if used[i] or pool[i] == prev:
                continue
            prev = pool[i]
            used[i] = True
            cur.append(pool[i])
            rec()
            cur.pop()
            used[i] = False

    rec()
    return out


def _row_equivalents(shape: Partition, tab: Tableau) -> list[tuple[int, ...]]:
    """All distinct fillings obtained by permuting rows of tab, as flat
    cell-value tuples in row-major order."""
    per_row = [_distinct_row_orders(row) for row in tab]
    fillings = [()]
    for options in per_row:
        fillings = [f + o for f in fillings for o in options]
    return fillings


def _column_group(shape: Partition) -> list[tuple[tuple[int, ...], int]]:
    """Column-stabilizer elements as cell-index permutations with signs."""
    cells = _cells(shape)
    pos = {cell: k for k, cell in enumerate(cells)}
    ncols = shape[0] if shape else 0
    columns = [
        [pos[(r, c)] for r in range(len(shape)) if shape[r] > c] for c in range(ncols)
    ]
    elements: list[tuple[tuple[int, ...], int]] = [(tuple(range(len(cells))), 1)]
    from itertools import permutations as iperm

    for col in columns:
        if len(col) < 2:
            continue
        new = []
        for perm in iperm(range(len(col))):
            sign = perm_sign(perm)
            for base, bsign in elements:
                lst = list(base)
                for a, b in zip(col, perm):
                    lst[a] = base[col[b]]
                new.append((tuple(lst), sign * bsign))
        elements = new
    return elements


def direct_expansion(shape: Partition, tau: Tableau, sigma: Tableau, m: int) -> Poly:
    """Literal sum over row rearrangements and signed column permutations.

    Exponential in the shape size; intended for cross-checking tab_poly
    on small shapes only.
    """
    if not shape:
        return Poly.one(m)
    group = _column_group(shape)
    ncells = sum(shape)

    def signed_assignments(tab):
        out = []
        for filling in _row_equivalents(shape, tab):
            for perm, sign in group:
                out.append((tuple(filling[perm[y]] for y in range(ncells)), sign))
        return out

    left = signed_assignments(tau)
    right = signed_assignments(sigma)
    terms: dict[tuple[int, ...], int] = {}
    for lvals, lsign in left:
        for rvals, rsign in right:
            exps = [0] * (m * m)
            for a, b in zip(lvals, rvals):
                exps[(a - 1) * m + (b - 1)] += 1
            key = tuple(exps)
            nc = terms.get(key, 0) + lsign * rsign
            if nc:
                terms[key] = nc
            else:
                terms.pop(key, None)
    return Poly(m, terms)
