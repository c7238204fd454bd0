"""Integer partitions, semistandard tableaux and exact counting helpers."""

from __future__ import annotations

import math
from functools import cache

Partition = tuple[int, ...]
Tableau = tuple[tuple[int, ...], ...]


def binomial(n: int, k: int) -> int:
    """Exact binomial coefficient, zero outside Pascal's triangle."""
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


def multinomial(parts) -> int:
    """(sum parts)! / prod(part!) computed without large intermediates."""
    out = 1
    total = 0
    for p in parts:
        total += p
        out *= math.comb(total, p)
    return out


@cache
def partitions(n: int, max_height: int | None = None) -> tuple[Partition, ...]:
    """All partitions of n with at most max_height parts.

    Ordered reverse-lexicographically, so (n) comes first and the
    all-ones partition last.  n = 0 yields just the empty partition.
    """
    if n < 0:
        return ()
    height = n if max_height is None else max_height
    return tuple(_partitions(n, n, height))


def _partitions(n, largest, slots):
    if n == 0:
        yield ()
        return
    if slots == 0 or largest == 0:
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first, slots - 1):
            yield (first,) + rest


def conjugate(shape: Partition) -> Partition:
    if not shape:
        return ()
    return tuple(sum(1 for part in shape if part > j) for j in range(shape[0]))


def content(tab: Tableau, m: int) -> tuple[int, ...]:
    """Symbol multiplicities (count of 1, ..., count of m)."""
    counts = [0] * m
    for row in tab:
        for v in row:
            counts[v - 1] += 1
    return tuple(counts)


def row_symbol_counts(tab: Tableau, m: int) -> tuple[tuple[int, ...], ...]:
    """Per-row symbol multiplicities; entry [j][i] counts symbol i+1 in row j."""
    return tuple(tuple(row.count(i) for i in range(1, m + 1)) for row in tab)


@cache
def semistandard_tableaux(shape: Partition, max_entry: int) -> tuple[Tableau, ...]:
    """All fillings of shape with entries 1..max_entry, rows weakly and
    columns strictly increasing.

    Output is sorted lexicographically by the row-major entry sequence.
    """
    if not shape:
        return ((),)
    rows = len(shape)
    if max_entry < rows:
        return ()
    grid = [[0] * part for part in shape]
    out: list[Tableau] = []

    def fill(r: int, c: int) -> None:
        if r == rows:
            out.append(tuple(tuple(row) for row in grid))
            return
        nr, nc = (r, c + 1) if c + 1 < shape[r] else (r + 1, 0)
        lo = 1
        if c > 0:
            lo = max(lo, grid[r][c - 1])
        if r > 0:
            lo = max(lo, grid[r - 1][c] + 1)
        for v in range(lo, max_entry + 1):
            grid[r][c] = v
            fill(nr, nc)
        grid[r][c] = 0

    fill(0, 0)
    return tuple(out)


@cache
def semistandard_tableaux_with_content(
    shape: Partition, cont: tuple[int, ...]
) -> tuple[Tableau, ...]:
    """Semistandard fillings of shape with a prescribed symbol content."""
    if sum(cont) != sum(shape):
        return ()
    if not shape:
        return ((),)
    m = len(cont)
    rows = len(shape)
    if m < rows:
        return ()
    grid = [[0] * part for part in shape]
    left = list(cont)
    out: list[Tableau] = []

    def fill(r: int, c: int) -> None:
        if r == rows:
            out.append(tuple(tuple(row) for row in grid))
            return
        nr, nc = (r, c + 1) if c + 1 < shape[r] else (r + 1, 0)
        lo = r + 1
        if c > 0:
            lo = max(lo, grid[r][c - 1])
        if r > 0:
            lo = max(lo, grid[r - 1][c] + 1)
        for v in range(lo, m + 1):
            if left[v - 1] == 0:
                continue
            grid[r][c] = v
            left[v - 1] -= 1
            fill(nr, nc)
            left[v - 1] += 1
        grid[r][c] = 0

    fill(0, 0)
    return tuple(out)
