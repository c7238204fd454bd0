"""Blocks indexed by tableau quadruples around a fixed pair of words.

Fixing two weight-w words at Hamming distance 2t splits the n
coordinates into four classes by their (first, second) bits: (1,0),
(1,1), (0,1), (0,0), of sizes t, w-t, t, n-w-t.  A block is selected
by one height-at-most-2 partition per class; its rows are quadruples
of two-symbol tableaux, one per class, where symbol 2 marks the
coordinates a third word sets to 1 inside that class.  Entries expand
a product of four tableau polynomials and read each monomial off as a
four-word orbit: the pair, the row word and the column word.

t = 0 degenerates to a single fixed word: classes (1,0) and (0,1) are
empty and every surviving orbit merges the two fixed slots.
"""

from __future__ import annotations

from itertools import product

from .combinatorics import content, partitions, semistandard_tableaux
from .linform import Block, LinearForm
from .orbits import Registry
from .tabpoly import factorial_rescale, tab_poly

# class order: (1,0), (1,1), (0,1), (0,0); pattern base = 8*first + 4*second
GROUP_BASES = (8, 12, 4, 0)


def group_sizes(n: int, w: int, t: int) -> tuple[int, int, int, int]:
    return (t, w - t, t, n - w - t)


def legal_t_values(n: int, d: int, w: int) -> tuple[int, ...]:
    """Half-distances t >= 1 a pair of distinct codewords can realize."""
    return tuple(
        t for t in range(1, min(w, n - w) + 1) if 2 * t >= d
    )


def _distance_ok(v: int, d: int, n: int) -> bool:
    return v == 0 or d <= v <= n


def row_quadruples(
    shapes: tuple[tuple[int, ...], ...], n: int, d: int, w: int
) -> list[tuple]:
    """Tableau quadruples whose third word has weight w and lies at an
    allowed distance from both fixed words."""
    out = []
    pools = [semistandard_tableaux(shape, 2) for shape in shapes]
    for quad in product(*pools):
        cts = [content(tab, 2) for tab in quad]
        if sum(ct[1] for ct in cts) != w:
            continue
        d1 = cts[0][0] + cts[1][0] + cts[2][1] + cts[3][1]
        d2 = cts[0][1] + cts[1][0] + cts[2][0] + cts[3][1]
        if _distance_ok(d1, d, n) and _distance_ok(d2, d, n):
            out.append(quad)
    return out


def _factor_terms(shape, tau, sigma, base: int):
    """Tableau polynomial of one class, with flat m=2 exponent slots
    relocated to the class's four patterns."""
    poly = tab_poly(shape, tau, sigma, 2)
    scale = factorial_rescale(shape, 2)
    return [(mono, coeff * scale, base) for mono, coeff in poly.sorted_terms()]


def entry_form(
    reg: Registry, shapes, taus, sigmas
) -> LinearForm:
    factors = [
        _factor_terms(shapes[i], taus[i], sigmas[i], GROUP_BASES[i])
        for i in range(4)
    ]
    form = LinearForm()
    for combo in product(*factors):
        counts = [0] * 16
        coeff = 1
        for mono, c, base in combo:
            coeff *= c
            for k in range(4):
                counts[base + k] += mono[k]
        oid = reg.lookup_counts(4, tuple(counts))
        if oid is not None:
            form.add_term(oid, coeff)
    return form


def pair_blocks(reg: Registry, t: int) -> list[Block]:
    n, d, w = reg.n, reg.d, reg.w
    if t < 0 or t > min(w, n - w):
        raise ValueError(f"t={t} out of range for n={n}, w={w}")
    if t and 2 * t < d:
        raise ValueError(f"pair distance {2 * t} below minimum {d}")
    sizes = group_sizes(n, w, t)
    blocks = []
    for shapes in product(*(partitions(g, 2) for g in sizes)):
        rows = row_quadruples(shapes, n, d, w)
        if not rows:
            continue
        m = len(rows)
        forms = [[None] * m for _ in range(m)]
        for i in range(m):
            for j in range(i, m):
                f = entry_form(reg, shapes, rows[i], rows[j])
                forms[i][j] = f
                if j > i:
                    forms[j][i] = f
        blocks.append(
            Block(
                kind="pair",
                params=(t, shapes),
                labels=tuple(rows),
                forms=tuple(tuple(row) for row in forms),
            )
        )
    return blocks
