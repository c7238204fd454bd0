"""Exact polynomial arithmetic in an m-by-m matrix of variables.

Polynomials live in Z[x_{i,j} : 1 <= i, j <= m].  A monomial is a flat
exponent tuple of length m*m, position (i-1)*m + (j-1) holding the
exponent of x_{i,j}.  Coefficients are arbitrary-precision ints.
"""

from __future__ import annotations

from functools import cache
from itertools import permutations


def var_index(m: int, i: int, j: int) -> int:
    return (i - 1) * m + (j - 1)


class Poly:
    """Immutable-by-convention sparse polynomial with int coefficients."""

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms: dict[tuple[int, ...], int] | None = None):
        self.m = m
        self.terms = terms if terms is not None else {}

    @staticmethod
    def zero(m: int) -> "Poly":
        return Poly(m)

    @staticmethod
    def one(m: int) -> "Poly":
        return Poly(m, {(0,) * (m * m): 1})

    @staticmethod
    def variable(m: int, i: int, j: int) -> "Poly":
        exps = [0] * (m * m)
        exps[var_index(m, i, j)] = 1
        return Poly(m, {tuple(exps): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.m == other.m and self.terms == other.terms

    def __hash__(self):
        return hash((self.m, frozenset(self.terms.items())))

    def __add__(self, other: "Poly") -> "Poly":
        if self.m != other.m:
            raise ValueError("mixed variable counts")
        out = dict(self.terms)
        for mono, c in other.terms.items():
            nc = out.get(mono, 0) + c
            if nc:
                out[mono] = nc
            else:
                out.pop(mono, None)
        return Poly(self.m, out)

    def __neg__(self) -> "Poly":
        return Poly(self.m, {mono: -c for mono, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if self.m != other.m:
            raise ValueError("mixed variable counts")
        out: dict[tuple[int, ...], int] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                mono = tuple(a + b for a, b in zip(ma, mb))
                nc = out.get(mono, 0) + ca * cb
                if nc:
                    out[mono] = nc
                else:
                    out.pop(mono, None)
        return Poly(self.m, out)

    def scale(self, k: int) -> "Poly":
        if k == 0:
            return Poly(self.m)
        return Poly(self.m, {mono: c * k for mono, c in self.terms.items()})

    def divide_exact(self, k: int) -> "Poly":
        out = {}
        for mono, c in self.terms.items():
            q, r = divmod(c, k)
            if r:
                raise ArithmeticError(f"coefficient {c} not divisible by {k}")
            out[mono] = q
        return Poly(self.m, out)

    def power(self, e: int) -> "Poly":
        out = Poly.one(self.m)
        for _ in range(e):
            out = out * self
        return out

    def transpose(self) -> "Poly":
        m = self.m
        out = {}
        for mono, c in self.terms.items():
            swapped = [0] * (m * m)
            for idx, e in enumerate(mono):
                if e:
                    i, j = divmod(idx, m)
                    swapped[j * m + i] = e
            out[tuple(swapped)] = c
        return Poly(m, out)

    def total_degree(self) -> int:
        return max((sum(mono) for mono in self.terms), default=0)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self.terms.items())

    def __repr__(self) -> str:
        if not self.terms:
            return "Poly(0)"
        bits = []
        for mono, c in self.sorted_terms():
            vars_ = "*".join(
                f"x{idx // self.m + 1}{idx % self.m + 1}" + (f"^{e}" if e > 1 else "")
                for idx, e in enumerate(mono)
                if e
            )
            bits.append(f"{c}" + (f"*{vars_}" if vars_ else ""))
        return "Poly(" + " + ".join(bits) + ")"


def shift_first(p: Poly, src: int, dst: int) -> Poly:
    """sum_s x_{dst,s} d/dx_{src,s}: moves one first index src -> dst."""
    m = p.m
    out: dict[tuple[int, ...], int] = {}
    for mono, c in p.terms.items():
        base = (src - 1) * m
        tgt = (dst - 1) * m
        for s in range(m):
            e = mono[base + s]
            if not e:
                continue
            lst = list(mono)
            lst[base + s] -= 1
            lst[tgt + s] += 1
            key = tuple(lst)
            nc = out.get(key, 0) + c * e
            if nc:
                out[key] = nc
            else:
                out.pop(key, None)
    return Poly(m, out)


def shift_second(p: Poly, src: int, dst: int) -> Poly:
    """sum_s x_{s,dst} d/dx_{s,src}: moves one second index src -> dst."""
    m = p.m
    out: dict[tuple[int, ...], int] = {}
    for mono, c in p.terms.items():
        for s in range(m):
            e = mono[s * m + (src - 1)]
            if not e:
                continue
            lst = list(mono)
            lst[s * m + (src - 1)] -= 1
            lst[s * m + (dst - 1)] += 1
            key = tuple(lst)
            nc = out.get(key, 0) + c * e
            if nc:
                out[key] = nc
            else:
                out.pop(key, None)
    return Poly(m, out)


@cache
def det_top_left(m: int, k: int) -> Poly:
    """Determinant of the leading k-by-k corner of (x_{i,j}) as a Poly."""
    out = Poly.zero(m)
    for perm in permutations(range(k)):
        sign = perm_sign(perm)
        term = Poly.one(m)
        for i, j in enumerate(perm):
            term = term * Poly.variable(m, i + 1, j + 1)
        out = out + term.scale(sign)
    return out


def perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign
