"""Assembles the full block programs for the four bound variants.

Variants differ in which block families they include and how many
words an orbit may involve: a2 uses single-word tableau blocks only,
a3 adds the blocks around one fixed word, b4 adds those around a pair
at every legal distance, and a4 swaps the single-word family for the
word-pair family.  Every variant appends a diagonal block making all
orbit variables nonnegative.

Three interchangeable scalings of the same program are offered.  The
raw form maximizes binom(n,w) times the singleton variable.  The
normalized form rescales the variables by binom(n,w): the root block's
non-corner entries divide exactly by binom(n,w) and every other block
is invariant because its entries are homogeneous.  The pinned form
additionally fixes the singleton variable to 1, drops the root row and
moves the counting identity into the objective; it exists only for the
variants whose root block is the single-word one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .blockgen_empty import ROOT, empty_blocks_s1, empty_blocks_s2
from .blockgen_pair import legal_t_values, pair_blocks
from .combinatorics import binomial
from .linform import Block, LinearForm
from .orbits import Registry, registry

KMAX = {"a2": 2, "a3": 3, "b4": 4, "a4": 4}
DEFAULT_FORMULATION = {"a2": "normalized", "a3": "normalized", "b4": "normalized", "a4": "raw"}


@dataclass(frozen=True)
class SdpProgram:
    n: int
    d: int
    w: int
    variant: str
    formulation: str
    registry: Registry = field(repr=False)
    blocks: tuple[Block, ...] = field(repr=False)
    objective: LinearForm = field(repr=False)
    fixed: tuple[tuple[int, int], ...] = ()

    @property
    def free_ids(self) -> tuple[int, ...]:
        pinned = {i for i, _ in self.fixed}
        return tuple(i for i in range(len(self.registry)) if i not in pinned)

    def inventory(self) -> str:
        lines = [
            f"program n={self.n} d={self.d} w={self.w} "
            f"variant={self.variant} formulation={self.formulation}",
            f"variables {len(self.free_ids)} of {len(self.registry)} "
            f"registry sha {self.registry.sha()}",
        ]
        for b in self.blocks:
            if b.kind == "nonneg":
                lines.append(f"block nonneg size={b.size} diag")
            elif b.kind == "empty":
                s, lam = b.params
                lines.append(f"block empty s={s} shape={lam} size={b.size}")
            else:
                t, shapes = b.params
                lines.append(f"block pair t={t} shapes={shapes} size={b.size}")
        lines.append(f"blocks {len(self.blocks)}")
        return "\n".join(lines) + "\n"

    def validate(self) -> None:
        nvar = len(self.registry)
        pinned = {i for i, _ in self.fixed}
        seen = set(self.objective.coeffs)
        for b in self.blocks:
            if not b.check_symmetric():
                raise AssertionError(f"asymmetric block {b.kind} {b.params}")
            seen |= b.variables()
        for i in seen:
            if not 0 <= i < nvar:
                raise AssertionError(f"variable {i} outside registry")
            if i in pinned:
                raise AssertionError(f"pinned variable {i} still referenced")


def _raw_blocks(reg: Registry, variant: str, with_root: bool) -> list[Block]:
    n, d, w = reg.n, reg.d, reg.w
    if variant == "a4":
        blocks = empty_blocks_s2(reg, with_root)
    else:
        blocks = empty_blocks_s1(reg, with_root)
    if variant in ("a3", "b4", "a4"):
        blocks += pair_blocks(reg, 0)
    if variant in ("b4", "a4"):
        for t in legal_t_values(n, d, w):
            blocks += pair_blocks(reg, t)
    return blocks


def _divide_root(block: Block, c: int) -> Block:
    """Rescale a root block's non-corner entries by 1/c, exactly."""
    m = block.size
    forms = [[None] * m for _ in range(m)]
    forms[0][0] = block.forms[0][0]
    for i in range(m):
        for j in range(m):
            if i == 0 and j == 0:
                continue
            forms[i][j] = block.forms[i][j].divide_exact(c)
    return Block(block.kind, block.params, block.labels, tuple(tuple(r) for r in forms))


def _divide_all(block: Block, c: int) -> Block:
    forms = tuple(
        tuple(f.divide_exact(c) for f in row) for row in block.forms
    )
    return Block(block.kind, block.params, block.labels, forms)


def _is_root_shape(block: Block, n: int) -> bool:
    return block.kind == "empty" and block.params[1] == (n,)


def assemble(
    n: int, d: int, w: int, variant: str, formulation: str | None = None
) -> SdpProgram:
    if variant not in KMAX:
        raise ValueError(f"unknown variant {variant!r}")
    if formulation is None:
        formulation = DEFAULT_FORMULATION[variant]
    if formulation not in ("raw", "normalized", "pinned"):
        raise ValueError(f"unknown formulation {formulation!r}")
    if variant == "a4" and formulation == "pinned":
        raise ValueError("pinned formulation requires the single-word root block")
    if not 1 <= w or w > n - w:
        raise ValueError("need 1 <= w <= n/2; complement w first")
    if d < 1:
        raise ValueError("d must be positive")

    reg = registry(n, d, w, KMAX[variant])
    c = binomial(n, w)
    fixed: tuple[tuple[int, int], ...] = ()

    if formulation == "raw":
        blocks = _raw_blocks(reg, variant, with_root=True)
        objective = LinearForm.variable(reg.singleton_id, c)
    elif formulation == "normalized":
        blocks = [
            _divide_root(b, c) if b.labels and b.labels[0] == ROOT else b
            for b in _raw_blocks(reg, variant, with_root=True)
        ]
        objective = LinearForm.variable(reg.singleton_id, 1)
    else:
        fixed = ((reg.singleton_id, 1),)
        pins = dict(fixed)
        blocks = [
            (_divide_all(b, c) if _is_root_shape(b, n) else b)
            for b in _raw_blocks(reg, variant, with_root=False)
        ]
        blocks = [
            Block(
                b.kind,
                b.params,
                b.labels,
                tuple(tuple(f.pin(pins) for f in row) for row in b.forms),
                b.diag,
            )
            for b in blocks
        ]
        objective = LinearForm(
            1, {reg.pair_id(t): binomial(w, t) * binomial(n - w, t) for t in legal_t_values(n, d, w)}
        )

    free = tuple(i for i in range(len(reg)) if i not in {i0 for i0, _ in fixed})
    nonneg = Block(
        kind="nonneg",
        params=(),
        labels=free,
        forms=tuple(LinearForm.variable(i) for i in free),
        diag=True,
    )
    prog = SdpProgram(
        n=n,
        d=d,
        w=w,
        variant=variant,
        formulation=formulation,
        registry=reg,
        blocks=tuple(blocks) + (nonneg,),
        objective=objective,
        fixed=fixed,
    )
    return prog


def orbit_subset_counts(reg: Registry, code: tuple[int, ...]) -> dict[int, int]:
    """How many subsets of the code land in each registry orbit."""
    from itertools import combinations

    from .orbits import key_of_words

    words = tuple(sorted(set(code)))
    counts: dict[int, int] = {}
    for k in range(1, reg.k_max + 1):
        for sub in combinations(words, k):
            key = key_of_words(reg.n, sub)
            oid = reg.index.get(key)
            if oid is None:
                raise ValueError("code violates the distance or weight constraints")
            counts[oid] = counts.get(oid, 0) + 1
    return counts


def substitute_code(prog: SdpProgram, code: tuple[int, ...]):
    """Numeric block values at the orbit-averaged image of a code.

    The code's indicator solution, averaged over all coordinate
    permutations, assigns each orbit the fraction of its members lying
    inside the code; that average stays feasible, so every returned
    matrix must be positive semidefinite.  Values are exact fractions.
    """
    from fractions import Fraction

    from .orbits import orbit_size

    if prog.formulation == "pinned":
        raise ValueError("pinned formulation fixes the singleton variable")
    reg = prog.registry
    scale = binomial(prog.n, prog.w) if prog.formulation == "normalized" else 1
    counts = orbit_subset_counts(reg, code)
    y = {
        oid: Fraction(scale * cnt, orbit_size(reg.n, reg.keys[oid]))
        for oid, cnt in counts.items()
    }
    values = [y.get(i, Fraction(0)) for i in range(len(reg))]
    out = []
    for b in prog.blocks:
        if b.diag:
            out.append([f.evaluate(values) for f in b.forms])
        else:
            out.append([[f.evaluate(values) for f in row] for row in b.forms])
    return out
