"""Ground truth at toy scale.

Exact A(n,d,w) by maximum-clique branch and bound on the compatibility
graph, literal moment matrices indexed by explicit codes, and an
equivalence harness that pits each reduced block family against its
unreduced counterpart on random variable draws and on the optimum.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass

import numpy as np

from .assembler import KMAX, SdpProgram, assemble, orbit_subset_counts
from .blockgen_pair import legal_t_values
from .combinatorics import binomial
from .linform import Block, LinearForm
from .orbits import OrbitKey, is_feasible, key_of_words, orbit_size, registry

VERTEX_GUARD = 100_000


def weight_words(n: int, w: int):
    """All weight-w bit masks of length n, ascending."""
    out = [sum(1 << p for p in pos) for pos in itertools.combinations(range(n), w)]
    return tuple(sorted(out))


def is_valid_code(n: int, d: int, w: int, words) -> bool:
    ws = tuple(words)
    if len(set(ws)) != len(ws):
        return False
    for a in ws:
        if a < 0 or a >> n or a.bit_count() != w:
            return False
    return all(
        (a ^ b).bit_count() >= d for a, b in itertools.combinations(ws, 2)
    )


class CompatGraph:
    """Weight-w words with edges between pairs at distance >= d.

    Adjacency rows are bitsets over vertex indices, so clique search
    runs on machine-word operations.
    """

    def __init__(self, n: int, d: int, w: int):
        self.n, self.d, self.w = n, d, w
        self.vertices = weight_words(n, w)
        self.adj = [0] * len(self.vertices)
        for i, a in enumerate(self.vertices):
            for j in range(i):
                if ((a ^ self.vertices[j]).bit_count()) >= d:
                    self.adj[i] |= 1 << j
                    self.adj[j] |= 1 << i


@dataclass(frozen=True)
class CodeSearch:
    size: int
    code: tuple[int, ...]
    exact: bool


def greedy_code(n: int, d: int, w: int, seed: int = 0) -> tuple[int, ...]:
    """First-fit code over a seed-shuffled word order."""
    words = list(itertools.islice(
        (sum(1 << p for p in pos) for pos in itertools.combinations(range(n), w)),
        2 * VERTEX_GUARD,
    ))
    random.Random(seed).shuffle(words)
    keep: list[int] = []
    for cand in words:
        if all((cand ^ x).bit_count() >= d for x in keep):
            keep.append(cand)
    return tuple(sorted(keep))


def _bits(p: int):
    while p:
        low = p & -p
        yield low.bit_length() - 1
        p ^= low


def _polish(adj: list[int], start: int, rng: random.Random, budget: int) -> int:
    """Grow a clique bitset by completion and 1-out-2-in swaps."""
    full = (1 << len(adj)) - 1
    cur = start
    best = start

    def common_of(members: int) -> int:
        out = full & ~members
        for v in _bits(members):
            out &= adj[v]
            if not out:
                break
        return out

    for _ in range(budget):
        com = common_of(cur)
        if com:
            picks = list(_bits(com))
            cur |= 1 << rng.choice(picks)
            if cur.bit_count() > best.bit_count():
                best = cur
            continue
        members = list(_bits(cur))
        if not members:
            break
        out = rng.choice(members)
        trimmed = cur ^ (1 << out)
        com = common_of(trimmed) & ~(1 << out)
        swapped = False
        for a in _bits(com):
            both = com & adj[a]
            if both:
                b = (both & -both).bit_length() - 1
                cur = trimmed | (1 << a) | (1 << b)
                swapped = True
                break
        if not swapped:
            if com:
                picks = list(_bits(com))
                cur = trimmed | (1 << rng.choice(picks))
            else:
                cur = trimmed
        if cur.bit_count() > best.bit_count():
            best = cur
    return best


def _max_clique(adj: list[int], roots, incumbent: int, time_cap: float | None):
    """Branch and bound with a greedy-coloring upper bound.

    roots is a list of (clique bitset, candidate bitset) subproblems
    that together cover some maximum clique; incumbent seeds pruning.
    Returns (best bitset, exact flag); exact goes False on timeout.
    """
    deadline = time.monotonic() + time_cap if time_cap is not None else None
    best = incumbent.bit_count()
    best_set = incumbent
    timed_out = False
    ticker = 0

    def expand(rsize: int, rset: int, p: int):
        nonlocal best, best_set, timed_out, ticker
        ticker += 1
        if timed_out or (
            deadline is not None
            and ticker % 256 == 0
            and time.monotonic() > deadline
        ):
            timed_out = True
            return
        if not p:
            if rsize > best:
                best, best_set = rsize, rset
            return
        if rsize + p.bit_count() <= best:
            return
        # greedy coloring with single-conflict repair: a vertex spilling
        # past the prune line moves its lone conflict to another class
        # when that conflict fits below the line too
        kmin = best - rsize
        classes: list[int] = []
        assign: dict[int, int] = {}
        for v in _bits(p):
            row = adj[v]
            placed = -1
            for ci, cls in enumerate(classes):
                if not (row & cls):
                    placed = ci
                    break
            if placed < 0 and kmin >= 2 and len(classes) >= kmin:
                lim = min(kmin - 1, len(classes))
                for c1 in range(lim):
                    inter = row & classes[c1]
                    if inter and not (inter & (inter - 1)):
                        u = inter.bit_length() - 1
                        urow = adj[u]
                        for c2 in range(lim):
                            if c2 != c1 and not (urow & classes[c2]):
                                classes[c1] ^= inter
                                classes[c2] |= inter
                                assign[u] = c2
                                placed = c1
                                break
                    if placed >= 0:
                        break
            if placed < 0:
                classes.append(0)
                placed = len(classes) - 1
            classes[placed] |= 1 << v
            assign[v] = placed
        order = sorted(((v, ci + 1) for v, ci in assign.items()), key=lambda vc: vc[1])
        while order:
            v, color = order.pop()
            if rsize + color <= best:
                return
            expand(rsize + 1, rset | (1 << v), p & adj[v])
            if timed_out:
                return
            p ^= 1 << v

    for rset, p in roots:
        expand(rset.bit_count(), rset, p)
        if timed_out:
            break
    return best_set, not timed_out


def max_code(n: int, d: int, w: int, time_cap: float | None = None) -> CodeSearch:
    """Largest code of weight-w words with pairwise distance >= d.

    Exact via clique search when the word count fits the guard and the
    cap is not hit; otherwise a greedy lower bound flagged exact=False.
    """
    if not 1 <= w < n:
        raise ValueError("need 1 <= w < n")
    if d > 2 * min(w, n - w):
        return CodeSearch(1, ((1 << w) - 1,), True)
    if d <= 2:
        # distinct equal-weight words always differ in at least two places
        return CodeSearch(binomial(n, w), weight_words(n, w), True)
    if binomial(n, w) > VERTEX_GUARD:
        code = greedy_code(n, d, w)
        return CodeSearch(len(code), code, False)
    graph = CompatGraph(n, d, w)
    nv = len(graph.vertices)
    # relabel by degree descending so bit order drives the coloring
    perm = sorted(range(nv), key=lambda v: -graph.adj[v].bit_count())
    back = {new: old for new, old in enumerate(perm)}
    fwd = {old: new for new, old in back.items()}
    vid = {word: fwd[i] for i, word in enumerate(graph.vertices)}
    adj = [0] * nv
    for new, old in back.items():
        row = 0
        for u in _bits(graph.adj[old]):
            row |= 1 << fwd[u]
        adj[new] = row
    rng = random.Random(2 * n + 3 * d + 5 * w)
    incumbent = 0
    for s in range(24):
        mask = 0
        for word in greedy_code(n, d, w, seed=s):
            mask |= 1 << vid[word]
        mask = _polish(adj, mask, rng, 800)
        if mask.bit_count() > incumbent.bit_count():
            incumbent = mask
    # coordinate permutations act transitively on each orbit of codes, so
    # every clique of `depth` or more words maps onto one of the level
    # representatives; an empty extension level pins the maximum exactly
    word_of = [graph.vertices[back[v]] for v in range(nv)]
    reg = registry(n, d, w, 4)
    depth = max(key[0] for key in reg.keys)
    level = [words_from_key(key) for key in reg.keys if key[0] == depth]
    full = (1 << nv) - 1
    target = 5 if nv >= 150 else 4
    while depth < target and len(level) < 20_000:
        seen: set = set()
        nxt = []
        for words in level:
            common = full
            for word in words:
                common &= adj[vid[word]]
            for v in _bits(common):
                key = key_of_words(n, tuple(sorted(words + (word_of[v],))))
                if key not in seen:
                    seen.add(key)
                    nxt.append(words_from_key(key))
        if not nxt:
            # no clique extends past this level, so any representative wins
            code = tuple(sorted(level[0]))
            if not is_valid_code(n, d, w, code):
                raise AssertionError("clique witness failed verification")
            return CodeSearch(depth, code, True)
        level = nxt
        depth += 1
    if incumbent.bit_count() < depth:
        mask = 0
        for word in level[0]:
            mask |= 1 << vid[word]
        incumbent = mask
    roots = []
    for words in level:
        rset = 0
        p = full
        for word in words:
            v = vid[word]
            rset |= 1 << v
            p &= adj[v]
        roots.append((rset, p))
    best_set, exact = _max_clique(adj, roots, incumbent, time_cap)
    code = tuple(sorted(graph.vertices[back[v]] for v in _bits(best_set)))
    if not is_valid_code(n, d, w, code):
        raise AssertionError("clique witness failed verification")
    return CodeSearch(len(code), code, exact)


def words_from_key(key: OrbitKey) -> tuple[int, ...]:
    """Representative words realizing an orbit key, one bit run per pattern."""
    k, counts = key
    words = [0] * k
    pos = 0
    for pattern, cnt in enumerate(counts):
        for _ in range(cnt):
            for slot in range(k):
                if (pattern >> (k - 1 - slot)) & 1:
                    words[slot] |= 1 << pos
            pos += 1
    return tuple(words)


def pair_rep(n: int, w: int, t: int) -> tuple[int, int]:
    """Two weight-w words at distance 2t on the lowest coordinates."""
    first = (1 << w) - 1
    second = (first ^ ((1 << t) - 1)) | (((1 << t) - 1) << w)
    return first, second


def _orbit_id(reg, words):
    key = key_of_words(reg.n, tuple(words))
    if not is_feasible(key, reg.n, reg.d, reg.w):
        return None
    return reg.index[key]


def explicit_matrix(n: int, d: int, w: int, D, k: int) -> Block:
    """Moment matrix indexed by codes containing D, no reduction applied.

    Rows are the codes C with C >= D and |D| + 2|C\\D| <= k, listed with
    D itself first (the empty code when D is empty).  Entries are the
    orbit variable of the union, the constant 1 on the corner when both
    codes are empty, and zero when the union breaks the distance floor.
    """
    if n > 8:
        raise ValueError("explicit matrices are guarded to n <= 8")
    if k not in (2, 3, 4):
        raise ValueError("k must be 2, 3 or 4")
    base = tuple(sorted(set(D)))
    if len(base) > k:
        raise ValueError("D has more than k words")
    for word in base:
        if word <= 0 or word >> n or word.bit_count() != w:
            raise ValueError("D must consist of weight-w words")
    reg = registry(n, d, w, k)
    others = [u for u in weight_words(n, w) if u not in base]
    rows: list[tuple[int, ...]] = []
    for esize in range((k - len(base)) // 2 + 1):
        for extra in itertools.combinations(others, esize):
            rows.append(tuple(sorted(base + extra)))
    forms = []
    for ca in rows:
        line = []
        for cb in rows:
            union = tuple(sorted(set(ca) | set(cb)))
            if not union:
                line.append(LinearForm.constant(1))
                continue
            oid = _orbit_id(reg, union)
            line.append(LinearForm() if oid is None else LinearForm.variable(oid))
        forms.append(tuple(line))
    return Block(
        kind="explicit",
        params=(k, len(base)),
        labels=tuple(rows),
        forms=tuple(forms),
        diag=False,
    )


def _trim_zero_rows(block: Block) -> Block:
    live = [
        i
        for i in range(block.size)
        if any(not f.is_zero() for f in block.forms[i])
    ]
    if len(live) == block.size:
        return block
    return Block(
        kind=block.kind,
        params=block.params,
        labels=tuple(block.labels[i] for i in live),
        forms=tuple(tuple(block.forms[i][j] for j in live) for i in live),
        diag=False,
    )


# moment order j imposed on root codes of each size, per variant
EXPLICIT_J = {
    "a2": {0: 2, 1: 2, 2: 2},
    "a3": {0: 3, 1: 3, 2: 3},
    "b4": {0: 3, 1: 3, 2: 4},
    "a4": {0: 4, 1: 4, 2: 4},
}


def explicit_root_sets(n: int, d: int, w: int, variant: str):
    """(D, j) per orbit of root codes of size <= 2, nontrivial blocks only."""
    jmap = EXPLICIT_J[variant]
    out = [((), jmap[0])]
    if jmap[1] >= 3:
        out.append((((1 << w) - 1,), jmap[1]))
    if jmap[2] >= 4:
        for t in legal_t_values(n, d, w):
            out.append((pair_rep(n, w, t), jmap[2]))
    return out


def explicit_program(n: int, d: int, w: int, variant: str) -> SdpProgram:
    """Unreduced program over orbit variables, one matrix per root orbit.

    Moment matrices whose trimmed size is a single diagonal variable are
    left to the nonnegativity block, which covers every orbit variable.
    """
    if variant not in KMAX:
        raise ValueError(f"unknown variant {variant!r}")
    reg = registry(n, d, w, KMAX[variant])
    blocks: list[Block] = []
    for dset, j in explicit_root_sets(n, d, w, variant):
        blk = _trim_zero_rows(explicit_matrix(n, d, w, dset, j))
        if blk.size >= 2:
            blocks.append(blk)
    free = tuple(range(len(reg)))
    blocks.append(
        Block(
            kind="nonneg",
            params=(),
            labels=free,
            forms=tuple(LinearForm.variable(i) for i in free),
            diag=True,
        )
    )
    return SdpProgram(
        n=n,
        d=d,
        w=w,
        variant=variant,
        formulation="explicit",
        registry=reg,
        blocks=tuple(blocks),
        objective=LinearForm.variable(reg.singleton_id, binomial(n, w)),
        fixed=(),
    )


def _eval_block(block: Block, y) -> np.ndarray:
    if block.diag:
        return np.diag([f.evaluate(y) for f in block.forms])
    return np.array(
        [[f.evaluate(y) for f in row] for row in block.forms], dtype=float
    )


def _psd_status(mats, tol: float = 1e-7) -> bool:
    for mat in mats:
        if mat.size == 0:
            continue
        scale = 1.0 + float(np.max(np.abs(mat)))
        if float(np.linalg.eigvalsh(mat)[0]) < -tol * scale:
            return False
    return True


def _averaged_code_point(reg, code) -> np.ndarray:
    y = np.zeros(len(reg))
    for oid, cnt in orbit_subset_counts(reg, code).items():
        y[oid] = cnt / orbit_size(reg.n, reg.keys[oid])
    return y


def _draw_points(reg, n, d, w, draws, rng):
    pts = []
    for i in range(draws):
        mode = i % 3
        if mode == 0:
            pts.append(rng.uniform(-1.0, 1.0, size=len(reg)))
        elif mode == 1:
            pts.append(_averaged_code_point(reg, greedy_code(n, d, w, seed=i)))
        else:
            base = _averaged_code_point(reg, greedy_code(n, d, w, seed=i))
            pts.append(base + 0.25 * rng.uniform(-1.0, 1.0, size=len(reg)))
    return pts


def _family_pairs(prog: SdpProgram):
    """(label, explicit matrices, reduced matrices) per root-code orbit."""
    n, d, w, variant = prog.n, prog.d, prog.w, prog.variant
    reg = prog.registry
    jmap = EXPLICIT_J[variant]
    pairs = []

    empties = [b for b in prog.blocks if b.kind == "empty"]
    pairs.append(("empty", [explicit_matrix(n, d, w, (), jmap[0])], empties))

    def scalar(oid):
        return Block(
            kind="nonneg",
            params=(),
            labels=(oid,),
            forms=(LinearForm.variable(oid),),
            diag=True,
        )

    red_t0 = [b for b in prog.blocks if b.kind == "pair" and b.params[0] == 0]
    singleton = ((1 << w) - 1,)
    reduced = red_t0 if red_t0 else [scalar(reg.singleton_id)]
    pairs.append(
        ("single", [explicit_matrix(n, d, w, singleton, jmap[1])], reduced)
    )

    for t in legal_t_values(n, d, w):
        red_t = [b for b in prog.blocks if b.kind == "pair" and b.params[0] == t]
        reduced = red_t if red_t else [scalar(reg.pair_id(t))]
        pairs.append(
            (f"t={t}", [explicit_matrix(n, d, w, pair_rep(n, w, t), jmap[2])], reduced)
        )

    for oid, key in enumerate(reg.keys):
        if key[0] < 3:
            continue
        rep = words_from_key(key)
        pairs.append(
            (f"orbit {oid}", [explicit_matrix(n, d, w, rep, key[0])], [scalar(oid)])
        )
    return pairs


@dataclass(frozen=True)
class EquivalenceReport:
    n: int
    d: int
    w: int
    variant: str
    draws: int
    explicit_value: float
    reduced_value: float
    relative_gap: float
    counterexample: str | None

    @property
    def passed(self) -> bool:
        return self.counterexample is None and self.relative_gap <= 1e-5


def reduction_equivalence_test(
    n: int, d: int, w: int, variant: str, draws: int = 50, seed: int = 20260822
) -> EquivalenceReport:
    """Reduced blocks against literal matrices: shared sign on random
    draws, shared optimum through the solver."""
    from .solver import solve

    if n > 8:
        raise ValueError("equivalence harness is guarded to n <= 8")
    prog = assemble(n, d, w, variant, "raw")
    rng = np.random.default_rng(seed)
    points = _draw_points(prog.registry, n, d, w, draws, rng)
    counterexample = None
    for label, explicit, reduced in _family_pairs(prog):
        for pi, y in enumerate(points):
            stat_e = _psd_status([_eval_block(b, y) for b in explicit])
            stat_r = _psd_status([_eval_block(b, y) for b in reduced])
            if stat_e != stat_r:
                counterexample = (
                    f"family {label} draw {pi}: explicit psd={stat_e} "
                    f"reduced psd={stat_r}"
                )
                break
        if counterexample:
            break

    re = solve(explicit_program(n, d, w, variant), tol=1e-9)
    rr = solve(assemble(n, d, w, variant, "normalized"), tol=1e-9)
    rel = abs(re.value - rr.value) / max(1.0, abs(rr.value))
    return EquivalenceReport(
        n=n,
        d=d,
        w=w,
        variant=variant,
        draws=draws,
        explicit_value=re.value,
        reduced_value=rr.value,
        relative_gap=rel,
        counterexample=counterexample,
    )
