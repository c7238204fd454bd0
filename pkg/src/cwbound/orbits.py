"""Canonical orbit keys for small sets of constant-weight words.

A set of k distinct words in F_2^n is described, up to coordinate
permutation, by how many positions show each of the 2^k bit patterns
across the words.  Fixing an order of the words gives a counts vector
indexed by patterns; the orbit key is the lexicographic minimum of that
vector over the k! word orders.  Pattern index: word 0 contributes the
most significant bit.
"""

from __future__ import annotations

import hashlib
from functools import cache
from itertools import permutations

from .combinatorics import multinomial

OrbitKey = tuple[int, tuple[int, ...]]


@cache
def _perm_tables(k: int) -> tuple[tuple[int, ...], ...]:
    """For each slot permutation, the source pattern index for every
    target pattern index."""
    tables = []
    for perm in permutations(range(k)):
        table = []
        for target in range(1 << k):
            source = 0
            for new_slot in range(k):
                bit = (target >> (k - 1 - new_slot)) & 1
                old_slot = perm[new_slot]
                source |= bit << (k - 1 - old_slot)
            table.append(source)
        tables.append(tuple(table))
    return tuple(tables)


def canonical_counts(k: int, counts: tuple[int, ...]) -> tuple[int, ...]:
    if k == 1:
        return counts
    return min(
        tuple(counts[table[p]] for p in range(1 << k)) for table in _perm_tables(k)
    )


def slot_weight(k: int, counts: tuple[int, ...], slot: int) -> int:
    shift = k - 1 - slot
    return sum(c for p, c in enumerate(counts) if (p >> shift) & 1)


def slot_distance(k: int, counts: tuple[int, ...], a: int, b: int) -> int:
    sa, sb = k - 1 - a, k - 1 - b
    return sum(c for p, c in enumerate(counts) if ((p >> sa) ^ (p >> sb)) & 1)


def collapse(k: int, counts: tuple[int, ...]) -> OrbitKey:
    """Merge coinciding words (pairwise distance zero) and canonicalize."""
    keep: list[int] = []
    for slot in range(k):
        if all(slot_distance(k, counts, slot, other) > 0 for other in keep):
            keep.append(slot)
    kk = len(keep)
    if kk == k:
        return k, canonical_counts(k, counts)
    merged = [0] * (1 << kk)
    shifts = [k - 1 - s for s in keep]
    for p, c in enumerate(counts):
        if not c:
            continue
        q = 0
        for pos, shift in enumerate(shifts):
            q |= ((p >> shift) & 1) << (kk - 1 - pos)
        merged[q] += c
    return kk, canonical_counts(kk, tuple(merged))


def key_of_words(n: int, words: tuple[int, ...]) -> OrbitKey:
    """Orbit key of a set of words given as bit masks of length n."""
    distinct = sorted(set(words))
    k = len(distinct)
    counts = [0] * (1 << k)
    for pos in range(n):
        pattern = 0
        for slot, word in enumerate(distinct):
            pattern |= ((word >> pos) & 1) << (k - 1 - slot)
        counts[pattern] += 1
    return k, canonical_counts(k, tuple(counts))


def is_feasible(key: OrbitKey, n: int, d: int, w: int) -> bool:
    k, counts = key
    if sum(counts) != n:
        return False
    for slot in range(k):
        if slot_weight(k, counts, slot) != w:
            return False
    for a in range(k):
        for b in range(a + 1, k):
            if slot_distance(k, counts, a, b) < d:
                return False
    return True


def orbit_size(n: int, key: OrbitKey) -> int:
    """Number of k-subsets of F_2^n in the orbit."""
    k, counts = key
    ordered = multinomial(counts)
    stab = sum(
        1
        for table in _perm_tables(k)
        if tuple(counts[table[p]] for p in range(1 << k)) == counts
    )
    return ordered // stab


def _extensions(k: int, counts: tuple[int, ...], w: int, d: int):
    """Counts vectors for adding one word at weight w and distance >= d
    to every present word.  The new word takes the least significant
    pattern bit."""
    size = 1 << k
    cap = w - (d + 1) // 2
    if cap < 0:
        return
    suffix = [0] * (size + 1)
    for p in range(size - 1, -1, -1):
        suffix[p] = suffix[p + 1] + counts[p]
    chosen = [0] * size
    overlap = [0] * k

    def rec(p: int, remaining: int):
        if p == size:
            if remaining == 0:
                child = []
                for q in range(size):
                    child.append(counts[q] - chosen[q])
                    child.append(chosen[q])
                yield tuple(child)
            return
        if remaining > suffix[p]:
            return
        hi = min(counts[p], remaining)
        slots = [s for s in range(k) if (p >> (k - 1 - s)) & 1]
        for a in range(hi + 1):
            ok = True
            for s in slots:
                if overlap[s] + a > cap:
                    ok = False
                    break
            if not ok:
                break
            chosen[p] = a
            for s in slots:
                overlap[s] += a
            yield from rec(p + 1, remaining - a)
            for s in slots:
                overlap[s] -= a
        chosen[p] = 0

    yield from rec(0, w)


class Registry:
    """Deterministic numbering of all feasible orbits of at most k_max
    words for fixed (n, d, w)."""

    def __init__(self, n: int, d: int, w: int, k_max: int):
        if not (1 <= w <= n):
            raise ValueError("need 1 <= w <= n")
        if not 1 <= k_max <= 4:
            raise ValueError("k_max must be 1..4")
        if d < 1:
            raise ValueError("d must be positive")
        self.n, self.d, self.w, self.k_max = n, d, w, k_max
        levels: list[list[tuple[int, ...]]] = [[(n - w, w)]]
        for k in range(1, k_max):
            seen = set()
            for counts in levels[k - 1]:
                for child in _extensions(k, counts, w, d):
                    seen.add(canonical_counts(k + 1, child))
            levels.append(sorted(seen))
        self.keys: tuple[OrbitKey, ...] = tuple(
            (k + 1, counts) for k in range(k_max) for counts in levels[k]
        )
        self.index: dict[OrbitKey, int] = {key: i for i, key in enumerate(self.keys)}
        self.pair_ids: dict[int, int] = {}
        for key, i in self.index.items():
            if key[0] == 2:
                t = key[1][1]
                self.pair_ids[t] = i
        self._lookup_cache: dict[tuple[int, tuple[int, ...]], int | None] = {}

    def __len__(self) -> int:
        return len(self.keys)

    @property
    def singleton_id(self) -> int:
        return 0

    def pair_id(self, t: int) -> int:
        return self.pair_ids[t]

    def lookup_counts(self, k: int, counts: tuple[int, ...]) -> int | None:
        """Orbit id for a raw counts vector, or None when infeasible.

        Coinciding words are merged before the feasibility test."""
        probe = (k, counts)
        cached = self._lookup_cache.get(probe, -1)
        if cached != -1:
            return cached
        key = collapse(k, counts)
        if is_feasible(key, self.n, self.d, self.w):
            if key[0] > self.k_max:
                raise KeyError(f"orbit of {key[0]} words in a k_max={self.k_max} registry")
            got = self.index[key]
        else:
            got = None
        self._lookup_cache[probe] = got
        return got

    def dump(self) -> str:
        lines = []
        for i, (k, counts) in enumerate(self.keys):
            weights = ",".join(str(slot_weight(k, counts, s)) for s in range(k))
            dists = ",".join(
                str(slot_distance(k, counts, a, b))
                for a in range(k)
                for b in range(a + 1, k)
            )
            countstr = ",".join(str(c) for c in counts)
            lines.append(f"{i} k={k} counts={countstr} weights={weights} dists={dists}")
        return "\n".join(lines) + "\n"

    def sha(self) -> str:
        return hashlib.sha256(self.dump().encode()).hexdigest()[:16]


@cache
def registry(n: int, d: int, w: int, k_max: int) -> Registry:
    return Registry(n, d, w, k_max)
