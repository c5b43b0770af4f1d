"""Sumsets and rainbow-solution detection for x_1 + ... + x_m = x_{m+1}.

A rainbow solution of a family A_1..A_k takes each of the m+1 variables from a
different set.  Values may coincide; only the set indices must differ.

The detector works on raw bit masks.  Sumsets are built by shift-or and shared
across target choices through a DP over index subsets: the sumset of an index
tuple (i_1 < ... < i_s) is the sumset of its prefix shifted by A_{i_s}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .core import Family, IntSet

# Sumset identity: the set {0}.
ZERO = 1


def shift_or(a: int, b: int) -> int:
    """Sumset of two bit-mask sets; iterates over the sparser operand."""
    if not a or not b:
        return 0
    if a.bit_count() > b.bit_count():
        a, b = b, a
    out = 0
    while a:
        low = a & -a
        out |= b << (low.bit_length() - 1)
        a ^= low
    return out


def iterated_sumset(sets: Sequence[IntSet]) -> IntSet:
    if not sets:
        raise ValueError("iterated_sumset needs at least one set")
    acc = ZERO
    for A in sets:
        acc = shift_or(acc, A.mask)
    return IntSet(sum(A.universe_max for A in sets), acc)


def subset_sumsets(masks: Sequence[int], size: int) -> dict[tuple[int, ...], int]:
    """Sumsets of every index tuple (0-based, increasing) of length 1..size.

    Insertion order is by length, then lexicographic, so iterating the result
    for a fixed length visits tuples in ``itertools.combinations`` order.
    """
    sums: dict[tuple[int, ...], int] = {(): ZERO}
    for s in range(1, size + 1):
        for combo in itertools.combinations(range(len(masks)), s):
            sums[combo] = shift_or(sums[combo[:-1]], masks[combo[-1]])
    del sums[()]
    return sums


def has_rainbow(masks: Sequence[int], m: int) -> bool:
    """True iff the masks admit a rainbow solution."""
    k = len(masks)
    if k < m + 1:
        return False
    full = tuple(range(k))
    sums = subset_sumsets(masks, m)
    for combo in itertools.combinations(full, m):
        total = sums[combo]
        if not total:
            continue
        others = 0
        for t in full:
            if t not in combo:
                others |= masks[t]
        if total & others:
            return True
    return False


@dataclass(frozen=True)
class Witness:
    """A rainbow solution; indices are 1-based and sources are kept sorted by index."""

    sources: tuple[tuple[int, int], ...]
    target: tuple[int, int]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "sources", tuple(sorted(tuple(p) for p in self.sources))
        )
        object.__setattr__(self, "target", tuple(self.target))

    def order_key(self) -> tuple:
        """Total order used to pick among several witnesses."""
        return (
            self.target,
            tuple(i for i, _ in self.sources),
            tuple(v for _, v in self.sources),
        )

    def to_json_obj(self) -> dict:
        return {
            "sources": [list(p) for p in self.sources],
            "target": list(self.target),
        }


def _low_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _pick_values(masks: Sequence[int], combo: tuple[int, ...], value: int) -> list[int]:
    """Lexicographically smallest value tuple (in ``combo`` order) summing to ``value``."""
    suffix = [ZERO] * (len(combo) + 1)
    for j in range(len(combo) - 1, -1, -1):
        suffix[j] = shift_or(suffix[j + 1], masks[combo[j]])
    picked = []
    rest = value
    for j, idx in enumerate(combo):
        candidates = masks[idx]
        while candidates:
            a = _low_bit(candidates)
            if rest - a >= 0 and suffix[j + 1] >> (rest - a) & 1:
                break
            candidates ^= 1 << a
        else:  # pragma: no cover - combo was chosen because value is reachable
            raise AssertionError("sumset bookkeeping out of sync")
        picked.append(a)
        rest -= a
    return picked


def find_rainbow_masks(masks: Sequence[int], m: int) -> Optional[Witness]:
    """Witness minimising :meth:`Witness.order_key`, or None."""
    k = len(masks)
    if k < m + 1:
        return None
    sums = subset_sumsets(masks, m)
    m_subsets = [c for c in sums if len(c) == m]
    for t in range(k):
        target = masks[t]
        if not target:
            continue
        hits = 0
        for combo in m_subsets:
            if t not in combo:
                hits |= sums[combo] & target
        if not hits:
            continue
        value = _low_bit(hits)
        for combo in m_subsets:
            if t not in combo and sums[combo] >> value & 1:
                values = _pick_values(masks, combo, value)
                return Witness(
                    tuple((i + 1, v) for i, v in zip(combo, values)), (t + 1, value)
                )
    return None


def find_rainbow(F: Family) -> Optional[Witness]:
    return find_rainbow_masks(F.masks, F.problem.m)


def naive_find_rainbow(F: Family) -> Optional[Witness]:
    """Brute force over every index assignment and value tuple.

    Targets are tried in index order; for the first target admitting any
    solution, every source-index combination and every value tuple is
    enumerated and the smallest :meth:`Witness.order_key` is returned, so on
    any family it coincides with :func:`find_rainbow`.  The sources are
    interchangeable, so source indices are taken as combinations rather than
    permutations.  Tiny inputs only.
    """
    m, k = F.problem.m, F.problem.k
    elems = [F[i].elements() for i in range(1, k + 1)]
    for tgt in range(1, k + 1):
        target_values = set(elems[tgt - 1])
        others = [i for i in range(1, k + 1) if i != tgt]
        best: Optional[Witness] = None
        for src in itertools.combinations(others, m):
            for values in itertools.product(*(elems[i - 1] for i in src)):
                total = sum(values)
                if total not in target_values:
                    continue
                w = Witness(tuple(zip(src, values)), (tgt, total))
                if best is None or w.order_key() < best.order_key():
                    best = w
        if best is not None:
            return best
    return None


def verify_witness(F: Family, w: Witness) -> bool:
    m, k = F.problem.m, F.problem.k
    entries = list(w.sources) + [w.target]
    if len(w.sources) != m:
        return False
    indices = [i for i, _ in entries]
    if len(set(indices)) != m + 1 or not all(1 <= i <= k for i in indices):
        return False
    if list(w.sources) != sorted(w.sources):
        return False
    if not all(v in F[i] for i, v in entries):
        return False
    return sum(v for _, v in w.sources) == w.target[1]


def creates_rainbow(
    sums_by_size: Sequence[Sequence[tuple[int, int]]],
    masks: Sequence[int],
    new_mask: int,
    m: int,
) -> tuple[bool, list[list[tuple[int, int]]]]:
    """Incremental check for appending ``new_mask`` to ``masks``.

    ``sums_by_size[s]`` lists ``(index_bits, sumset)`` for every s-subset of the
    existing sets, s = 0..m.  Returns whether some rainbow solution uses the new
    set, and the extended table.  Only solutions involving the new set are
    examined, so the caller must know the existing sets are rainbow-free.
    """
    j = len(masks)
    bit = 1 << j
    # new set as the target
    for _, total in sums_by_size[m]:
        if total & new_mask:
            return True, []
    extended = [list(level) for level in sums_by_size]
    for s in range(m - 1, -1, -1):
        for idx, total in sums_by_size[s]:
            extended[s + 1].append((idx | bit, shift_or(total, new_mask)))
    # new set as a source
    for idx, total in extended[m]:
        if not idx & bit or not total:
            continue
        for t in range(j):
            if not idx >> t & 1 and total & masks[t]:
                return True, []
    return False, extended


def empty_sum_table(m: int) -> list[list[tuple[int, int]]]:
    table: list[list[tuple[int, int]]] = [[] for _ in range(m + 1)]
    table[0].append((0, ZERO))
    return table

