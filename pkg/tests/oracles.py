"""Independent brute-force oracles for the tests.

Nothing here imports the library.  Sets are bit masks with bit x-1 for the
element x (the library uses bit x), so the two share no encoding either.
"""

from __future__ import annotations

import itertools

import numpy as np


def set_sum(*sets):
    """Sumset of Python sets via comprehension."""
    acc = {0}
    for s in sets:
        acc = {a + b for a in acc for b in s}
    return acc


def has_rainbow_sets(sets, m):
    """Rainbow check over Python sets: every target and every m-subset of the rest."""
    k = len(sets)
    for t in range(k):
        others = [i for i in range(k) if i != t]
        for combo in itertools.combinations(others, m):
            if set_sum(*(sets[i] for i in combo)) & sets[t]:
                return True
    return False


def mask_to_set(mask):
    return frozenset(x + 1 for x in range(mask.bit_length()) if mask >> x & 1)


def _sumset_table(n, m):
    """T[i_1, ..., i_m] = mask of A_{i_1} + ... + A_{i_m}, element s at bit s-1."""
    size = 1 << n
    base = np.arange(size, dtype=np.int64)
    table = base.copy()  # one set: itself
    for _ in range(m - 1):
        prev = table.reshape(-1, 1)
        out = np.zeros((table.size, size), dtype=np.int64)
        for x in range(1, n + 1):
            has_x = ((base >> (x - 1)) & 1).astype(bool)
            out[:, has_x] |= prev << x
        table = out.reshape(-1)
    return table


def dense_search(n, m, objective="sum", allow_empty=False):
    """Optimum and maximizer multisets over all 2^((m+1) n) families with k = m+1.

    Returns (optimum, sorted list of multiset keys), a key being the sorted
    tuple of sorted element tuples.
    """
    k = m + 1
    size = 1 << n
    table = _sumset_table(n, m)
    pop = np.array([bin(i).count("1") for i in range(size)], dtype=np.int64)
    strides = [size ** (m - 1 - j) for j in range(m)]
    best = None
    hits = []
    grids = np.indices((size,) * m, dtype=np.int64).reshape(m, -1)
    for first in range(size):
        # family = (first, grids[0], ..., grids[m-1])
        members = [np.full(grids.shape[1], first, dtype=np.int64)] + list(grids)
        rainbow = np.zeros(grids.shape[1], dtype=bool)
        for t in range(k):
            others = [members[i] for i in range(k) if i != t]
            flat = sum(o * s for o, s in zip(others, strides))
            rainbow |= (table[flat] & members[t]) != 0
        ok = ~rainbow
        if not allow_empty:
            for mem in members:
                ok &= mem != 0
        sizes = [pop[mem] for mem in members]
        if objective == "sum":
            value = sum(sizes)
        else:
            value = np.prod(np.stack(sizes), axis=0)
        if not ok.any():
            continue
        local = int(value[ok].max())
        idx = np.nonzero(ok & (value == local))[0]
        if best is None or local > best:
            best, hits = local, []
        if local == best:
            for i in idx:
                hits.append(tuple(int(mem[i]) for mem in members))
    keys = {tuple(sorted(tuple(sorted(mask_to_set(h))) for h in fam)) for fam in hits}
    return best, sorted(keys)


def sparse_search(n, m, k, objective="sum", allow_empty=False):
    """Pure-Python enumeration of all families; only for tiny k*n."""
    subsets = [frozenset(s) for r in range(n + 1) for s in itertools.combinations(range(1, n + 1), r)]
    if not allow_empty:
        subsets = [s for s in subsets if s]
    best, keys = None, set()
    for fam in itertools.combinations_with_replacement(subsets, k):
        if has_rainbow_sets(fam, m):
            continue
        sizes = [len(s) for s in fam]
        value = sum(sizes) if objective == "sum" else int(np.prod(sizes))
        key = tuple(sorted(tuple(sorted(s)) for s in fam))
        if best is None or value > best:
            best, keys = value, {key}
        elif value == best:
            keys.add(key)
    return best, sorted(keys)


if __name__ == "__main__":
    import sys
    import time

    for n, m, obj, empty in [
        (3, 2, "sum", False), (4, 2, "sum", False), (5, 2, "sum", False),
        (6, 2, "sum", False), (7, 2, "sum", False), (8, 2, "sum", False),
        (5, 2, "sum", True), (5, 2, "product", False),
        (4, 3, "sum", False), (5, 3, "sum", False), (6, 3, "sum", False),
        (6, 3, "product", False),
    ]:
        t = time.time()
        print(n, m, obj, empty, dense_search(n, m, obj, empty), f"{time.time() - t:.1f}s")
        sys.stdout.flush()
