"""Closed-form optima and the extremal families attaining them.

For m >= 2, k >= m+1, n >= m+1 and n = m*q + r (0 <= r < m), a family of k
nonempty subsets of [n] with no rainbow solution has total size at most
k(n - q) + m - (r + 1).  Equality holds exactly for

* ``SuffixIntervals``: k - m copies of [q+1, n] plus [t_i, n] for thresholds
  1 <= t_1 <= ... <= t_m <= q + 1 summing to n + 1;
* ``SpecialEven``: k = m + 1, r = 0, m copies of [q, n] and one [q+1, n-1];
* ``OddsAll``: m = 2, n odd, every set the odd numbers of [n].

With empty sets allowed, ``TrivialWithEmpty`` (m copies of [n], the rest
empty) joins the list whenever m*n reaches the bound.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator, Union

from .core import (
    DomainError,
    Family,
    IntSet,
    Problem,
    canonical_family,
    canonical_multiset,
    interval_mask,
    is_suffix_interval,
)

log = logging.getLogger(__name__)

PRINTED = "printed"
CORRECTED = "corrected"


@dataclass(frozen=True)
class SuffixIntervals:
    thresholds: tuple[int, ...]
    tag = "suffix"

    def to_json_obj(self) -> dict:
        return {"class": self.tag, "thresholds": list(self.thresholds)}


@dataclass(frozen=True)
class SpecialEven:
    tag = "special"

    def to_json_obj(self) -> dict:
        return {"class": self.tag}


@dataclass(frozen=True)
class OddsAll:
    tag = "odd"

    def to_json_obj(self) -> dict:
        return {"class": self.tag}


@dataclass(frozen=True)
class TrivialWithEmpty:
    tag = "trivial"

    def to_json_obj(self) -> dict:
        return {"class": self.tag}


ExtremalClass = Union[SuffixIntervals, SpecialEven, OddsAll, TrivialWithEmpty]


def sum_bound(P: Problem) -> int:
    P.require_hypotheses()
    return P.k * (P.n - P.q) + P.m - (P.r + 1)


def product_bound(P: Problem, interpretation: str = CORRECTED) -> int:
    """Maximum of the product of set sizes.

    ``printed`` uses the exponents n - m + (r+1) and m - (r+1); those do not
    add up to k and the value is unattainable.  ``corrected`` replaces the
    first by k - m + (r+1), which is what the extremal family
    (m - (r+1) copies of [q, n], the rest [q+1, n]) actually gives.
    """
    P.require_hypotheses()
    n, m, k, r = P.n, P.m, P.k, P.r
    high = n - n // m + 1
    low = n - n // m
    if interpretation == PRINTED:
        return high ** (m - (r + 1)) * low ** (n - m + (r + 1))
    if interpretation == CORRECTED:
        return high ** (m - (r + 1)) * low ** (k - m + (r + 1))
    raise DomainError(f"unknown interpretation {interpretation!r}")


def _odd_mask(n: int) -> int:
    return sum(1 << x for x in range(1, n + 1, 2))


def _check_class(P: Problem, c: ExtremalClass) -> None:
    n, m, k, q, r = P.n, P.m, P.k, P.q, P.r
    if isinstance(c, SuffixIntervals):
        t = c.thresholds
        if k < m or len(t) != m:
            raise DomainError(f"need m={m} thresholds and k >= m, got {t}")
        if not all(1 <= x <= q + 1 for x in t) or sum(t) != n + 1:
            raise DomainError(f"thresholds {t} must lie in [1, {q + 1}] and sum to {n + 1}")
    elif isinstance(c, SpecialEven):
        if r != 0 or k != m + 1:
            raise DomainError(f"special family needs r = 0 and k = m+1 (n={n}, m={m}, k={k})")
    elif isinstance(c, OddsAll):
        if m != 2 or n % 2 == 0:
            raise DomainError(f"odd family needs m = 2 and n odd (n={n}, m={m})")
    elif isinstance(c, TrivialWithEmpty):
        if k < m:
            raise DomainError(f"trivial family needs k >= m (m={m}, k={k})")
    else:
        raise DomainError(f"not an extremal class: {c!r}")


def _masks_for(P: Problem, c: ExtremalClass) -> list[int]:
    n, m, k, q = P.n, P.m, P.k, P.q
    if isinstance(c, SuffixIntervals):
        return [interval_mask(t, n) for t in c.thresholds] + [interval_mask(q + 1, n)] * (k - m)
    if isinstance(c, SpecialEven):
        return [interval_mask(q, n)] * m + [interval_mask(q + 1, n - 1)]
    if isinstance(c, OddsAll):
        return [_odd_mask(n)] * k
    return [interval_mask(1, n)] * m + [0] * (k - m)


def construct_extremal(P: Problem, c: ExtremalClass) -> Family:
    _check_class(P, c)
    return Family(P, tuple(IntSet(P.n, mask) for mask in _masks_for(P, c)))


def threshold_vectors(n: int, m: int) -> Iterator[tuple[int, ...]]:
    """Nondecreasing t_1 <= ... <= t_m in [1, q+1] with sum n + 1."""
    cap = n // m + 1

    def rec(prefix: tuple[int, ...], lo: int, remaining: int) -> Iterator[tuple[int, ...]]:
        slots = m - len(prefix)
        if slots == 0:
            if remaining == 0:
                yield prefix
            return
        for t in range(lo, cap + 1):
            if t * slots > remaining:
                break
            if cap * slots < remaining:
                continue
            yield from rec(prefix + (t,), t, remaining - t)

    yield from rec((), 1, n + 1)


def theorem_classes(P: Problem, allow_empty: bool = False) -> list[ExtremalClass]:
    P.require_hypotheses()
    classes: list[ExtremalClass] = [SuffixIntervals(t) for t in threshold_vectors(P.n, P.m)]
    if P.r == 0 and P.k == P.m + 1:
        classes.append(SpecialEven())
    if P.m == 2 and P.n % 2 == 1:
        classes.append(OddsAll())
    if allow_empty:
        classes.append(TrivialWithEmpty())
    return classes


def enumerate_theorem_families(P: Problem, allow_empty: bool = False) -> list[Family]:
    """Every family named by the equality characterization, canonical and deduplicated."""
    seen: dict[tuple, Family] = {}
    for c in theorem_classes(P, allow_empty):
        F = canonical_family(construct_extremal(P, c))
        seen.setdefault(canonical_multiset(F), F)
    return [seen[key] for key in sorted(seen)]


def corollary_families(P: Problem) -> list[Family]:
    """Families claimed to maximise the product of sizes."""
    P.require_hypotheses()
    m, q, r, n = P.m, P.q, P.r, P.n
    classes: list[ExtremalClass] = [SuffixIntervals((q,) * (m - (r + 1)) + (q + 1,) * (r + 1))]
    if m == 2 and n % 2 == 1:
        classes.append(OddsAll())
    fams = {canonical_multiset(F): F for F in (canonical_family(construct_extremal(P, c)) for c in classes)}
    return [fams[key] for key in sorted(fams)]


def classify(F: Family) -> list[ExtremalClass]:
    """All classes whose construction equals F up to the order of the sets."""
    P = F.problem
    n, m, k, q = P.n, P.m, P.k, P.q
    key = canonical_multiset(F)
    candidates: list[ExtremalClass] = []

    thresholds = [is_suffix_interval(A) for A in F.sets]
    if k >= m and None not in thresholds:
        rest = sorted(thresholds)
        for _ in range(k - m):
            if q + 1 in rest:
                rest.remove(q + 1)
        if len(rest) == m:
            candidates.append(SuffixIntervals(tuple(rest)))
    if P.r == 0 and k == m + 1 and q >= 1:
        candidates.append(SpecialEven())
    if m == 2 and n % 2 == 1:
        candidates.append(OddsAll())
    if k >= m:
        candidates.append(TrivialWithEmpty())

    found = []
    for c in candidates:
        try:
            built = construct_extremal(P, c)
        except DomainError:
            continue
        if canonical_multiset(built) == key:
            found.append(c)
    if len(found) > 1:
        log.info("classes coincide for %s: %s", key, found)
    return found
