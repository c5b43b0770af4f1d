"""Integer sets, families and the structural predicates shared by every module.

Sets are stored as Python ints used as bit vectors: bit ``x`` is set iff the
element ``x`` is a member.  Bit 0 is never set for an :class:`IntSet`, which
keeps element values and bit positions identical and makes a sumset a plain
shift-or (see :mod:`rainbow_schur.rainbow`).
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence, Union


class RangeError(ValueError):
    """An element lies outside the universe of its set."""


class DomainError(ValueError):
    """Parameters or inputs outside the domain an operation is defined on."""


class ContractError(RuntimeError):
    """A caller broke an operation's documented precondition."""


# Returned by is_arith_progression for one-element sets.
SINGLETON = "singleton"


@dataclass(frozen=True)
class Problem:
    n: int
    m: int
    k: int

    def __post_init__(self) -> None:
        for name in ("n", "m", "k"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise DomainError(f"{name} must be a positive integer, got {value!r}")

    @property
    def q(self) -> int:
        return self.n // self.m

    @property
    def r(self) -> int:
        return self.n - self.m * self.q

    def satisfies_hypotheses(self) -> bool:
        return self.m >= 2 and self.k >= self.m + 1 and self.n >= self.m + 1

    def require_hypotheses(self) -> None:
        """Raise :class:`DomainError` unless m >= 2, k >= m+1 and n >= m+1."""
        if not self.satisfies_hypotheses():
            raise DomainError(
                f"need m >= 2, k >= m+1, n >= m+1; got n={self.n}, m={self.m}, k={self.k}"
            )


@dataclass(frozen=True)
class IntSet:
    universe_max: int
    mask: int = 0

    def __post_init__(self) -> None:
        if self.universe_max < 1:
            raise DomainError(f"universe_max must be >= 1, got {self.universe_max}")
        if self.mask < 0 or self.mask & 1 or self.mask >> (self.universe_max + 1):
            raise RangeError(f"mask {self.mask:#x} has bits outside [1, {self.universe_max}]")

    def __contains__(self, x: object) -> bool:
        return isinstance(x, int) and 1 <= x <= self.universe_max and bool(self.mask >> x & 1)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        mask = self.mask
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def __bool__(self) -> bool:
        return self.mask != 0

    def elements(self) -> tuple[int, ...]:
        return tuple(self)

    def min(self) -> int:
        if not self.mask:
            raise DomainError("min of empty set")
        return (self.mask & -self.mask).bit_length() - 1

    def max(self) -> int:
        if not self.mask:
            raise DomainError("max of empty set")
        return self.mask.bit_length() - 1

    def __repr__(self) -> str:
        return f"IntSet({self.universe_max}, {list(self)})"


def make_set(universe_max: int, elements: Iterable[int]) -> IntSet:
    """Build the set of ``elements`` inside [1, universe_max]; duplicates collapse."""
    mask = 0
    for x in elements:
        if not isinstance(x, int) or isinstance(x, bool):
            raise RangeError(f"element {x!r} is not an integer")
        if not 1 <= x <= universe_max:
            raise RangeError(f"element {x} outside [1, {universe_max}]")
        mask |= 1 << x
    return IntSet(universe_max, mask)


def interval(universe_max: int, lo: int, hi: int) -> IntSet:
    """[lo, hi] inside [1, universe_max]; empty when lo > hi."""
    if lo > hi:
        return IntSet(universe_max, 0)
    return make_set(universe_max, range(lo, hi + 1))


def interval_mask(lo: int, hi: int) -> int:
    if lo > hi:
        return 0
    return ((1 << (hi - lo + 1)) - 1) << lo


def is_suffix_interval(A: IntSet) -> Optional[int]:
    """Return t when A == [t, universe_max], else None.  The empty set is not a suffix."""
    if not A.mask:
        return None
    t = A.min()
    if A.mask == interval_mask(t, A.universe_max):
        return t
    return None


def is_arith_progression(A: IntSet) -> Union[int, str, None]:
    """Common difference of A, :data:`SINGLETON` for |A| = 1, None if A is no AP."""
    elems = A.elements()
    if not elems:
        raise DomainError("arithmetic progression test on empty set")
    if len(elems) == 1:
        return SINGLETON
    d = elems[1] - elems[0]
    if all(b - a == d for a, b in zip(elems, elems[1:])):
        return d
    return None


@dataclass(frozen=True)
class Family:
    problem: Problem
    sets: tuple[IntSet, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "sets", tuple(self.sets))
        if len(self.sets) != self.problem.k:
            raise DomainError(f"family has {len(self.sets)} sets, expected k={self.problem.k}")
        for A in self.sets:
            if A.universe_max != self.problem.n:
                raise DomainError(
                    f"set universe {A.universe_max} differs from n={self.problem.n}"
                )

    @property
    def masks(self) -> tuple[int, ...]:
        return tuple(A.mask for A in self.sets)

    def __getitem__(self, index: int) -> IntSet:
        """1-based access, matching the indexing of witnesses."""
        if not 1 <= index <= len(self.sets):
            raise IndexError(index)
        return self.sets[index - 1]

    def to_json_obj(self) -> dict:
        return {
            "n": self.problem.n,
            "m": self.problem.m,
            "sets": [list(A) for A in self.sets],
        }


def make_family(n: int, m: int, sets: Sequence[Iterable[int]]) -> Family:
    """Family over [1, n] from explicit element lists; k is len(sets)."""
    return Family(Problem(n, m, len(sets)), tuple(make_set(n, s) for s in sets))


def family_from_masks(problem: Problem, masks: Iterable[int]) -> Family:
    return Family(problem, tuple(IntSet(problem.n, mask) for mask in masks))


def family_from_json_obj(obj: dict) -> Family:
    """Parse the ``{"n", "m", "sets"}`` family document; elements must increase strictly."""
    try:
        n, m, sets = obj["n"], obj["m"], obj["sets"]
    except (KeyError, TypeError) as exc:
        raise DomainError(f"family document missing field: {exc}") from None
    if not isinstance(sets, list) or not all(isinstance(s, list) for s in sets):
        raise DomainError("'sets' must be a list of integer lists")
    for s in sets:
        if any(b <= a for a, b in zip(s, s[1:])):
            raise DomainError(f"set {s} is not strictly increasing")
    return make_family(n, m, sets)


def load_family(path: Union[str, Path]) -> Family:
    with open(path) as fh:
        return family_from_json_obj(json.load(fh))


@dataclass(frozen=True)
class FamilyStats:
    total: int
    product: int
    nested: bool
    multiplicity: dict[int, int]


def multiplicities(F: Family) -> Counter:
    counts: Counter = Counter()
    for A in F.sets:
        counts.update(A)
    return counts


def family_stats(F: Family) -> FamilyStats:
    sizes = [len(A) for A in F.sets]
    product = 1
    for s in sizes:
        product *= s
    masks = F.masks
    nested = all(b & ~a == 0 for a, b in zip(masks, masks[1:]))
    return FamilyStats(sum(sizes), product, nested, dict(sorted(multiplicities(F).items())))


def canonical_multiset(F: Family) -> tuple:
    """Order-insensitive key: ``(n, sorted element tuples)``."""
    return (F.problem.n, tuple(sorted(A.elements() for A in F.sets)))


def canonical_family(F: Family) -> Family:
    """The same family with its sets reordered by :func:`canonical_multiset`."""
    order = sorted(F.sets, key=IntSet.elements)
    return Family(F.problem, tuple(order))
