"""Exhaustive recomputation of optima over rainbow-free families.

Two search spaces:

``full``
    every k-tuple of subsets of [n].  The pruned search walks multisets only
    (set ranks nondecreasing, ranks ordered by size then content) because both
    objectives and rainbow-freeness ignore the order of the sets.  Without
    pruning, all 2^(k n) tuples are visited in lexicographic order of their
    concatenated characteristic vectors.
``nested``
    layers B_1 >= ... >= B_k given by a multiplicity c(x) in {0..k} for each
    x; (k+1)^n candidates.  Sum objective only.

Pruning never uses the closed-form bounds unless ``assume_theorem`` is set.
Branches are cut when (a) the partial family already has a rainbow solution,
which no extension can remove, or (b) even the most generous completion falls
below the best value seen.  The initial best value is the best rainbow-free
family of k equal suffix intervals, checked by the detector.

The space is split into fixed work units (first set / first multiplicities);
each unit runs with the same starting floor and is merged in unit order, so
reports do not depend on the number of workers.
"""

from __future__ import annotations

import functools
import itertools
import logging
import multiprocessing
import os
import time
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from . import bounds
from .core import (
    ContractError,
    DomainError,
    Family,
    Problem,
    canonical_family,
    canonical_multiset,
    family_from_masks,
    interval_mask,
)
from .rainbow import creates_rainbow, empty_sum_table, find_rainbow, has_rainbow, naive_find_rainbow

log = logging.getLogger(__name__)

SUM = "sum"
PRODUCT = "product"
FULL = "full"
NESTED = "nested"

BUDGET_ENV = "RAINBOW_SCHUR_BUDGET"
DEFAULT_BUDGET = 2**26

# Maximizers of families with k*n up to this many bits are also re-checked by
# the brute-force oracle.
NAIVE_RECHECK_BITS = 18


class BudgetExceeded(RuntimeError):
    def __init__(self, required: int, budget: int):
        super().__init__(f"search space has {required} candidates, budget is {budget}")
        self.required = required
        self.budget = budget


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"{BUDGET_ENV}={raw!r} is not an integer") from None


def space_size(P: Problem, mode: str) -> int:
    if mode == FULL:
        return 2 ** (P.k * P.n)
    if mode == NESTED:
        return (P.k + 1) ** P.n
    raise DomainError(f"unknown mode {mode!r}")


@dataclass
class SearchReport:
    problem: Problem
    objective: str
    mode: str
    allow_empty: bool
    optimum: Optional[int]
    maximizers: Optional[list[Family]]
    families_examined: int
    nodes: int
    prune: bool = True
    assume_theorem: bool = False
    elapsed: float = field(default=0.0, compare=False)

    def maximizer_keys(self) -> list[tuple]:
        return [canonical_multiset(F) for F in self.maximizers or []]

    def to_json_obj(self, include_timing: bool = False) -> dict:
        P = self.problem
        obj = {
            "n": P.n,
            "m": P.m,
            "k": P.k,
            "objective": self.objective,
            "mode": self.mode,
            "allow_empty": self.allow_empty,
            "prune": self.prune,
            "assume_theorem": self.assume_theorem,
            "optimum": self.optimum,
            "families_examined": self.families_examined,
            "nodes": self.nodes,
        }
        if self.maximizers is not None:
            obj["maximizers"] = [[list(A) for A in F.sets] for F in self.maximizers]
        if include_timing:
            obj["elapsed_s"] = round(self.elapsed, 6)
        return obj


def objective_value(sizes: Iterable[int], objective: str) -> int:
    if objective == SUM:
        return sum(sizes)
    value = 1
    for s in sizes:
        value *= s
    return value


@dataclass
class _UnitResult:
    best: Optional[int] = None
    maximizers: list[tuple[int, ...]] = field(default_factory=list)
    leaves: int = 0
    nodes: int = 0

    def offer(self, value: int, masks: Sequence[int], keep_all: bool) -> None:
        if self.best is None or value > self.best:
            self.best = value
            self.maximizers = [tuple(masks)]
        elif value == self.best and keep_all:
            self.maximizers.append(tuple(masks))


@dataclass(frozen=True)
class _Task:
    mode: str
    n: int
    m: int
    k: int
    objective: str
    allow_empty: bool
    enumerate_all: bool
    floor: int
    prune: bool
    unit: tuple[int, ...]


# ---------------------------------------------------------------- full space


@functools.lru_cache(maxsize=None)
def _lex_masks(n: int) -> tuple[int, ...]:
    """All subsets of [n] in lexicographic order of (1 in A, 2 in A, ..., n in A)."""
    out = []
    for bits in itertools.product((0, 1), repeat=n):
        out.append(sum(1 << (x + 1) for x, b in enumerate(bits) if b))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _ranked_masks(n: int, allow_empty: bool) -> tuple[int, ...]:
    """Candidate sets for the multiset walk: larger first, then reverse lex."""
    masks = [mask for mask in reversed(_lex_masks(n)) if mask or allow_empty]
    masks.sort(key=lambda mask: -mask.bit_count())
    return tuple(masks)


def _full_pruned_unit(task: _Task) -> _UnitResult:
    k, m = task.k, task.m
    ranked = _ranked_masks(task.n, task.allow_empty)
    sizes = [mask.bit_count() for mask in ranked]
    is_sum = task.objective == SUM
    res = _UnitResult()
    best = task.floor
    masks: list[int] = []

    def walk(start: int, table: list, acc: int) -> None:
        nonlocal best
        depth = len(masks)
        for rank in range(start, len(ranked)):
            size = sizes[rank]
            left = k - depth
            bound = acc + size * left if is_sum else acc * size**left
            if bound < best:
                break
            mask = ranked[rank]
            res.nodes += 1
            hit, extended = creates_rainbow(table, masks, mask, m)
            if hit:
                continue
            value = acc + size if is_sum else acc * size
            masks.append(mask)
            if depth + 1 == k:
                res.leaves += 1
                res.offer(value, masks, task.enumerate_all)
                if value > best:
                    best = value
            else:
                walk(rank, extended, value)
            masks.pop()

    first = task.unit[0]
    size = sizes[first]
    bound = size * k if is_sum else size**k
    if bound < best:
        return res
    res.nodes += 1
    _, table = creates_rainbow(empty_sum_table(m), [], ranked[first], m)
    masks.append(ranked[first])
    if k == 1:
        res.leaves += 1
        res.offer(size, masks, task.enumerate_all)
    else:
        walk(first, table, size)
    return res


def _full_plain_unit(task: _Task) -> _UnitResult:
    lex = _lex_masks(task.n)
    res = _UnitResult()
    first = lex[task.unit[0]]
    for rest in itertools.product(lex, repeat=task.k - 1):
        masks = (first,) + rest
        res.nodes += 1
        if not task.allow_empty and not all(masks):
            continue
        res.leaves += 1
        if has_rainbow(masks, task.m):
            continue
        value = objective_value((mask.bit_count() for mask in masks), task.objective)
        res.offer(value, masks, task.enumerate_all)
    return res


# -------------------------------------------------------------- nested space


def _layers(mult: Sequence[int], k: int) -> list[int]:
    layers = [0] * k
    for x, c in enumerate(mult, start=1):
        for i in range(c):
            layers[i] |= 1 << x
    return layers


def _nested_pruned_unit(task: _Task) -> _UnitResult:
    n, k, m = task.n, task.k, task.m
    res = _UnitResult()
    best = task.floor
    mult = list(task.unit)
    layers = _layers(mult, k)
    res.nodes += 1
    if has_rainbow(layers, m):
        return res

    def walk(x: int, acc: int) -> None:
        nonlocal best
        if x > n:
            res.leaves += 1
            if not task.allow_empty and not layers[k - 1]:
                return
            res.offer(acc, layers, task.enumerate_all)
            best = max(best, acc)
            return
        for c in range(k, -1, -1):
            if acc + c + k * (n - x) < best:
                break
            res.nodes += 1
            bit = 1 << x
            for i in range(c):
                layers[i] |= bit
            if not c or not has_rainbow(layers, m):
                walk(x + 1, acc + c)
            for i in range(c):
                layers[i] &= ~bit

    walk(len(mult) + 1, sum(mult))
    return res


def _nested_plain_unit(task: _Task) -> _UnitResult:
    n, k = task.n, task.k
    res = _UnitResult()
    prefix = task.unit
    for tail in itertools.product(range(k, -1, -1), repeat=n - len(prefix)):
        mult = prefix + tail
        layers = _layers(mult, k)
        res.nodes += 1
        if not task.allow_empty and not layers[k - 1]:
            continue
        res.leaves += 1
        if has_rainbow(layers, task.m):
            continue
        res.offer(sum(mult), layers, task.enumerate_all)
    return res


# ------------------------------------------------------------------- driver


def _units(P: Problem, mode: str, allow_empty: bool, prune: bool) -> list[tuple[int, ...]]:
    if mode == FULL:
        count = len(_ranked_masks(P.n, allow_empty)) if prune else len(_lex_masks(P.n))
        return [(i,) for i in range(count)]
    depth = min(P.n, 2)
    return [tuple(p) for p in itertools.product(range(P.k, -1, -1), repeat=depth)]


def _dispatch(task: _Task) -> _UnitResult:
    if task.mode == FULL:
        return _full_pruned_unit(task) if task.prune else _full_plain_unit(task)
    return _nested_pruned_unit(task) if task.prune else _nested_plain_unit(task)


def seed_floor(P: Problem, objective: str, assume_theorem: bool = False) -> int:
    """A value attained by some rainbow-free family, used as the pruning floor.

    By default: best family of k equal suffix intervals [t, n] that the
    detector confirms rainbow-free.  With ``assume_theorem``, the closed-form
    optimum instead (circular as a verification; opt-in only).
    """
    if assume_theorem:
        if objective == SUM:
            return bounds.sum_bound(P)
        return bounds.product_bound(P, bounds.CORRECTED)
    floor = 0
    for t in range(1, P.n + 1):
        masks = [interval_mask(t, P.n)] * P.k
        if not has_rainbow(masks, P.m):
            size = P.n - t + 1
            floor = max(floor, objective_value([size] * P.k, objective))
    return floor


def search_max(
    P: Problem,
    objective: str = SUM,
    mode: str = FULL,
    allow_empty: bool = False,
    enumerate_all: bool = False,
    workers: int = 1,
    budget: Optional[int] = None,
    prune: bool = True,
    assume_theorem: bool = False,
) -> SearchReport:
    """Exact maximum of ``objective`` over rainbow-free families of P.

    Raises :class:`BudgetExceeded` when the raw space (2^(kn) for ``full``,
    (k+1)^n for ``nested``) exceeds ``budget``, and :class:`ContractError`
    for the nested space with the product objective.
    """
    if objective not in (SUM, PRODUCT):
        raise DomainError(f"unknown objective {objective!r}")
    if mode == NESTED and objective == PRODUCT:
        raise ContractError("nested search only preserves the sum objective")
    budget = default_budget() if budget is None else budget
    required = space_size(P, mode)
    if required > budget:
        raise BudgetExceeded(required, budget)
    if workers < 1:
        raise DomainError("workers must be >= 1")

    started = time.perf_counter()
    floor = seed_floor(P, objective, assume_theorem) if prune else 0
    tasks = [
        _Task(mode, P.n, P.m, P.k, objective, allow_empty, enumerate_all, floor, prune, unit)
        for unit in _units(P, mode, allow_empty, prune)
    ]
    if workers == 1:
        results = [_dispatch(t) for t in tasks]
    else:
        with multiprocessing.Pool(workers) as pool:
            results = pool.map(_dispatch, tasks, chunksize=1)

    optimum: Optional[int] = None
    found: list[tuple[int, ...]] = []
    for res in results:
        if res.best is None:
            continue
        if optimum is None or res.best > optimum:
            optimum, found = res.best, list(res.maximizers)
        elif res.best == optimum:
            found.extend(res.maximizers)

    maximizers = None
    if enumerate_all:
        unique: dict[tuple, Family] = {}
        for masks in found:
            F = canonical_family(family_from_masks(P, masks))
            unique.setdefault(canonical_multiset(F), F)
        maximizers = [unique[key] for key in sorted(unique)]
        for F in maximizers:
            _recheck(F, optimum, objective)

    return SearchReport(
        problem=P,
        objective=objective,
        mode=mode,
        allow_empty=allow_empty,
        optimum=optimum,
        maximizers=maximizers,
        families_examined=sum(r.leaves for r in results),
        nodes=sum(r.nodes for r in results),
        prune=prune,
        assume_theorem=assume_theorem,
        elapsed=time.perf_counter() - started,
    )


def _recheck(F: Family, optimum: Optional[int], objective: str) -> None:
    if find_rainbow(F) is not None:
        raise AssertionError(f"maximizer {canonical_multiset(F)} has a rainbow solution")
    if F.problem.k * F.problem.n <= NAIVE_RECHECK_BITS and naive_find_rainbow(F) is not None:
        raise AssertionError(f"oracle finds a rainbow solution in {canonical_multiset(F)}")
    if objective_value((len(A) for A in F.sets), objective) != optimum:
        raise AssertionError(f"maximizer {canonical_multiset(F)} misses the optimum")


# ------------------------------------------------------------ theorem check


def closed_form(P: Problem, objective: str, allow_empty: bool) -> int:
    if objective == SUM:
        value = bounds.sum_bound(P)
        return max(value, P.m * P.n) if allow_empty else value
    return bounds.product_bound(P, bounds.CORRECTED)


def expected_maximizers(P: Problem, objective: str, allow_empty: bool) -> list[tuple]:
    """Canonical keys of the families the closed forms name as optimal."""
    if objective == PRODUCT:
        return [canonical_multiset(F) for F in bounds.corollary_families(P)]
    target = closed_form(P, objective, allow_empty)
    return [
        canonical_multiset(F)
        for F in bounds.enumerate_theorem_families(P, allow_empty)
        if sum(len(A) for A in F.sets) == target
    ]


@dataclass
class CheckRow:
    n: int
    m: int
    k: int
    mode: str
    search_optimum: Optional[int]
    closed_form: int
    match: bool
    maximizers_match: Optional[bool]
    elapsed_ms: float

    @property
    def ok(self) -> bool:
        return self.match and self.maximizers_match is not False


def check_theorem(
    m: int,
    k: int,
    n_values: Iterable[int],
    mode: str = FULL,
    objective: str = SUM,
    allow_empty: bool = False,
    enumerate_all: bool = False,
    workers: int = 1,
    budget: Optional[int] = None,
) -> list[CheckRow]:
    """One row per n comparing the exhaustive optimum to the closed form."""
    rows = []
    for n in n_values:
        P = Problem(n, m, k)
        P.require_hypotheses()
        report = search_max(
            P, objective, mode, allow_empty, enumerate_all, workers, budget
        )
        expected = closed_form(P, objective, allow_empty)
        maximizers_match = None
        if enumerate_all:
            maximizers_match = report.maximizer_keys() == sorted(
                expected_maximizers(P, objective, allow_empty)
            )
        row = CheckRow(
            n, m, k, mode, report.optimum, expected, report.optimum == expected,
            maximizers_match, round(report.elapsed * 1000, 3),
        )
        log.info("check %s", row)
        rows.append(row)
    return rows
