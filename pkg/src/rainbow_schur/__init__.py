"""Exact tools for families of sets with no rainbow solution to x_1 + ... + x_m = x_{m+1}."""

from .core import (
    ContractError,
    DomainError,
    Family,
    FamilyStats,
    IntSet,
    Problem,
    RangeError,
    SINGLETON,
    canonical_family,
    canonical_multiset,
    family_stats,
    is_arith_progression,
    is_suffix_interval,
    make_family,
    make_set,
)
from .rainbow import Witness, find_rainbow, iterated_sumset, naive_find_rainbow, verify_witness
from .compress import compress, lift_witness
from .bounds import (
    OddsAll,
    SpecialEven,
    SuffixIntervals,
    TrivialWithEmpty,
    classify,
    construct_extremal,
    enumerate_theorem_families,
    product_bound,
    sum_bound,
)
from .search import BudgetExceeded, SearchReport, check_theorem, search_max

__version__ = "0.1.0"
