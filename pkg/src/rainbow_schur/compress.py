"""Compression of a family into nested layers, and lifting witnesses back.

Layer i of the compressed family holds the elements lying in at least i of the
original sets.  Total size and the multiplicity profile are unchanged, and any
rainbow solution of the layers can be turned into one of the original family,
so a rainbow-free family always compresses to a rainbow-free nested family.
The converse fails: ({1}, {3}, {2}) has 1 + 2 = 3 but compresses to
([1, 3], {}, {}).
"""

from __future__ import annotations

from .core import ContractError, Family, IntSet, multiplicities
from .rainbow import Witness, verify_witness


def compress(F: Family) -> Family:
    n, k = F.problem.n, F.problem.k
    layers = [0] * k
    for x, count in multiplicities(F).items():
        for i in range(count):
            layers[i] |= 1 << x
    return Family(F.problem, tuple(IntSet(n, mask) for mask in layers))


def lift_witness(F: Family, wB: Witness) -> Witness:
    """Turn a witness for ``compress(F)`` into a witness for ``F``.

    Entries are handled in increasing layer order.  An element of layer i is in
    at least i original sets and fewer than i have been used when it comes up,
    so a free set always exists; ties go to the smallest set index.
    """
    if not verify_witness(compress(F), wB):
        raise ContractError(f"{wB} is not a witness for the compressed family")
    entries = [(i, v, "source") for i, v in wB.sources] + [(*wB.target, "target")]
    used: set[int] = set()
    sources = []
    target = None
    for _, value, role in sorted(entries):
        j = next(
            (j for j in range(1, F.problem.k + 1) if j not in used and value in F[j]),
            None,
        )
        if j is None:  # pragma: no cover - excluded by the counting argument
            raise ContractError(f"no unused set contains {value}")
        used.add(j)
        if role == "target":
            target = (j, value)
        else:
            sources.append((j, value))
    lifted = Witness(tuple(sources), target)
    assert verify_witness(F, lifted)
    return lifted
