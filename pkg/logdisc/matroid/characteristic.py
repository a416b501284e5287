"""Characteristic polynomial by enumeration of central subsets."""

from __future__ import annotations

from collections import Counter
import logging

from logdisc.algebra import linalg
from logdisc.matroid.validate import check_size
from logdisc.model.arrangement import Arrangement
from logdisc.model.poly import Poly
from logdisc.parallel import ordered_map

logger = logging.getLogger(__name__)


def _central_subtree(arr: Arrangement, root: int) -> Counter[int]:
    """Signed counts by t-degree over central subsets whose smallest index is `root`."""
    L = arr.L_rows
    A = [list(row) for row in arr.A]
    counts: Counter[int] = Counter()

    def visit(subset: list[int]) -> None:
        rank_A = linalg.rank([A[i] for i in subset])
        if linalg.rank([L[i] for i in subset]) != rank_A:
            return
        counts[arr.d - rank_A] += -1 if len(subset) % 2 else 1
        for nxt in range(subset[-1] + 1, arr.n_plus_1):
            visit(subset + [nxt])

    visit([root])
    return counts


def characteristic_polynomial(arr: Arrangement, var: str = "t") -> Poly:
    check_size(arr)
    totals: Counter[int] = Counter({arr.d: 1})
    for counts in ordered_map(lambda i: _central_subtree(arr, i), range(arr.n_plus_1)):
        totals.update(counts)
    return Poly.from_terms((var,), {(power,): c for power, c in totals.items() if c})


def region_counts(arr: Arrangement) -> tuple[int, int]:
    """(regions, bounded regions) of a real arrangement."""
    chi = characteristic_polynomial(arr)
    sign = -1 if arr.d % 2 else 1
    regions = sign * chi.evaluate([-1])
    bounded = sign * chi.evaluate([1])
    return int(regions), int(bounded)


def ml_degree(arr: Arrangement) -> int:
    chi = characteristic_polynomial(arr)
    sign = -1 if arr.d % 2 else 1
    return int(sign * chi.evaluate([1]))
