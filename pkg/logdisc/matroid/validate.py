"""Uniformity, flats at infinity and the irreducibility hypothesis."""

from __future__ import annotations

from itertools import combinations
import logging

import numpy as np

from logdisc.algebra import linalg
from logdisc.model.arrangement import Arrangement, ArrangementError, ValidationReport, make_arrangement

logger = logging.getLogger(__name__)

MAX_SUBSET_FORMS = 16


def check_size(arr: Arrangement) -> None:
    if arr.n_plus_1 > MAX_SUBSET_FORMS:
        raise ArrangementError(
            f"size cap exceeded: subset enumeration supports at most {MAX_SUBSET_FORMS} hyperplanes, got {arr.n_plus_1}"
        )


def all_minors_nonzero(rows: list[list], size: int, picks: tuple[int, ...] | None = None) -> bool:
    indices = picks if picks is not None else tuple(range(len(rows)))
    return all(linalg.det([rows[i] for i in subset]) != 0 for subset in combinations(indices, size))


def is_uniform_L(arr: Arrangement) -> bool:
    return all_minors_nonzero(arr.L_rows, arr.d + 1)


def is_uniform_A(arr: Arrangement) -> bool:
    return all_minors_nonzero([list(row) for row in arr.A], arr.d)


def flat_at_infinity_witness(arr: Arrangement) -> list[int] | None:
    """First subset (by size, then lexicographic) meeting only at infinity."""
    check_size(arr)
    L = arr.L_rows
    A = [list(row) for row in arr.A]
    for size in range(2, arr.n_plus_1 + 1):
        for subset in combinations(range(arr.n_plus_1), size):
            rank_L = linalg.rank([L[i] for i in subset])
            rank_A = linalg.rank([A[i] for i in subset])
            if rank_L == rank_A + 1 and rank_L <= arr.d:
                return list(subset)
    return None


def validate(arr: Arrangement) -> ValidationReport:
    uniform_L = is_uniform_L(arr)
    uniform_A = is_uniform_A(arr)
    witness = flat_at_infinity_witness(arr)
    report = ValidationReport(
        essential=True,
        uniform_L=uniform_L,
        uniform_A=uniform_A,
        doubly_uniform=uniform_L and uniform_A,
        flats_at_infinity=witness is not None,
        witness=witness,
    )
    # Closures are taken in P^d.
    report.notes.append("hyperplane closures taken in projective d-space")
    logger.debug("validated arrangement: %s", report)
    return report


def irreducibility_hypothesis(arr: Arrangement) -> list[int] | None:
    """A (d+2)-subset whose L- and A-rows are both uniform, if any."""
    L = arr.L_rows
    A = [list(row) for row in arr.A]
    for subset in combinations(range(arr.n_plus_1), arr.d + 2):
        if all_minors_nonzero(L, arr.d + 1, subset) and all_minors_nonzero(A, arr.d, subset):
            return list(subset)
    return None


def sample_generic_arrangement(d: int, n_plus_1: int, rng: np.random.Generator, bound: int = 9, attempts: int = 200) -> Arrangement:
    """Random small-integer doubly uniform arrangement."""
    if n_plus_1 < d + 1:
        raise ArrangementError(f"Need at least {d + 1} hyperplanes in dimension {d}")
    for _ in range(attempts):
        b = [int(v) for v in rng.integers(-bound, bound + 1, size=n_plus_1)]
        A = [[int(v) for v in row] for row in rng.integers(-bound, bound + 1, size=(n_plus_1, d))]
        try:
            arr = make_arrangement(d, b, A)
        except ArrangementError:
            continue
        if is_uniform_L(arr) and is_uniform_A(arr):
            return arr
    raise ArrangementError(f"No doubly uniform arrangement found after {attempts} draws")
