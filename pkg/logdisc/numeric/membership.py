"""Numerical membership in the logarithmic discriminant and the Varchenko check."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
import logging
from typing import Any, Sequence

import numpy as np

from logdisc.config import DEFAULT_SOLVER, DEFAULT_TOLERANCES, SolverSettings, Tolerances
from logdisc.matroid.characteristic import region_counts
from logdisc.model.arrangement import Arrangement
from logdisc.model.poly import to_fraction
from logdisc.model.solutions import CriticalSolutions, MembershipResult, Verdict, VarchenkoReport
from logdisc.numeric.critical import SolverError, solve_critical

logger = logging.getLogger(__name__)


def _degenerate_reason(solutions: CriticalSolutions, tolerances: Tolerances) -> str | None:
    certified = solutions.certified
    if any(p.relative_hessdet < tolerances.degenerate for p in certified):
        return "hessian"
    for p, q in combinations(certified, 2):
        if np.linalg.norm(np.asarray(p.x) - np.asarray(q.x)) < tolerances.collision:
            return "collision"
    return None


def membership_numeric(
    arr: Arrangement,
    u: Sequence[Any],
    seed: int = 0,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    settings: SolverSettings = DEFAULT_SOLVER,
) -> MembershipResult:
    """outside / near_discriminant / incomplete; never an exact decision."""
    seeds: list[int] = []
    last: CriticalSolutions | None = None
    consistent_short = True
    for attempt in range(settings.retry_seeds):
        current_seed = seed + attempt
        seeds.append(current_seed)
        solutions = solve_critical(arr, u, current_seed, tolerances, settings)
        last = solutions
        reason = _degenerate_reason(solutions, tolerances)
        if reason is not None:
            return MembershipResult(Verdict.NEAR_DISCRIMINANT, reason, solutions, seeds)
        found = len(solutions.certified)
        if found >= solutions.count_expected:
            return MembershipResult(Verdict.OUTSIDE, None, solutions, seeds)
        if solutions.suspect:
            consistent_short = False
        logger.info("membership: seed %d found %d of %d points", current_seed, found, solutions.count_expected)
    assert last is not None
    if consistent_short:
        return MembershipResult(Verdict.NEAR_DISCRIMINANT, "short_count", last, seeds)
    return MembershipResult(Verdict.INCOMPLETE, "suspect points", last, seeds)


def varchenko_check(
    arr: Arrangement,
    u: Sequence[Any],
    seed: int = 0,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    settings: SolverSettings = DEFAULT_SOLVER,
) -> VarchenkoReport:
    """All critical points real and nondegenerate, one per bounded region."""
    exponents: list[Fraction] = [to_fraction(v) for v in u]
    if any(v <= 0 for v in exponents):
        raise SolverError("Varchenko check needs strictly positive exponents")
    _, bounded = region_counts(arr)
    solutions = solve_critical(arr, exponents, seed, tolerances, settings)
    certified = solutions.certified
    max_imag = max((abs(z.imag) / (1.0 + abs(z)) for p in certified for z in p.x), default=0.0)
    min_hess = min((p.relative_hessdet for p in certified), default=0.0)
    failures = []
    if len(certified) != bounded:
        failures.append(f"found {len(certified)} critical points, expected {bounded}")
    if max_imag >= tolerances.real:
        failures.append(f"non-real critical point (relative imaginary part {max_imag:.3e})")
    if certified and min_hess < tolerances.degenerate:
        failures.append(f"degenerate Hessian (relative value {min_hess:.3e})")
    return VarchenkoReport(
        passed=not failures,
        count=len(certified),
        expected=bounded,
        max_imag=max_imag,
        min_relative_hessdet=min_hess,
        solutions=solutions,
        failures=failures,
    )
