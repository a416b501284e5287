"""Numerical certification of candidate discriminant factors."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import logging
from typing import Any

import mpmath
import numpy as np

from logdisc.config import DEFAULT_ELIMINATION, DEFAULT_SOLVER, DEFAULT_TOLERANCES, EliminationSettings, SolverSettings, Tolerances
from logdisc.model.arrangement import Arrangement
from logdisc.model.poly import Poly
from logdisc.model.solutions import Verdict
from logdisc.numeric.membership import membership_numeric
from logdisc.numeric.roots import aberth_roots

logger = logging.getLogger(__name__)

DEGENERATE_REASONS = frozenset({"hessian", "collision"})
ROOT_DIGITS = 40


@dataclass(slots=True)
class Certificate:
    certified: bool
    samples: int
    confirmations: int
    reasons: list[str | None] = field(default_factory=list)


def sample_zero_locus(f: Poly, rng: np.random.Generator, bound: int = 7) -> list[Any] | None:
    """A point of V(f): random rational coordinates, one solved; prefers real roots."""
    used = f.used_vars()
    if not used:
        return None
    target = max(used, key=lambda v: f.degree(v))
    others = {v: Fraction(int(rng.integers(1, bound + 1)) * int(rng.choice([-1, 1])), int(rng.integers(1, bound + 1))) for v in f.vars if v != target}
    univariate = f.partial(others).with_vars((target,))
    degree = univariate.degree(target)
    if degree < 1:
        return None
    coeffs = univariate.coeffs_in(target)
    exact = [coeffs[p].constant_value() if p in coeffs else Fraction(0) for p in range(degree, -1, -1)]
    scale = max(abs(c) for c in exact)
    roots = aberth_roots(np.array([float(c / scale) for c in exact], dtype=complex), rng)
    roots = sorted(roots, key=lambda z: (abs(z.imag) > 1e-8 * (1 + abs(z)), abs(z.imag)))
    with mpmath.workdps(ROOT_DIGITS):
        mp_coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in exact]
        for guess in roots:
            try:
                root = mpmath.findroot(lambda t: mpmath.polyval(mp_coeffs, t), mpmath.mpc(guess.real, guess.imag))
            except (ValueError, ZeroDivisionError):
                root = mpmath.mpc(guess.real, guess.imag)
            if root == 0:
                continue
            if abs(mpmath.im(root)) < mpmath.mpf(10) ** (-ROOT_DIGITS + 8):
                value: Any = Fraction(mpmath.nstr(mpmath.re(root), ROOT_DIGITS - 5))
            else:
                value = complex(root)
            point = {**others, target: value}
            return [point[v] for v in f.vars]
    return None


def certify_factor(
    arr: Arrangement,
    factor: Poly,
    rng: np.random.Generator,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    solver: SolverSettings = DEFAULT_SOLVER,
    settings: EliminationSettings = DEFAULT_ELIMINATION,
) -> Certificate:
    """Certified when a majority of sampled zeros are degenerate for the solver."""
    full = factor.with_vars(arr.u_names)
    reasons: list[str | None] = []
    confirmations = 0
    samples = 0
    for _ in range(settings.certify_samples):
        point = sample_zero_locus(full, rng)
        if point is None:
            continue
        samples += 1
        result = membership_numeric(arr, point, int(rng.integers(0, 2**31)), tolerances, solver)
        reasons.append(result.reason)
        if result.verdict is Verdict.NEAR_DISCRIMINANT and result.reason in DEGENERATE_REASONS:
            confirmations += 1
    certified = samples > 0 and 2 * confirmations > samples
    logger.info("certification of degree-%d factor: %d of %d samples degenerate", factor.degree(), confirmations, samples)
    return Certificate(certified=certified, samples=samples, confirmations=confirmations, reasons=reasons)
