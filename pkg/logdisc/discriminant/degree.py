"""Degree oracle, positivity scan and Hurwitz containment."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import logging
import math
from typing import Any, Sequence

import numpy as np

from logdisc.algebra.polykernel import trial_divide
from logdisc.matroid.validate import is_uniform_A, is_uniform_L
from logdisc.model.arrangement import Arrangement
from logdisc.model.poly import Poly, PolyError, to_fraction

logger = logging.getLogger(__name__)

NOT_APPLICABLE = "not applicable (special arrangement)"

# Samples are drawn log-uniformly from [1/SPREAD, SPREAD] in every coordinate.
SPREAD = 100.0


def expected_degree(arr: Arrangement) -> int | str:
    if arr.d == 1:
        return 2 * (arr.n - 1)
    if is_uniform_L(arr) and is_uniform_A(arr):
        return 2 * arr.d * math.comb(arr.n - 1, arr.d)
    return NOT_APPLICABLE


@dataclass(slots=True)
class PositivityReport:
    samples: int
    positive: int
    min_value: Fraction | None
    nonpositive_points: list[list[Fraction]] = field(default_factory=list)
    witnesses: list[tuple[list[Fraction], Fraction]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.positive == self.samples

    def to_dict(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "samples": self.samples,
            "positive": self.positive,
            "min_value": str(self.min_value) if self.min_value is not None else None,
            "nonpositive_points": [[str(v) for v in p] for p in self.nonpositive_points],
            "witnesses": [{"u": [str(v) for v in p], "value": str(value)} for p, value in self.witnesses],
        }


def positivity_scan(
    f: Poly,
    n_samples: int,
    seed: int = 0,
    witnesses: Sequence[Sequence[Any]] = (),
) -> PositivityReport:
    """Exact signs of f at log-uniform points of the open positive orthant."""
    if not f.is_homogeneous():
        raise PolyError("Positivity scan needs a homogeneous polynomial")
    rng = np.random.default_rng(seed)
    width = math.log(SPREAD)
    positive = 0
    min_value: Fraction | None = None
    bad: list[list[Fraction]] = []
    for _ in range(n_samples):
        raw = np.exp(rng.uniform(-width, width, size=len(f.vars)))
        point = [Fraction(float(v)).limit_denominator(10**6) for v in raw]
        value = f.evaluate(point)
        if min_value is None or value < min_value:
            min_value = value
        if value > 0:
            positive += 1
        else:
            bad.append(point)
    if bad:
        logger.warning("positivity scan: %d of %d samples nonpositive", len(bad), n_samples)
    evaluated = []
    for witness in witnesses:
        point = [to_fraction(v) for v in witness]
        evaluated.append((point, f.evaluate(point)))
    return PositivityReport(samples=n_samples, positive=positive, min_value=min_value, nonpositive_points=bad, witnesses=evaluated)


@dataclass(slots=True)
class HurwitzReport:
    contained: bool
    multiplicities: list[int]
    cofactor: Poly


def hurwitz_containment_check(factors: Sequence[Poly], hurwitz: Poly) -> HurwitzReport:
    """Divide the pulled-back Hurwitz polynomial by each factor; scalars are ignored."""
    cofactor = hurwitz
    multiplicities = []
    for factor in factors:
        cofactor, k = trial_divide(cofactor, factor.with_vars(hurwitz.vars))
        multiplicities.append(k)
    contained = all(k > 0 for k in multiplicities)
    if not cofactor.is_zero():
        cofactor = cofactor.canonical()
    return HurwitzReport(contained=contained, multiplicities=multiplicities, cofactor=cofactor)
