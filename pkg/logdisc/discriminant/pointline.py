"""Closed forms for point arrangements on a line."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
import logging
from typing import Any, Sequence

import numpy as np

from logdisc.algebra.polykernel import quadric_discriminant, sylvester_resultant, trial_divide, univariate_discriminant
from logdisc.errors import LogdiscError
from logdisc.model.arrangement import u_vars
from logdisc.model.discriminant import DiscriminantResult, Factor, Method
from logdisc.model.poly import Poly, to_fraction

logger = logging.getLogger(__name__)

# Above this many points the resultant route is checked on random lines in u-space.
FULL_RES_ROUTE_MAX_POINTS = 4
LINE_CHECKS = 3


class PointLineError(LogdiscError):
    """Raised for invalid point configurations."""


def _exact_points(points: Sequence[Any]) -> list[Fraction]:
    exact = [to_fraction(p) for p in points]
    if len(set(exact)) != len(exact):
        raise PointLineError("repeated points")
    return exact


def likelihood_pair(points: Sequence[Any], u_names: Sequence[str] | None = None, var: str = "x") -> tuple[Poly, Poly]:
    """(g1, g2): g1 = sum u_i prod_{k != i}(x - p_k), g2 = sum u_i prod_{k != i}(x - p_k)^2."""
    exact = _exact_points(points)
    names = tuple(u_names) if u_names is not None else u_vars(len(exact))
    ring_vars = (var,) + names
    x = Poly.variable(var, ring_vars)
    forms = [x - p for p in exact]
    g1 = Poly.zero(ring_vars)
    g2 = Poly.zero(ring_vars)
    for i, name in enumerate(names):
        product = Poly.one(ring_vars)
        for k, form in enumerate(forms):
            if k != i:
                product = product * form
        ui = Poly.variable(name, ring_vars)
        g1 = g1 + ui * product
        g2 = g2 + ui * product * product
    return g1, g2


def homogeneous_g1(points: Sequence[Any], x0: str = "x0", x1: str = "x1") -> Poly:
    """sum u_i prod_{k != i}(x1 - p_k x0), the bihomogeneous cleared equation."""
    g1, _ = likelihood_pair(points, var=x1)
    return g1.homogenize(x0).with_vars((x0, x1) + u_vars(len(points)))


def res_route(points: Sequence[Any]) -> tuple[Poly, list[int]]:
    """Res_x(g1, g2) stripped of u_0..u_n and their sum; returns (quotient, multiplicities)."""
    g1, g2 = likelihood_pair(points)
    result = sylvester_resultant(g1, g2, "x")
    linear = [Poly.variable(name, result.vars) for name in u_vars(len(points))]
    linear.append(sum(linear[1:], linear[0]))
    multiplicities = []
    for form in linear:
        result, k = trial_divide(result, form)
        multiplicities.append(k)
    return result, multiplicities


def _random_line(count: int, rng: np.random.Generator, bound: int) -> tuple[list[int], list[int]]:
    """u = a + t*b with the restricted u_i and their sum pairwise non-proportional and non-constant."""
    while True:
        a = [int(v) for v in rng.integers(1, bound, size=count)]
        b = [int(v) * int(s) for v, s in zip(rng.integers(1, bound, size=count), rng.choice([-1, 1], size=count))]
        pairs = list(zip(a, b)) + [(sum(a), sum(b))]
        if all(slope != 0 for _, slope in pairs) and all(p[0] * q[1] != p[1] * q[0] for p, q in combinations(pairs, 2)):
            return a, b


def res_route_on_line(points: Sequence[Any], disc: Poly, rng: np.random.Generator, bound: int = 20) -> tuple[bool, list[int]]:
    """Compare both routes exactly on the line u = a + t*b for random integer a, b."""
    g1, g2 = likelihood_pair(points)
    names = u_vars(len(points))
    a, b = _random_line(len(names), rng, bound)
    ring_vars = ("x", "t")
    t = Poly.variable("t", ring_vars)
    line = {name: t * bi + ai for name, ai, bi in zip(names, a, b)}

    def restrict(poly: Poly) -> Poly:
        out = poly
        for name, value in line.items():
            out = out.substitute(name, value)
        return out.with_vars(tuple(v for v in out.vars if v not in names))

    resultant = sylvester_resultant(restrict(g1), restrict(g2), "x").with_vars(("t",))
    linear = [line[name].with_vars(("t",)) for name in names]
    linear.append(sum(linear[1:], linear[0]))
    multiplicities = []
    for form in linear:
        if form.is_constant():
            multiplicities.append(0)
            continue
        resultant, k = trial_divide(resultant, form)
        multiplicities.append(k)
    restricted_disc = restrict(disc.with_vars(("x",) + tuple(disc.vars))).with_vars(("t",))
    ratio = resultant.exact_div(restricted_disc)
    agree = ratio is not None and ratio.is_constant() and not ratio.is_zero()
    return agree, multiplicities


def logdisc_d1(points: Sequence[Any], seed: int = 0, *, via_resultant: bool = False) -> DiscriminantResult:
    """Disc_x(g1), canonicalized, cross-checked against the resultant route.

    With `via_resultant` the reported factor is the full resultant quotient
    and the discriminant route becomes the check. Above
    FULL_RES_ROUTE_MAX_POINTS points the default check compares both routes
    on LINE_CHECKS random lines in u-space, which is probabilistic.
    """
    exact = _exact_points(points)
    if len(exact) < 2:
        raise PointLineError("need at least two points")
    method = Method.RES_D1 if via_resultant else Method.DISC_D1
    if len(exact) == 2:
        return DiscriminantResult(
            factors=[Factor(poly=Poly.one(u_vars(2)), certified=True, note="constant")],
            method=method,
            expected_degree=0,
            notes=["two points: no exponent is degenerate and Delta_log = 1"],
        )
    n = len(exact) - 1
    g1, _ = likelihood_pair(exact)
    disc = univariate_discriminant(g1, "x").canonical()
    notes: list[str] = []
    reported = disc
    note = None
    if via_resultant or len(exact) <= FULL_RES_ROUTE_MAX_POINTS:
        quotient, multiplicities = res_route(exact)
        agree = quotient.canonical() == disc
        if via_resultant:
            reported = quotient.canonical()
        notes.append(f"resultant route {'agrees' if agree else 'DISAGREES'} (full), split multiplicities {multiplicities}")
    else:
        rng = np.random.default_rng(seed)
        agree = True
        multiplicities = []
        for _ in range(LINE_CHECKS):
            on_line, multiplicities = res_route_on_line(exact, disc, rng)
            agree = agree and on_line and all(k == 1 for k in multiplicities)
        notes.append(
            f"resultant route {'agrees' if agree else 'DISAGREES'} "
            f"(probabilistic, {LINE_CHECKS} random lines), split multiplicities {multiplicities}"
        )
        note = f"agreement on {LINE_CHECKS} random lines"
    certified = agree and all(k == 1 for k in multiplicities)
    if not certified:
        logger.warning("d=1 resultant cross-check failed for points %s", [str(p) for p in exact])
        note = "resultant cross-check failed"
    if len(exact) == 3:
        notes.append(f"ternary quadric discriminant {quadric_discriminant(disc)}")
    return DiscriminantResult(
        factors=[Factor(poly=reported, multiplicity=1, certified=certified, note=note)],
        method=method,
        expected_degree=2 * (n - 1),
        notes=notes,
    )
