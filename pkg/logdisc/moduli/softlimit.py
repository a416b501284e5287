"""Soft-limit weights and the M0,6 soft-limit recipe."""

from __future__ import annotations

from dataclasses import dataclass, field
import logging
import time
from typing import Any

from logdisc.algebra.polykernel import (
    content,
    pseudo_remainder,
    split_by_support,
    squarefree_factors,
    strip_common,
    sylvester_resultant,
    trial_divide,
    univariate_discriminant,
)
from logdisc.config import DEFAULT_ELIMINATION, EliminationSettings
from logdisc.model.poly import Poly, poly_document
from logdisc.moduli.m0m import MandelstamMap, ModuliError, m05_discriminant, m0m_arrangement
from logdisc.numeric.critical import cleared_equations

logger = logging.getLogger(__name__)

SOFT_PARTICLE = 5
# Exponent of the M0,5 factor in the conjectured soft-limit product.
BASE_MULTIPLICITY = 3


def soft_limit_weight(m: int, k: int) -> list[int]:
    """Weight 1 on every s_ij with k in {i, j}, 0 elsewhere."""
    _, mmap = m0m_arrangement(m)
    if not 3 <= k <= m - 1:
        raise ModuliError(f"particle label must satisfy 3 <= k <= {m - 1}, got {k}")
    return [1 if k in pair else 0 for pair in mmap.pairs]


@dataclass(slots=True)
class SoftLimitReport:
    """Outcome of the M0,6 recipe for the soft limit of particle 5."""

    base: Poly
    base_multiplicity: int
    second_factor: Poly | None
    product_degree: int | None
    divides: bool
    partial: bool = False
    stages: dict[str, float] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def second_degree(self) -> int | None:
        return self.second_factor.degree() if self.second_factor is not None else None

    def to_dict(self, pretty: bool = False) -> dict[str, Any]:
        data: dict[str, Any] = {
            "base": poly_document(self.base),
            "base_multiplicity": self.base_multiplicity,
            "second_factor": poly_document(self.second_factor) if self.second_factor is not None else None,
            "second_degree": self.second_degree,
            "product_degree": self.product_degree,
            "divides": self.divides,
            "partial": self.partial,
            "stages": dict(self.stages),
            "notes": list(self.notes),
        }
        if pretty and self.second_factor is not None:
            data["second_text"] = self.second_factor.render()
        return data


def exact_base_power(base: Poly, second: Poly, multiplicity: int = BASE_MULTIPLICITY) -> tuple[Poly, bool]:
    """base**multiplicity * second, and whether base divides it exactly `multiplicity` times.

    False as soon as base and second share a factor.
    """
    product = base**multiplicity * second
    if not base.gcd(second).is_constant():
        return product, False
    _, k = trial_divide(product, base)
    return product, k == multiplicity


def _u(mmap: MandelstamMap, names: tuple[str, ...], i: int, j: int) -> str:
    return names[mmap.index[(i, j)]]


def soft_limit_m06(seed: int = 0, settings: EliminationSettings = DEFAULT_ELIMINATION) -> SoftLimitReport:
    """Degree-18 factor of the particle-5 soft limit as Res_x1(g2, Disc_x3(g3)) after removing x2."""
    del seed  # the recipe is fully exact
    arr, mmap = m0m_arrangement(6)
    names = arr.x_names + arr.u_names
    u_names = arr.u_names
    x1, x2, x3 = (Poly.variable(v, names) for v in arr.x_names)
    base_names = tuple(_u(mmap, u_names, *pair) for pair in [(1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
    base = m05_discriminant(base_names).with_vars(u_names)
    stages: dict[str, float] = {}
    notes: list[str] = []
    clock = time.perf_counter()

    def mark(stage: str) -> None:
        nonlocal clock
        now = time.perf_counter()
        stages[stage] = now - clock
        clock = now
        logger.info("soft limit m=6: %s done in %.2fs", stage, stages[stage])

    soft = {_u(mmap, u_names, *pair): 0 for pair in mmap.pairs if SOFT_PARTICLE in pair}
    G1, G2, G3 = cleared_equations(arr)
    g1, k1 = trial_divide(G1.partial(soft), x3 - x1)
    g2, k2 = trial_divide(G2.partial(soft), x3 - x2)
    if (k1, k2) != (1, 1) or g1.degree("x2") != 1:
        raise ModuliError("unexpected shape of the soft-limit equations")
    Q = g1.leading_coeff_in("x2")
    P = -g1.coeffs_in("x2").get(0, Poly.zero(names))
    mark("equations")

    def eliminate_x2(g: Poly) -> Poly:
        # Q^deg * g(x1, P/Q, x3)
        degree = g.degree("x2")
        total = Poly.zero(names)
        for power, coeff in g.coeffs_in("x2").items():
            total = total + coeff * P**power * Q ** (degree - power)
        return total

    walls = [x1, x1 - 1, Q, P, P - Q, P - x1 * Q]
    g2x = eliminate_x2(g2)
    g3x = eliminate_x2(G3)
    for wall in walls:
        g2x, _ = strip_common(g2x, wall)
        g3x, _ = strip_common(g3x, wall)
    mark("substitution")

    disc = univariate_discriminant(g3x, "x3", settings)
    for wall in walls:
        disc, _ = strip_common(disc, wall)
    disc_content = content(disc, "x1")
    if not disc_content.is_constant():
        primitive = disc.exact_div(disc_content)
        if primitive is not None:
            disc = primitive
    pieces = [piece for piece, _ in squarefree_factors(disc) if piece.degree("x1") > 0]
    if not pieces:
        return SoftLimitReport(base, 0, None, None, False, partial=True, stages=stages, notes=["discriminant in x3 is constant in x1"])
    collision = pieces[0]
    for piece in pieces[1:]:
        collision = collision * piece
    mark("discriminant in x3")
    if collision.term_count() > settings.max_intermediate_terms:
        return SoftLimitReport(base, 0, None, None, False, partial=True, stages=stages, notes=["unresolved: blowup before the resultant"])

    if g2x.degree("x1") == 2:
        # Res against a quadric via its pseudo-remainder, linear in x1.
        a, b, c = (g2x.coeffs_in("x1").get(p, Poly.zero(g2x.vars)) for p in (2, 1, 0))
        r = pseudo_remainder(collision, g2x, "x1")
        r1, r0 = (r.coeffs_in("x1").get(p, Poly.zero(r.vars)) for p in (1, 0))
        resultant = (a * r0 * r0 - b * r0 * r1 + c * r1 * r1).with_vars(u_names)
        resultant, _ = strip_common(resultant, a.with_vars(u_names))
    else:
        notes.append(f"g2 has degree {g2x.degree('x1')} in x1; full Sylvester resultant")
        resultant = sylvester_resultant(g2x, collision, "x1", settings).with_vars(u_names)
    mark("resultant in x1")
    if resultant.is_zero():
        return SoftLimitReport(base, 0, None, None, False, partial=True, stages=stages, notes=notes + ["resultant vanished"])

    for name in u_names:
        resultant, _ = trial_divide(resultant, Poly.variable(name, u_names))
    resultant, base_in_second = trial_divide(resultant, base)
    if base_in_second:
        notes.append(f"base discriminant divided out {base_in_second} time(s) from the resultant")
    second: Poly | None = None
    for piece, _ in squarefree_factors(resultant) if not resultant.is_constant() else []:
        for part in split_by_support(piece):
            if part.degree() <= 1:
                notes.append(f"stripped linear factor {part.render(compact=True)}")
                continue
            second = part if second is None else second * part
    if second is not None:
        second = second.canonical()
    mark("cleanup")

    divides = False
    degree = None
    if second is not None:
        product, divides = exact_base_power(base, second)
        degree = product.degree() if product.is_homogeneous() else None
        if not divides:
            notes.append("the second factor shares a component with the base discriminant")
    label_names = {u: label for u, label in zip(u_names, mmap.labels)}
    notes.append(f"variables: {', '.join(f'{u}={label}' for u, label in label_names.items())}")
    return SoftLimitReport(
        base=base,
        base_multiplicity=BASE_MULTIPLICITY,
        second_factor=second,
        product_degree=degree,
        divides=divides,
        stages=stages,
        notes=notes,
    )
