"""Reciprocal linear space: kernel bases, circuit generators, Plücker substitution."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
import logging
from typing import Any, Sequence

from logdisc.algebra import linalg
from logdisc.algebra.polykernel import trial_divide
from logdisc.errors import LogdiscError
from logdisc.model.arrangement import Arrangement, ArrangementError
from logdisc.model.circuit import CircuitGenerator
from logdisc.model.poly import Poly, to_fraction, variables

logger = logging.getLogger(__name__)


class ReciprocalError(LogdiscError):
    """Raised for rank-deficient input or invalid Plücker data."""


def y_vars(count: int) -> tuple[str, ...]:
    return variables("y", count)


def kernel_basis(A: Sequence[Sequence[Any]]) -> list[list[Fraction]]:
    """(n+1) x (n+1-d) matrix whose columns span ker(A^T)."""
    rows = linalg.to_matrix(A)
    if not rows:
        raise ReciprocalError("empty matrix")
    d = len(rows[0])
    if linalg.rank(rows) != d:
        raise ReciprocalError(f"A must have rank {d}")
    basis = linalg.nullspace(linalg.transpose(rows), len(rows))
    return linalg.transpose(basis)


def _kernel_vector(columns: list[list[Fraction]]) -> list[Fraction] | None:
    kernel = linalg.nullspace(linalg.transpose(columns), len(columns))
    if len(kernel) != 1:
        return None
    return kernel[0]


def circuit_generators(arr: Arrangement) -> list[CircuitGenerator]:
    """One generator per (d+2)-subset whose circuit uses every index."""
    names = y_vars(arr.n_plus_1)
    L = arr.L_rows
    generators = []
    skipped = 0
    for support in combinations(range(arr.n_plus_1), arr.d + 2):
        coefficients = _kernel_vector([L[i] for i in support])
        if coefficients is None or any(c == 0 for c in coefficients):
            skipped += 1
            continue
        g = Poly.zero(names)
        for i, lam in zip(support, coefficients):
            term = Poly.constant(lam, names)
            for j in support:
                if j != i:
                    term = term * Poly.variable(names[j], names)
            g = g + term
        scale = g.canonical().monic_scale() / g.monic_scale()
        generators.append(CircuitGenerator(support, tuple(c * scale for c in coefficients), g.canonical()))
    if skipped:
        logger.warning("L is not uniform: %d supports without a full circuit were skipped", skipped)
    return generators


def gamma_point(arr: Arrangement, x: Sequence[Any]) -> list[Fraction]:
    """(1/l_0(x), ..., 1/l_n(x)) for a rational point off the arrangement."""
    values = arr.form_values([to_fraction(v) for v in x])
    if any(v == 0 for v in values):
        raise ArrangementError("point lies on a hyperplane")
    return [1 / v for v in values]


def plucker_names(arr: Arrangement) -> tuple[str, ...]:
    return tuple("p" + "_".join(str(i) for i in subset) for subset in combinations(range(arr.n_plus_1), arr.n_plus_1 - arr.d))


def _check_subset(arr: Arrangement, subset: Sequence[int]) -> tuple[int, ...]:
    picks = tuple(subset)
    if len(set(picks)) != len(picks):
        raise ReciprocalError(f"index set {list(picks)} has repeated entries")
    if len(picks) != arr.n_plus_1 - arr.d:
        raise ReciprocalError(f"index set must have {arr.n_plus_1 - arr.d} entries")
    if any(not 0 <= i <= arr.n for i in picks):
        raise ReciprocalError(f"index set {list(picks)} out of range")
    return tuple(sorted(picks))


def plucker_substitution(arr: Arrangement, subset: Sequence[int], u: Sequence[Any]) -> Fraction:
    """det(A_perp restricted to rows I) * prod_{i in I} 1/u_i."""
    picks = _check_subset(arr, subset)
    exponents = [to_fraction(v) for v in u]
    if any(exponents[i] == 0 for i in picks):
        raise ReciprocalError("zero exponent inside the index set")
    basis = kernel_basis(arr.A)
    value = linalg.det([basis[i] for i in picks])
    for i in picks:
        value /= exponents[i]
    return value


def pull_back_hurwitz(arr: Arrangement, hurwitz: Poly) -> Poly:
    """Pull back a homogeneous Plücker polynomial to u-space, denominators cleared, u-powers stripped."""
    if hurwitz.is_zero() or not hurwitz.is_homogeneous():
        raise ReciprocalError("Hurwitz polynomial must be nonzero and homogeneous")
    names = plucker_names(arr)
    unknown = set(hurwitz.used_vars()) - set(names)
    if unknown:
        raise ReciprocalError(f"unknown Plücker variables {sorted(unknown)}")
    u_names = arr.u_names
    basis = kernel_basis(arr.A)
    result = hurwitz.with_vars(names + u_names)
    for name, subset in zip(names, combinations(range(arr.n_plus_1), arr.n_plus_1 - arr.d)):
        # p_I -> det(A_perp_I) * prod over the complement of I, i.e. times the full u-product.
        image = Poly.constant(linalg.det([basis[i] for i in subset]), u_names)
        for i in range(arr.n_plus_1):
            if i not in subset:
                image = image * Poly.variable(u_names[i], u_names)
        result = result.substitute(name, image)
    result = result.with_vars(u_names)
    if result.is_zero():
        return result
    for name in u_names:
        result, _ = trial_divide(result, Poly.variable(name, u_names))
    return result.canonical()
