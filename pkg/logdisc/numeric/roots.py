"""Aberth-Ehrlich simultaneous root finding for univariate polynomials."""

from __future__ import annotations

import logging

import numpy as np

from logdisc.config import DEFAULT_SOLVER, SolverSettings

logger = logging.getLogger(__name__)


def _initial_guesses(coeffs: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    degree = len(coeffs) - 1
    lead = coeffs[0]
    # Fujiwara-type bounds on root moduli, outer and inner.
    ratios = np.abs(coeffs[1:] / lead) ** (1.0 / np.arange(1, degree + 1))
    outer = 2.0 * float(np.max(ratios))
    reversed_coeffs = coeffs[::-1]
    inner_ratios = np.abs(reversed_coeffs[1:] / reversed_coeffs[0]) ** (1.0 / np.arange(1, degree + 1))
    inner = 0.5 / float(np.max(inner_ratios))
    radius = np.sqrt(outer * inner) if inner > 0 else outer
    offset = rng.uniform(0.0, 2.0 * np.pi)
    angles = offset + 2.0 * np.pi * np.arange(degree) / degree
    return radius * np.exp(1j * angles)


def aberth_roots(
    coeffs: np.ndarray | list[complex],
    rng: np.random.Generator,
    settings: SolverSettings = DEFAULT_SOLVER,
    tol: float = 1e-15,
) -> np.ndarray:
    """All complex roots of sum coeffs[k] z^(deg-k), highest degree first."""
    work = np.asarray(coeffs, dtype=complex)
    nonzero = np.flatnonzero(work)
    if nonzero.size == 0:
        raise ValueError("Zero polynomial has no finite root set")
    work = work[nonzero[0] : nonzero[-1] + 1]
    zeros_at_origin = len(coeffs) - 1 - nonzero[-1]
    degree = len(work) - 1
    if degree == 0:
        return np.zeros(zeros_at_origin, dtype=complex)
    if degree == 1:
        return np.concatenate([[-work[1] / work[0]], np.zeros(zeros_at_origin, dtype=complex)])

    derivative = np.polyder(work)
    z = _initial_guesses(work, rng)
    converged = np.zeros(degree, dtype=bool)
    for iteration in range(settings.aberth_max_iter):
        values = np.polyval(work, z)
        slopes = np.polyval(derivative, z)
        slopes = np.where(slopes == 0, 1e-300, slopes)
        ratio = values / slopes
        diffs = z[:, None] - z[None, :]
        np.fill_diagonal(diffs, 1.0)
        repulsion = (1.0 / diffs).sum(axis=1) - 1.0
        step = ratio / (1.0 - ratio * repulsion)
        step = np.where(converged, 0.0, step)
        z = z - step
        converged |= np.abs(step) <= tol * (1.0 + np.abs(z))
        if converged.all():
            logger.debug("Aberth converged in %d iterations (degree %d)", iteration + 1, degree)
            break
    else:
        logger.debug("Aberth hit the iteration cap with %d of %d roots converged", int(converged.sum()), degree)
    return np.concatenate([z, np.zeros(zeros_at_origin, dtype=complex)])
