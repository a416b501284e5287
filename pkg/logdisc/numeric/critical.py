"""Critical points of the log-likelihood sum u_i log l_i(x).

The exact helpers (`gradient`, `hessian_det`) stay in rational arithmetic when
every input is rational. `solve_critical` enumerates the critical points for
numeric u: Aberth on the cleared univariate equation when d = 1, an exact
resultant in x2 followed by back-substitution when d = 2 and u is real, and
total-degree continuation otherwise. Every candidate is Newton-polished in
extended precision on the rational equations before it is classified.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
import logging
import math
from typing import Any, Sequence

import mpmath
import numpy as np

from logdisc.algebra import linalg
from logdisc.algebra.polykernel import strip_common, sylvester_resultant, trial_divide
from logdisc.config import DEFAULT_SOLVER, DEFAULT_TOLERANCES, SolverSettings, Tolerances
from logdisc.errors import LogdiscError
from logdisc.matroid.characteristic import ml_degree
from logdisc.model.arrangement import Arrangement, simplex_arrangement
from logdisc.model.poly import Poly, to_fraction
from logdisc.model.solutions import CriticalPoint, CriticalSolutions, LikelihoodSystem, PointStatus
from logdisc.numeric.homotopy import ClearedSystem, track
from logdisc.numeric.roots import aberth_roots

logger = logging.getLogger(__name__)

SUSPECT_RESIDUAL = 1e-6
CANDIDATE_RESIDUAL = 1e-4
RATIONALIZE_DENOMINATOR = 10**12


class SolverError(LogdiscError):
    """Raised for invalid solver input, such as a point on a hyperplane."""


@lru_cache(maxsize=128)
def minor_weights(arr: Arrangement) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
    """(I, det(A_I)^2) for every d-subset I with a nonzero minor."""
    weights = []
    for subset in combinations(range(arr.n_plus_1), arr.d):
        minor = linalg.det([list(arr.A[i]) for i in subset])
        if minor:
            weights.append((subset, minor * minor))
    return tuple(weights)


def _is_exact(values: Sequence[Any]) -> bool:
    return all(isinstance(v, (int, Fraction)) and not isinstance(v, bool) for v in values)


def _off_wall_values(arr: Arrangement, x: Sequence[Any]) -> list[Any]:
    if len(x) != arr.d:
        raise SolverError(f"Point has {len(x)} coordinates, expected {arr.d}")
    values = arr.form_values(x)
    for i, value in enumerate(values):
        if value == 0:
            raise SolverError(f"Point lies on hyperplane {i}")
    return values


def _check_u(arr: Arrangement, u: Sequence[Any]) -> None:
    if len(u) != arr.n_plus_1:
        raise SolverError(f"Expected {arr.n_plus_1} exponents, got {len(u)}")


def gradient(arr: Arrangement, u: Sequence[Any], x: Sequence[Any]) -> list[Fraction] | np.ndarray:
    """A^T diag(1/l(x)) u; exact for rational input."""
    _check_u(arr, u)
    exact = _is_exact(u) and _is_exact(x)
    if exact:
        u, x = [Fraction(v) for v in u], [Fraction(v) for v in x]
    values = _off_wall_values(arr, x)
    ratios = [ui / li for ui, li in zip(u, values)]
    out = [sum((r * row[j] for r, row in zip(ratios, arr.A)), Fraction(0) if exact else 0) for j in range(arr.d)]
    return out if exact else np.asarray(out, dtype=complex)


def hessian_det(arr: Arrangement, u: Sequence[Any], x: Sequence[Any]) -> Any:
    """Cauchy-Binet sum over d-subsets of |A_I|^2 u^I / l^I(x)^2."""
    _check_u(arr, u)
    exact = _is_exact(u) and _is_exact(x)
    if exact:
        u, x = [Fraction(v) for v in u], [Fraction(v) for v in x]
    values = _off_wall_values(arr, x)
    weights = [ui / (li * li) for ui, li in zip(u, values)]
    total: Any = Fraction(0) if exact else 0j
    for subset, minor_sq in minor_weights(arr):
        term: Any = minor_sq if exact else float(minor_sq)
        for i in subset:
            term = term * weights[i]
        total += term
    return total


def hessian_det_direct(arr: Arrangement, u: Sequence[Any], x: Sequence[Any]) -> Any:
    """det(A^T diag(u / l(x)^2) A), the oracle for `hessian_det`."""
    _check_u(arr, u)
    exact = _is_exact(u) and _is_exact(x)
    if exact:
        u, x = [Fraction(v) for v in u], [Fraction(v) for v in x]
    values = _off_wall_values(arr, x)
    weights = [ui / (li * li) for ui, li in zip(u, values)]
    matrix = [
        [sum((w * row[j] * row[k] for w, row in zip(weights, arr.A)), Fraction(0) if exact else 0) for k in range(arr.d)]
        for j in range(arr.d)
    ]
    if exact:
        return linalg.det(matrix)
    return complex(np.linalg.det(np.asarray(matrix, dtype=complex)))


def cleared_equations(arr: Arrangement) -> list[Poly]:
    """G_j = sum_{i in S_j} u_i a_ij prod_{k in S_j, k != i} l_k over forms S_j involving x_j."""
    names = arr.x_names + arr.u_names
    forms = [form.with_vars(names) for form in arr.forms()]
    u_polys = [Poly.variable(name, names) for name in arr.u_names]
    equations = []
    for j in range(arr.d):
        support = arr.involved(j)
        total = Poly.zero(names)
        for i in support:
            term = u_polys[i] * arr.A[i][j]
            for k in support:
                if k != i:
                    term = term * forms[k]
            total = total + term
        equations.append(total)
    return equations


def hessian_numerator(arr: Arrangement) -> Poly:
    """sum_I |A_I|^2 u^I prod_{k not in I} l_k^2."""
    names = arr.x_names + arr.u_names
    forms = [form.with_vars(names) for form in arr.forms()]
    squares = [form * form for form in forms]
    total = Poly.zero(names)
    for subset, minor_sq in minor_weights(arr):
        term = Poly.constant(minor_sq, names)
        for i in range(arr.n_plus_1):
            term = term * (Poly.variable(arr.u_names[i], names) if i in subset else squares[i])
        total = total + term
    return total


def likelihood_system(arr: Arrangement, u: Sequence[Any] | None = None) -> LikelihoodSystem:
    equations = cleared_equations(arr)
    hessian = hessian_numerator(arr)
    exact_u: tuple[Fraction, ...] | None = None
    if u is not None:
        _check_u(arr, u)
        exact_u = tuple(to_fraction(v) for v in u)
        point = dict(zip(arr.u_names, exact_u))
        equations = [eq.partial(point).with_vars(arr.x_names) for eq in equations]
        hessian = hessian.partial(point).with_vars(arr.x_names)
    return LikelihoodSystem(arr=arr, u=exact_u, cleared_equations=tuple(equations), hessian_numerator=hessian)


def critical_point_exact(arr: Arrangement, u: Sequence[Any]) -> list[Fraction]:
    """Closed form x_j = -u_j / sum(u) for the standard simplex arrangement."""
    if arr != simplex_arrangement(arr.d):
        raise SolverError("Closed form only applies to the standard simplex arrangement")
    _check_u(arr, u)
    exact = [to_fraction(v) for v in u]
    total = sum(exact, Fraction(0))
    if total == 0:
        raise SolverError("Exponents sum to zero: no critical point")
    return [-exact[j] / total for j in range(arr.d)]


# -- numeric solving ---------------------------------------------------------


def _numeric_u(u: Sequence[Any]) -> list[complex]:
    out = []
    for v in u:
        if isinstance(v, (int, Fraction, str)) and not isinstance(v, bool):
            out.append(complex(float(to_fraction(v))))
        else:
            out.append(complex(v))
    return out


def _real_rational_u(u: Sequence[Any]) -> list[Fraction] | None:
    out = []
    for v in u:
        if isinstance(v, (int, Fraction, str)) and not isinstance(v, bool):
            out.append(to_fraction(v))
            continue
        z = complex(v)
        if z.imag != 0:
            return None
        out.append(Fraction(z.real).limit_denominator(RATIONALIZE_DENOMINATOR))
    return out


def _mp_value(v: Any) -> Any:
    if isinstance(v, (int, Fraction)):
        frac = Fraction(v)
        return mpmath.mpf(frac.numerator) / frac.denominator
    if isinstance(v, str):
        return _mp_value(to_fraction(v))
    z = complex(v)
    return mpmath.mpc(z.real, z.imag) if z.imag else mpmath.mpf(z.real)


class _Polisher:
    """Newton refinement and classification in extended precision."""

    def __init__(self, arr: Arrangement, u: Sequence[Any], tolerances: Tolerances, settings: SolverSettings) -> None:
        self.arr = arr
        self.u = list(u)
        self.tolerances = tolerances
        self.settings = settings
        self.weights = minor_weights(arr)
        self.row_norms = [math.sqrt(sum(float(v) ** 2 for v in row)) for row in arr.L_rows]

    def _forms(self, A: list, b: list, x: list) -> list:
        return [bi + mpmath.fsum(a * xj for a, xj in zip(row, x)) for bi, row in zip(b, A)]

    def refine(self, x0: Sequence[complex]) -> CriticalPoint | None:
        d = self.arr.d
        with mpmath.workdps(self.settings.polish_digits):
            A = [[_mp_value(a) for a in row] for row in self.arr.A]
            b = [_mp_value(v) for v in self.arr.b]
            u = [_mp_value(v) for v in self.u]
            x = [mpmath.mpc(z.real, z.imag) for z in x0]
            for _ in range(self.settings.polish_steps):
                ell = self._forms(A, b, x)
                if any(v == 0 for v in ell):
                    return None
                F = [mpmath.fsum(ui * row[j] / li for ui, row, li in zip(u, A, ell)) for j in range(d)]
                J = mpmath.matrix(d, d)
                for j in range(d):
                    for k in range(d):
                        J[j, k] = -mpmath.fsum(ui * row[j] * row[k] / (li * li) for ui, row, li in zip(u, A, ell))
                try:
                    step = mpmath.lu_solve(J, mpmath.matrix(F))
                except ZeroDivisionError:
                    break
                x = [x[j] - step[j] for j in range(d)]
            return self._classify(A, b, u, x)

    def _classify(self, A: list, b: list, u: list, x: list) -> CriticalPoint | None:
        if any(not mpmath.isfinite(v) for v in x):
            return None
        size = max(1.0, float(mpmath.sqrt(mpmath.fsum(abs(v) ** 2 for v in x))))
        if size > self.settings.divergence_radius:
            return None
        ell = self._forms(A, b, x)
        if any(v == 0 for v in ell):
            return None
        terms = [[ui * row[j] / li for ui, row, li in zip(u, A, ell)] for j in range(self.arr.d)]
        biggest = max(abs(t) for column in terms for t in column)
        residual = float(max(abs(mpmath.fsum(column)) for column in terms) / biggest) if biggest else math.inf
        wall = min(float(abs(li)) / (norm * size) for li, norm in zip(ell, self.row_norms))
        hess = mpmath.mpc(0)
        scale = mpmath.mpf(0)
        for subset, minor_sq in self.weights:
            term = _mp_value(minor_sq)
            magnitude = _mp_value(minor_sq)
            for i in subset:
                term *= u[i] / (ell[i] * ell[i])
                magnitude *= abs(u[i]) / abs(ell[i]) ** 2
            hess += term
            scale += magnitude
        relative = float(abs(hess) / scale) if scale else 0.0
        if residual < self.tolerances.residual and wall > self.tolerances.wall:
            status = PointStatus.CERTIFIED
        elif residual < SUSPECT_RESIDUAL:
            status = PointStatus.SUSPECT
        else:
            return None
        return CriticalPoint(
            x=tuple(complex(v) for v in x),
            residual=residual,
            hessdet=complex(hess),
            relative_hessdet=relative,
            min_wall_distance=wall,
            status=status,
        )


def merge_points(points: Sequence[CriticalPoint], tol: float) -> list[CriticalPoint]:
    """Drop near-duplicates, preferring certified points with smaller residual."""
    ranked = sorted(points, key=lambda p: (p.status is not PointStatus.CERTIFIED, p.residual))
    kept: list[CriticalPoint] = []
    for point in ranked:
        z = np.asarray(point.x)
        if all(np.linalg.norm(z - np.asarray(q.x)) > tol * (1.0 + np.linalg.norm(z)) for q in kept):
            kept.append(point)
    return kept


def _candidates_d1(arr: Arrangement, u: Sequence[complex], rng: np.random.Generator, settings: SolverSettings) -> np.ndarray:
    coeffs = np.zeros(1, dtype=complex)
    for i in range(arr.n_plus_1):
        term = np.array([u[i] * float(arr.A[i][0])], dtype=complex)
        for k in range(arr.n_plus_1):
            if k != i:
                term = np.polymul(term, [float(arr.A[k][0]), float(arr.b[k])])
        coeffs = np.polyadd(coeffs, term)
    if not np.any(coeffs):
        return np.zeros((0, 1), dtype=complex)
    return aberth_roots(coeffs, rng, settings).reshape(-1, 1)


def _vertex_x1(arr: Arrangement) -> set[Fraction]:
    values = set()
    for i, k in combinations(range(arr.n_plus_1), 2):
        rows = [list(arr.A[i]), list(arr.A[k])]
        if linalg.rank(rows) == 2:
            point = linalg.solve(rows, [-arr.b[i], -arr.b[k]])
            if point is not None:
                values.add(point[0])
    return values


def _dense_coeffs(poly: Poly, var: str) -> np.ndarray:
    degree = poly.degree(var)
    coeffs = poly.coeffs_in(var)
    exact = [coeffs[p].constant_value() if p in coeffs else Fraction(0) for p in range(degree, -1, -1)]
    scale = max(abs(c) for c in exact)
    return np.array([float(c / scale) for c in exact], dtype=complex)


def _candidates_d2(
    arr: Arrangement, u_exact: Sequence[Fraction], rng: np.random.Generator, settings: SolverSettings
) -> np.ndarray | None:
    """Exact Res_{x2} of the cleared equations, roots in x1, back-substitution in x2."""
    system = likelihood_system(arr, u_exact)
    g1, g2 = system.cleared_equations
    if g1.degree("x2") <= 0 and g2.degree("x2") <= 0:
        return None
    resultant = sylvester_resultant(g1, g2, "x2")
    if resultant.is_zero():
        return None
    x1 = Poly.variable("x1", resultant.vars)
    for value in _vertex_x1(arr):
        resultant, _ = trial_divide(resultant, x1 - value)
    leading = g1.leading_coeff_in("x2").gcd(g2.leading_coeff_in("x2")).with_vars(resultant.vars)
    if not leading.is_constant():
        resultant, _ = strip_common(resultant, leading)
    if resultant.degree("x1") <= 0:
        return np.zeros((0, 2), dtype=complex)
    roots = aberth_roots(_dense_coeffs(resultant, "x1"), rng, settings)

    pivot = min((g for g in (g1, g2) if g.degree("x2") > 0), key=lambda g: g.degree("x2"))
    pieces = pivot.coeffs_in("x2")
    top = max(pieces)
    candidates = []
    for r in roots:
        coeffs = [pieces[p].evaluate({"x1": r, "x2": 0}, coerce=lambda c: complex(float(c))) if p in pieces else 0j for p in range(top, -1, -1)]
        if not np.any(coeffs) or coeffs[0] == 0:
            continue
        for y in aberth_roots(np.asarray(coeffs, dtype=complex), rng, settings):
            candidates.append((r, y))
    return np.asarray(candidates, dtype=complex).reshape(-1, 2)


def _candidates_homotopy(
    arr: Arrangement, u: Sequence[complex], rng: np.random.Generator, settings: SolverSettings
) -> tuple[np.ndarray, int]:
    system = ClearedSystem(arr, u)
    if any(D < 1 for D in system.degrees):
        return np.zeros((0, arr.d), dtype=complex), 0
    result = track(system.evaluate, system.degrees, rng, settings)
    ends = result.endpoints
    finite = np.isfinite(ends).all(axis=1) if ends.size else np.zeros(0, dtype=bool)
    return ends[finite], result.failed


def solve_critical(
    arr: Arrangement,
    u: Sequence[Any],
    seed: int = 0,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    settings: SolverSettings = DEFAULT_SOLVER,
) -> CriticalSolutions:
    _check_u(arr, u)
    rng = np.random.default_rng(seed)
    u_numeric = _numeric_u(u)
    warnings: list[str] = []
    if any(abs(v) == 0 for v in u_numeric):
        warnings.append("some exponent u_i is zero")
    if abs(sum(u_numeric)) == 0:
        warnings.append("exponents sum to zero")
    for message in warnings:
        logger.warning("solve_critical: %s", message)

    expected = ml_degree(arr)
    polisher = _Polisher(arr, u, tolerances, settings)
    cleared = ClearedSystem(arr, u_numeric)
    failed = 0

    def refine_all(candidates: np.ndarray) -> list[CriticalPoint]:
        if candidates.size == 0:
            return []
        with np.errstate(all="ignore"):
            scores = cleared.scaled_residual(candidates)
        keep = candidates[np.isfinite(scores) & (scores < CANDIDATE_RESIDUAL)]
        refined = [polisher.refine(c) for c in keep]
        return [p for p in refined if p is not None]

    method = "homotopy"
    points: list[CriticalPoint] = []
    if arr.d == 1:
        method = "aberth"
        points = refine_all(_candidates_d1(arr, u_numeric, rng, settings))
    elif arr.d == 2 and (u_exact := _real_rational_u(u)) is not None:
        candidates = _candidates_d2(arr, u_exact, rng, settings)
        if candidates is not None:
            method = "resultant"
            points = refine_all(candidates)
    points = merge_points(points, tolerances.merge)

    certified = sum(p.status is PointStatus.CERTIFIED for p in points)
    if method == "homotopy" or certified < expected:
        if method != "homotopy":
            logger.info("%s path found %d of %d points; running continuation", method, certified, expected)
            method = f"{method}+homotopy"
        candidates, failed = _candidates_homotopy(arr, u_numeric, rng, settings)
        points = merge_points(points + refine_all(candidates), tolerances.merge)
        certified = sum(p.status is PointStatus.CERTIFIED for p in points)
        if failed and certified < expected:
            logger.info("%d failed paths; rerunning with a fresh start system", failed)
            candidates, failed = _candidates_homotopy(arr, u_numeric, rng, settings)
            points = merge_points(points + refine_all(candidates), tolerances.merge)

    solutions = CriticalSolutions(points=points, count_expected=expected, method=method, seed=seed, warnings=warnings, failed_paths=failed)
    found = len(solutions.certified)
    if found > expected:
        solutions.warnings.append(f"found {found} certified points, more than the expected {expected}")
        logger.warning("solve_critical: found %d certified points, expected %d", found, expected)
    elif found < expected:
        logger.warning("solve_critical: %s", solutions.status)
    return solutions
