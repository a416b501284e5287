"""Resultants, discriminants and divisibility helpers on `Poly`."""

from __future__ import annotations

from fractions import Fraction
import logging

from logdisc.algebra import linalg
from logdisc.config import DEFAULT_ELIMINATION, EliminationSettings
from logdisc.errors import LogdiscError
from logdisc.model.poly import Poly, PolyError

logger = logging.getLogger(__name__)


class ExactDivisionError(LogdiscError):
    """Raised when a division that must be exact leaves a remainder."""


def sylvester_matrix(f: Poly, g: Poly, var: str) -> list[list[Poly]]:
    """Sylvester matrix in `var`, rows of f first; entries drop `var`."""
    f, g = f.align(g)
    rest = tuple(v for v in f.vars if v != var)
    m, n = f.degree(var), g.degree(var)
    zero = Poly.zero(rest)
    f_coeffs = {k: c.with_vars(rest) for k, c in f.coeffs_in(var).items()}
    g_coeffs = {k: c.with_vars(rest) for k, c in g.coeffs_in(var).items()}
    size = m + n
    rows: list[list[Poly]] = []
    for shift in range(n):
        rows.append([f_coeffs.get(m - (col - shift), zero) if 0 <= col - shift <= m else zero for col in range(size)])
    for shift in range(m):
        rows.append([g_coeffs.get(n - (col - shift), zero) if 0 <= col - shift <= n else zero for col in range(size)])
    return rows


def poly_det(rows: list[list[Poly]], variables: tuple[str, ...]) -> Poly:
    def divide(a: Poly, b: Poly) -> Poly:
        quotient = a.exact_div(b)
        if quotient is None:
            raise ExactDivisionError("Bareiss step left a remainder")
        return quotient

    return linalg.bareiss_det(
        rows,
        zero=Poly.zero(variables),
        one=Poly.one(variables),
        is_zero=lambda p: p.is_zero(),
        exact_div=divide,
    )


def sylvester_resultant(f: Poly, g: Poly, var: str, settings: EliminationSettings = DEFAULT_ELIMINATION) -> Poly:
    """Res_var(f, g) as a polynomial in the remaining variables."""
    if f.is_zero() or g.is_zero():
        raise PolyError("Resultant of a zero polynomial")
    f, g = f.align(g)
    rest = tuple(v for v in f.vars if v != var)
    m, n = f.degree(var), g.degree(var)
    if m == 0 and n == 0:
        raise PolyError(f"Both polynomials are constant in {var}")
    if m == 0:
        return (f**n).with_vars(rest)
    if n == 0:
        return (g**m).with_vars(rest)
    rows = sylvester_matrix(f, g, var)
    if m + n >= settings.modular_threshold and rest:
        from logdisc.algebra.modular import modular_det

        return modular_det(rows, rest)
    return poly_det(rows, rest)


def univariate_discriminant(f: Poly, var: str, settings: EliminationSettings = DEFAULT_ELIMINATION) -> Poly:
    n = f.degree(var)
    if n < 2:
        raise PolyError(f"Discriminant needs degree >= 2 in {var}, got {n}")
    resultant = sylvester_resultant(f, f.derivative(var), var, settings)
    lead = f.leading_coeff_in(var).with_vars(resultant.vars)
    quotient = resultant.exact_div(lead)
    if quotient is None:
        raise ExactDivisionError(f"Leading coefficient does not divide Res(f, f') in {var}")
    return -quotient if (n * (n - 1) // 2) % 2 else quotient


def trial_divide(f: Poly, g: Poly) -> tuple[Poly, int]:
    """Largest k with g^k | f, and f / g^k."""
    if g.is_zero() or g.is_constant():
        raise PolyError("Trial division needs a non-constant divisor")
    if f.is_zero():
        return f, 0
    count = 0
    current = f
    while True:
        quotient = current.exact_div(g)
        if quotient is None:
            return current, count
        current = quotient
        count += 1


def strip_common(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    """Remove from f every irreducible factor it shares with g; returns (f', removed)."""
    removed = Poly.one(f.vars)
    current = f
    while True:
        common = current.gcd(g)
        if common.is_constant():
            return current, removed
        quotient = current.exact_div(common)
        if quotient is None:
            raise ExactDivisionError("gcd does not divide its argument")
        current = quotient
        removed = removed * common


def content(f: Poly, var: str) -> Poly:
    """gcd of the coefficients of f as a polynomial in `var`."""
    coeffs = list(f.coeffs_in(var).values())
    if not coeffs:
        return Poly.zero(f.vars)
    result = coeffs[0]
    for c in coeffs[1:]:
        if result.is_constant():
            break
        result = result.gcd(c)
    return result


def squarefree_factors(f: Poly) -> list[tuple[Poly, int]]:
    """Squarefree decomposition, factors canonically scaled."""
    if f.is_zero():
        raise PolyError("Squarefree decomposition of zero")
    _, parts = f.element.sqf_list()
    return [(Poly(part).canonical(), mult) for part, mult in parts if not Poly(part).is_constant()]


def split_by_support(f: Poly) -> list[Poly]:
    """Split f along contents; pieces multiply back to f up to a scalar."""
    if f.is_constant():
        return []
    for var in f.used_vars():
        c = content(f, var)
        if not c.is_constant():
            rest = f.exact_div(c)
            if rest is None:
                raise ExactDivisionError("content does not divide its polynomial")
            return split_by_support(c) + split_by_support(rest)
    return [f.canonical()]


def quadric_discriminant(f: Poly) -> Fraction:
    """Determinant of the symmetric coefficient matrix of a quadratic form."""
    if not f.is_homogeneous() or f.degree() != 2:
        raise PolyError("Expected a quadratic form")
    names = f.vars
    size = len(names)
    matrix = [[Fraction(0)] * size for _ in range(size)]
    for monom, coeff in f.terms():
        picks = [i for i, e in enumerate(monom) for _ in range(e)]
        i, j = picks
        if i == j:
            matrix[i][i] = coeff
        else:
            matrix[i][j] = matrix[j][i] = coeff / 2
    return linalg.det(matrix)


def pseudo_remainder(f: Poly, g: Poly, var: str) -> Poly:
    """f reduced modulo g in `var`, scaling by lc(g) once per reduction step."""
    if g.degree(var) < 1:
        raise PolyError(f"Pseudo-division needs a divisor of positive degree in {var}")
    f, g = f.align(g)
    dg = g.degree(var)
    lead = g.leading_coeff_in(var)
    x = Poly.variable(var, f.vars)
    remainder = f
    while not remainder.is_zero() and remainder.degree(var) >= dg:
        shift = remainder.degree(var) - dg
        remainder = lead * remainder - remainder.leading_coeff_in(var) * x**shift * g
    return remainder
