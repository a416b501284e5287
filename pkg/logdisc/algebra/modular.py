"""Multi-prime determinants of polynomial matrices with CRT reconstruction."""

from __future__ import annotations

from fractions import Fraction
import logging
import math

from sympy import prevprime
from sympy.ntheory.modular import crt
from sympy.polys.domains import GF
from sympy.polys.orderings import grevlex
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyRing

from logdisc.algebra import linalg
from logdisc.algebra.polykernel import ExactDivisionError
from logdisc.model.poly import Exponent, Poly
from logdisc.parallel import ordered_map

logger = logging.getLogger(__name__)

PRIME_CEILING = 2**31
MAX_PRIMES = 400


def integer_scaled(rows: list[list[Poly]]) -> tuple[list[list[dict[Exponent, int]]], int]:
    """Integer coefficient dictionaries per entry, plus the product of row scales."""
    scaled_rows: list[list[dict[Exponent, int]]] = []
    total_scale = 1
    for row in rows:
        denominators = [c.denominator for entry in row for _, c in entry.terms()]
        scale = math.lcm(*denominators) if denominators else 1
        total_scale *= scale
        scaled_rows.append([{monom: int(c * scale) for monom, c in entry.terms()} for entry in row])
    return scaled_rows, total_scale


def det_mod_p(rows: list[list[dict[Exponent, int]]], variables: tuple[str, ...], prime: int) -> dict[Exponent, int]:
    ring = PolyRing(variables, GF(prime), grevlex)
    matrix = [[ring.from_dict({m: c % prime for m, c in entry.items() if c % prime}) if entry else ring.zero for entry in row] for row in rows]

    def divide(a, b):
        try:
            return a.exquo(b)
        except ExactQuotientFailed as exc:
            raise ExactDivisionError(f"Bareiss step left a remainder modulo {prime}") from exc

    value = linalg.bareiss_det(matrix, zero=ring.zero, one=ring.one, is_zero=lambda p: not p, exact_div=divide)
    return {tuple(m): int(c) % prime for m, c in value.items()}


def _symmetric(value: int, modulus: int) -> int:
    return value - modulus if value > modulus // 2 else value


def _combine(
    known: dict[Exponent, int], modulus: int, residues: dict[Exponent, int], prime: int
) -> dict[Exponent, int]:
    combined: dict[Exponent, int] = {}
    for monom in set(known) | set(residues):
        value, _ = crt([modulus, prime], [known.get(monom, 0), residues.get(monom, 0)], check=False)
        combined[monom] = int(value)
    return combined


def modular_det(rows: list[list[Poly]], variables: tuple[str, ...], batch: int = 2) -> Poly:
    """Determinant over QQ[variables]; stops once two consecutive reconstructions agree."""
    scaled, scale = integer_scaled(rows)
    prime = PRIME_CEILING
    modulus = 1
    residues: dict[Exponent, int] = {}
    previous: dict[Exponent, int] | None = None
    used = 0
    while used < MAX_PRIMES:
        primes = []
        for _ in range(batch):
            prime = prevprime(prime)
            primes.append(prime)
        images = ordered_map(lambda p: det_mod_p(scaled, variables, p), primes)
        for p, image in zip(primes, images):
            residues = _combine(residues, modulus, image, p)
            modulus *= p
            used += 1
            current = {m: _symmetric(v, modulus) for m, v in residues.items()}
            current = {m: v for m, v in current.items() if v}
            if previous is not None and current == previous:
                logger.debug("modular determinant stabilized after %d primes", used)
                return Poly.from_terms(variables, {m: Fraction(v, scale) for m, v in current.items()})
            previous = current
    raise ExactDivisionError(f"Modular determinant did not stabilize after {MAX_PRIMES} primes")
