"""Sparse multivariate polynomials with exact rational coefficients.

`Poly` wraps an element of a sympy sparse polynomial ring over QQ with the
graded reverse-lexicographic order. Operands over different variable lists
are merged by name: the left operand's variables come first, new names are
appended in the order they appear on the right.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import math
from typing import Any, Callable, Iterable, Mapping, Sequence

from sympy.polys.domains import QQ
from sympy.polys.orderings import grevlex
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyElement, PolyRing

from logdisc.errors import LogdiscError

Exponent = tuple[int, ...]
Scalar = int | Fraction


class PolyError(LogdiscError):
    """Raised for malformed polynomial operations."""


@lru_cache(maxsize=None)
def poly_ring(names: tuple[str, ...]) -> PolyRing:
    if len(set(names)) != len(names):
        raise PolyError(f"Duplicate variable names: {names}")
    return PolyRing(names, QQ, grevlex)


def to_qq(value: Scalar | str) -> Any:
    frac = to_fraction(value)
    return QQ(frac.numerator, frac.denominator)


def to_fraction(value: Any) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise PolyError(f"Not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise PolyError(f"Not a rational: {value!r}") from exc
    numerator = getattr(value, "numerator", None)
    denominator = getattr(value, "denominator", None)
    if numerator is None or denominator is None:
        raise PolyError(f"Not a rational: {value!r}")
    return Fraction(int(numerator), int(denominator))


def grevlex_key(exponent: Exponent) -> tuple[int, ...]:
    return (sum(exponent),) + tuple(-e for e in reversed(exponent))


@dataclass(frozen=True, slots=True, eq=False)
class Poly:
    element: PolyElement

    # -- construction -------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "Poly":
        return cls(poly_ring(tuple(variables)).zero)

    @classmethod
    def one(cls, variables: Sequence[str]) -> "Poly":
        return cls(poly_ring(tuple(variables)).one)

    @classmethod
    def constant(cls, value: Scalar | str, variables: Sequence[str]) -> "Poly":
        ring = poly_ring(tuple(variables))
        return cls(ring.ground_new(to_qq(value)))

    @classmethod
    def variable(cls, name: str, variables: Sequence[str] | None = None) -> "Poly":
        names = tuple(variables) if variables is not None else (name,)
        if name not in names:
            raise PolyError(f"Variable {name!r} not among {names}")
        ring = poly_ring(names)
        return cls(ring.gens[names.index(name)])

    @classmethod
    def from_terms(cls, variables: Sequence[str], terms: Mapping[Exponent, Scalar] | Iterable[tuple[Exponent, Scalar]]) -> "Poly":
        names = tuple(variables)
        ring = poly_ring(names)
        items = terms.items() if isinstance(terms, Mapping) else terms
        collected: dict[Exponent, Fraction] = {}
        for exponent, coeff in items:
            exponent = tuple(int(e) for e in exponent)
            if len(exponent) != len(names) or any(e < 0 for e in exponent):
                raise PolyError(f"Bad exponent vector {exponent} for variables {names}")
            collected[exponent] = collected.get(exponent, Fraction(0)) + to_fraction(coeff)
        rep = {exp: to_qq(c) for exp, c in collected.items() if c != 0}
        return cls(ring.from_dict(rep) if rep else ring.zero)

    # -- structure ----------------------------------------------------

    @property
    def ring(self) -> PolyRing:
        return self.element.ring

    @property
    def vars(self) -> tuple[str, ...]:
        return tuple(str(symbol) for symbol in self.element.ring.symbols)

    def index(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError as exc:
            raise PolyError(f"Variable {var!r} not among {self.vars}") from exc

    def is_zero(self) -> bool:
        return not self.element

    def is_constant(self) -> bool:
        return all(not any(monom) for monom in self.element.keys())

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise PolyError("Polynomial is not constant")
        return sum((to_fraction(c) for c in self.element.values()), Fraction(0))

    def terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in descending grevlex order."""
        items = [(tuple(monom), to_fraction(coeff)) for monom, coeff in self.element.items()]
        items.sort(key=lambda item: grevlex_key(item[0]), reverse=True)
        return items

    def term_count(self) -> int:
        return len(self.element)

    def leading_term(self) -> tuple[Exponent, Fraction]:
        if self.is_zero():
            raise PolyError("Zero polynomial has no leading term")
        return self.terms()[0]

    def degree(self, var: str | None = None) -> int:
        """Total degree, or degree in `var`; -1 for the zero polynomial."""
        if self.is_zero():
            return -1
        if var is None:
            return max(sum(monom) for monom in self.element.keys())
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max(monom[i] for monom in self.element.keys())

    def used_vars(self) -> tuple[str, ...]:
        names = self.vars
        used = set()
        for monom in self.element.keys():
            used.update(i for i, e in enumerate(monom) if e)
        return tuple(names[i] for i in sorted(used))

    def is_homogeneous(self, variables: Sequence[str] | None = None) -> bool:
        if self.is_zero():
            return True
        picks = [self.index(v) for v in variables] if variables is not None else list(range(len(self.vars)))
        degrees = {sum(monom[i] for i in picks) for monom in self.element.keys()}
        return len(degrees) == 1

    def coefficient(self, exponent: Mapping[str, int]) -> Fraction:
        target = tuple(exponent.get(v, 0) for v in self.vars)
        unknown = set(exponent) - set(self.vars)
        if unknown and any(exponent[v] for v in unknown):
            return Fraction(0)
        coeff = self.element.get(target)
        return to_fraction(coeff) if coeff is not None else Fraction(0)

    def coeffs_in(self, var: str) -> dict[int, "Poly"]:
        """Coefficients as polynomials in the other variables (same variable list)."""
        if var not in self.vars:
            return {0: self} if not self.is_zero() else {}
        i = self.vars.index(var)
        buckets: dict[int, dict[Exponent, Any]] = {}
        for monom, coeff in self.element.items():
            power = monom[i]
            stripped = monom[:i] + (0,) + monom[i + 1 :]
            buckets.setdefault(power, {})[stripped] = coeff
        return {power: Poly(self.ring.from_dict(rep)) for power, rep in buckets.items()}

    def leading_coeff_in(self, var: str) -> "Poly":
        coeffs = self.coeffs_in(var)
        if not coeffs:
            raise PolyError("Zero polynomial has no leading coefficient")
        return coeffs[max(coeffs)]

    # -- variable bookkeeping ------------------------------------------

    def with_vars(self, variables: Sequence[str]) -> "Poly":
        names = tuple(variables)
        if names == self.vars:
            return self
        missing = set(self.used_vars()) - set(names)
        if missing:
            raise PolyError(f"Cannot drop variables in use: {sorted(missing)}")
        ring = poly_ring(names)
        positions = [self.vars.index(v) if v in self.vars else None for v in names]
        rep = {}
        for monom, coeff in self.element.items():
            rep[tuple(monom[p] if p is not None else 0 for p in positions)] = coeff
        return Poly(ring.from_dict(rep) if rep else ring.zero)

    def rename(self, mapping: Mapping[str, str]) -> "Poly":
        names = tuple(mapping.get(v, v) for v in self.vars)
        ring = poly_ring(names)
        rep = dict(self.element.items())
        return Poly(ring.from_dict(rep) if rep else ring.zero)

    def align(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if self.ring == other.ring:
            return self, other
        names = _union(self.vars, other.vars)
        return self.with_vars(names), other.with_vars(names)

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other: Any) -> tuple[PolyElement, PolyElement] | None:
        if isinstance(other, Poly):
            a, b = self.align(other)
            return a.element, b.element
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.element, self.ring.ground_new(to_qq(other))
        return None

    def __add__(self, other: Any) -> "Poly":
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return Poly(pair[0] + pair[1])

    def __radd__(self, other: Any) -> "Poly":
        return self.__add__(other)

    def __sub__(self, other: Any) -> "Poly":
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return Poly(pair[0] - pair[1])

    def __rsub__(self, other: Any) -> "Poly":
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return Poly(pair[1] - pair[0])

    def __mul__(self, other: Any) -> "Poly":
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return Poly(pair[0] * pair[1])

    def __rmul__(self, other: Any) -> "Poly":
        return self.__mul__(other)

    def __neg__(self) -> "Poly":
        return Poly(-self.element)

    def __pow__(self, power: int) -> "Poly":
        if not isinstance(power, int) or power < 0:
            raise PolyError(f"Exponent must be a non-negative integer, got {power!r}")
        return Poly(self.element**power)

    def __truediv__(self, other: Any) -> "Poly":
        value = to_fraction(other)
        if value == 0:
            raise ZeroDivisionError("Polynomial division by zero")
        return Poly(self.element * to_qq(1 / value))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_constant() and (self.is_zero() and other == 0 or self.constant_value() == other)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.align(other)
        return a.element == b.element

    def __hash__(self) -> int:
        names = self.vars
        return hash(
            frozenset(
                (tuple((names[i], e) for i, e in enumerate(monom) if e), to_fraction(coeff))
                for monom, coeff in self.element.items()
            )
        )

    def exact_div(self, other: "Poly") -> "Poly | None":
        """Quotient when `other` divides `self` exactly, otherwise None."""
        if other.is_zero():
            raise ZeroDivisionError("Polynomial division by zero")
        a, b = self.align(other)
        try:
            return Poly(a.element.exquo(b.element))
        except ExactQuotientFailed:
            return None

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self.align(other)
        return Poly(a.element.gcd(b.element))

    def canonical(self) -> "Poly":
        """Coprime integer coefficients with a positive grevlex-leading coefficient."""
        if self.is_zero():
            raise PolyError("Cannot canonicalize the zero polynomial")
        coeffs = [to_fraction(c) for c in self.element.values()]
        denominator = math.lcm(*(c.denominator for c in coeffs))
        numerator = math.gcd(*(c.numerator for c in coeffs))
        scale = Fraction(denominator, numerator)
        if self.leading_term()[1] < 0:
            scale = -scale
        return Poly(self.element * to_qq(scale))

    def is_canonical(self) -> bool:
        return not self.is_zero() and self.canonical().element == self.element

    def monic_scale(self) -> Fraction:
        """Leading grevlex coefficient."""
        return self.leading_term()[1]

    # -- calculus and substitution ------------------------------------

    def derivative(self, var: str) -> "Poly":
        if var not in self.vars:
            return Poly(self.ring.zero)
        return Poly(self.element.diff(self.ring.gens[self.vars.index(var)]))

    def evaluate(self, point: Mapping[str, Any] | Sequence[Any], coerce: Callable[[Fraction], Any] | None = None) -> Any:
        """Full evaluation; exact for rational points, numeric with `coerce`."""
        values = self._point_values(point)
        total: Any = 0
        for monom, coeff in self.element.items():
            term: Any = to_fraction(coeff)
            if coerce is not None:
                term = coerce(term)
            for value, e in zip(values, monom):
                if e:
                    term = term * value**e
            total = total + term
        if isinstance(total, (int, Fraction)):
            return coerce(Fraction(total)) if coerce is not None else Fraction(total)
        return total

    def partial(self, point: Mapping[str, Scalar]) -> "Poly":
        """Substitute rational values for some variables; the variable list is kept."""
        names = self.vars
        picks = {names.index(v): to_fraction(value) for v, value in point.items() if v in names}
        collected: dict[Exponent, Fraction] = {}
        for monom, coeff in self.element.items():
            c = to_fraction(coeff)
            reduced = list(monom)
            for i, value in picks.items():
                if monom[i]:
                    c *= value ** monom[i]
                    reduced[i] = 0
            key = tuple(reduced)
            collected[key] = collected.get(key, Fraction(0)) + c
        return Poly.from_terms(names, collected)

    def substitute(self, var: str, replacement: "Poly") -> "Poly":
        if var not in self.vars:
            return self.align(replacement)[0]
        coeffs = self.coeffs_in(var)
        base, rep = self.align(replacement)
        result = Poly.zero(base.vars)
        for power in range(max(coeffs), -1, -1):
            result = result * rep
            if power in coeffs:
                result = result + coeffs[power]
        return result

    def dehomogenize(self, var: str) -> "Poly":
        """Set `var` to 1 and drop it from the variable list."""
        reduced = self.partial({var: 1})
        return reduced.with_vars(tuple(v for v in self.vars if v != var))

    def homogenize(self, new_var: str) -> "Poly":
        if new_var in self.vars:
            raise PolyError(f"Variable {new_var!r} already present")
        top = self.degree()
        names = self.vars + (new_var,)
        terms = {monom + (top - sum(monom),): to_fraction(c) for monom, c in self.element.items()}
        return Poly.from_terms(names, terms)

    def _point_values(self, point: Mapping[str, Any] | Sequence[Any]) -> list[Any]:
        names = self.vars
        if isinstance(point, Mapping):
            missing = [v for v in self.used_vars() if v not in point]
            if missing:
                raise PolyError(f"Evaluation point misses variables {missing}")
            return [point.get(v, 0) for v in names]
        values = list(point)
        if len(values) != len(names):
            raise PolyError(f"Evaluation point has arity {len(values)}, expected {len(names)}")
        return values

    # -- display --------------------------------------------------------

    def render(self, compact: bool = False) -> str:
        if self.is_zero():
            return "0"
        names = self.vars
        joiner = ("+", "-") if compact else (" + ", " - ")
        pieces: list[str] = []
        for position, (monom, coeff) in enumerate(self.terms()):
            factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, monom) if e]
            magnitude = abs(coeff)
            if factors and magnitude == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(magnitude)] + factors)
            if position == 0:
                pieces.append(("-" if coeff < 0 else "") + body)
            else:
                pieces.append((joiner[1] if coeff < 0 else joiner[0]) + body)
        return "".join(pieces)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Poly({self.render()!r}, vars={self.vars})"


def _union(first: tuple[str, ...], second: tuple[str, ...]) -> tuple[str, ...]:
    return first + tuple(v for v in second if v not in first)


def variables(prefix: str, count: int, start: int = 0) -> tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(start, start + count))


def poly_document(poly: Poly) -> dict[str, Any]:
    """JSON-ready {"vars", "terms"} with terms in descending grevlex order."""
    return {
        "vars": list(poly.vars),
        "terms": [{"c": str(coeff), "e": list(monom)} for monom, coeff in poly.terms()],
    }
