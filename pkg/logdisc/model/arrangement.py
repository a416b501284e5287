"""Affine hyperplane arrangements with exact rational data."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Sequence

from logdisc.algebra import linalg
from logdisc.errors import LogdiscError
from logdisc.model.poly import Poly, to_fraction


class ArrangementError(LogdiscError):
    """Raised when arrangement data violate essential/non-central/distinctness."""


def x_vars(d: int) -> tuple[str, ...]:
    return tuple(f"x{j}" for j in range(1, d + 1))


def u_vars(count: int) -> tuple[str, ...]:
    return tuple(f"u{i}" for i in range(count))


@dataclass(frozen=True, slots=True)
class Arrangement:
    """Forms l_i(x) = b_i + A_i . x for i = 0..n."""

    d: int
    b: tuple[Fraction, ...]
    A: tuple[tuple[Fraction, ...], ...]
    labels: tuple[str, ...] | None = None

    @property
    def n_plus_1(self) -> int:
        return len(self.b)

    @property
    def n(self) -> int:
        return len(self.b) - 1

    @property
    def L_rows(self) -> list[list[Fraction]]:
        """Rows (b_i, a_i1, ..., a_id) of L^T."""
        return [[bi, *row] for bi, row in zip(self.b, self.A)]

    @property
    def x_names(self) -> tuple[str, ...]:
        return x_vars(self.d)

    @property
    def u_names(self) -> tuple[str, ...]:
        return u_vars(self.n_plus_1)

    def label_map(self) -> dict[str, str]:
        """u_i -> label, empty when unlabeled."""
        if self.labels is None:
            return {}
        return dict(zip(self.u_names, self.labels))

    def form(self, i: int) -> Poly:
        names = self.x_names
        terms = {tuple([0] * self.d): self.b[i]}
        for j, a in enumerate(self.A[i]):
            exponent = [0] * self.d
            exponent[j] = 1
            terms[tuple(exponent)] = a
        return Poly.from_terms(names, terms)

    def forms(self) -> list[Poly]:
        return [self.form(i) for i in range(self.n_plus_1)]

    def involved(self, j: int) -> list[int]:
        """Indices of forms whose linear part involves x_{j+1}."""
        return [i for i, row in enumerate(self.A) if row[j] != 0]

    def form_values(self, x: Sequence[Any]) -> list[Any]:
        """l_i(x) for numeric or exact x."""
        return [bi + sum((a * xj for a, xj in zip(row, x)), 0) for bi, row in zip(self.b, self.A)]

    def render_forms(self) -> list[str]:
        return [form.render(compact=True) for form in self.forms()]


def make_arrangement(
    d: int,
    b: Sequence[Any],
    A: Sequence[Sequence[Any]],
    labels: Sequence[str] | None = None,
) -> Arrangement:
    """Validated constructor: essential, non-central, distinct hyperplanes."""
    if d < 1:
        raise ArrangementError(f"Ambient dimension must be positive, got {d}")
    if len(b) != len(A):
        raise ArrangementError(f"b has {len(b)} entries but A has {len(A)} rows")
    if not b:
        raise ArrangementError("Arrangement has no hyperplanes")
    if any(len(row) != d for row in A):
        raise ArrangementError(f"Every row of A must have {d} entries")
    if labels is not None and len(labels) != len(b):
        raise ArrangementError(f"Expected {len(b)} labels, got {len(labels)}")
    if labels is not None and len(set(labels)) != len(labels):
        raise ArrangementError("Labels must be distinct")
    b_exact = tuple(to_fraction(v) for v in b)
    A_exact = tuple(tuple(to_fraction(v) for v in row) for row in A)
    arr = Arrangement(d=d, b=b_exact, A=A_exact, labels=tuple(labels) if labels is not None else None)
    rows = arr.L_rows
    if any(all(v == 0 for v in row) for row in A_exact) or linalg.rank(rows) != d + 1:
        raise ArrangementError("not essential/non-central")
    for i, j in combinations(range(len(rows)), 2):
        if linalg.proportional(rows[i], rows[j]):
            raise ArrangementError(f"repeated hyperplane {i},{j}")
    return arr


def simplex_arrangement(d: int) -> Arrangement:
    """x_1, ..., x_d and x_1 + ... + x_d + 1."""
    identity = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    return make_arrangement(d, [0] * d + [1], identity + [[1] * d])


def points_arrangement(points: Sequence[Any]) -> Arrangement:
    """Forms x - p_i on the line."""
    return make_arrangement(1, [-to_fraction(p) for p in points], [[1] for _ in points])


def affine_change(arr: Arrangement, M: Sequence[Sequence[Any]], c: Sequence[Any]) -> Arrangement:
    """Arrangement in coordinates y with x = M y + c."""
    matrix = linalg.to_matrix(M)
    shift = [to_fraction(v) for v in c]
    if len(matrix) != arr.d or linalg.rank(matrix) != arr.d:
        raise ArrangementError("Coordinate change must be an invertible d x d matrix")
    new_A = linalg.matmul([list(row) for row in arr.A], matrix)
    new_b = [bi + sum((a * s for a, s in zip(row, shift)), Fraction(0)) for bi, row in zip(arr.b, arr.A)]
    return make_arrangement(arr.d, new_b, new_A, arr.labels)


def scale_forms(arr: Arrangement, factors: Sequence[Any]) -> Arrangement:
    scales = [to_fraction(v) for v in factors]
    if any(s == 0 for s in scales):
        raise ArrangementError("Scaling factors must be nonzero")
    return make_arrangement(
        arr.d,
        [s * bi for s, bi in zip(scales, arr.b)],
        [[s * a for a in row] for s, row in zip(scales, arr.A)],
        arr.labels,
    )


def permute_forms(arr: Arrangement, order: Sequence[int]) -> Arrangement:
    if sorted(order) != list(range(arr.n_plus_1)):
        raise ArrangementError(f"Not a permutation of 0..{arr.n}: {list(order)}")
    labels = [arr.labels[i] for i in order] if arr.labels is not None else None
    return make_arrangement(arr.d, [arr.b[i] for i in order], [arr.A[i] for i in order], labels)


@dataclass(slots=True)
class ValidationReport:
    essential: bool
    uniform_L: bool
    uniform_A: bool
    doubly_uniform: bool
    flats_at_infinity: bool
    witness: list[int] | None = None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "essential": self.essential,
            "uniform_L": self.uniform_L,
            "uniform_A": self.uniform_A,
            "doubly_uniform": self.doubly_uniform,
            "flats_at_infinity": self.flats_at_infinity,
            "witness": self.witness,
            "notes": list(self.notes),
        }
