"""Newton polytopes, face enumeration and initial forms.

Hulls are exact: the points are charted onto their affine hull, every
dim-subset spanning a hyperplane is tested for one-sidedness, and the
surviving hyperplanes are deduplicated by their primitive integer equation.
Faces are the intersections of facet vertex sets.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
import logging
import math
from typing import Any, Iterable, Sequence

from logdisc.algebra import linalg
from logdisc.errors import LogdiscError
from logdisc.model.poly import Poly, to_fraction
from logdisc.model.polytope import Facet, LatticePolytope, Point
from logdisc.parallel import ordered_map

logger = logging.getLogger(__name__)

MAX_AMBIENT_DIM = 8
MAX_VERTICES = 200
MAX_FACE_DIM = 5


class PolytopeError(LogdiscError):
    """Raised on empty input or when a size cap is exceeded."""


def _primitive(values: Sequence[Fraction]) -> tuple[int, ...]:
    scale = math.lcm(*(v.denominator for v in values))
    ints = [int(v * scale) for v in values]
    g = math.gcd(*ints)
    return tuple(v // g for v in ints) if g else tuple(ints)


def _chart(points: Sequence[Point]) -> list[int]:
    """Coordinates onto which the affine hull projects bijectively."""
    origin = points[0]
    diffs = [[a - b for a, b in zip(p, origin)] for p in points[1:]]
    diffs = [row for row in diffs if any(row)]
    if not diffs:
        return []
    _, pivots = linalg.rref(diffs)
    return pivots


def _drop_midpoints(points: Sequence[Point]) -> list[Point]:
    """Discard points that are midpoints of two others; they are never vertices."""
    present = set(points)
    kept = []
    for p in points:
        inner = False
        for q in points:
            if q == p:
                continue
            mirror = tuple(2 * a - b for a, b in zip(p, q))
            if mirror in present and mirror != q:
                inner = True
                break
        if not inner:
            kept.append(p)
    return kept


def convex_hull(points: Iterable[Sequence[int]]) -> LatticePolytope:
    pts = sorted({tuple(int(v) for v in p) for p in points})
    if not pts:
        raise PolytopeError("convex hull of an empty point set")
    ambient = len(pts[0])
    if ambient > MAX_AMBIENT_DIM:
        raise PolytopeError(f"ambient dimension {ambient} exceeds the cap {MAX_AMBIENT_DIM}")
    graded = len({sum(p) for p in pts}) == 1
    pivots = _chart(pts)
    dim = len(pivots)
    if dim == 0:
        return LatticePolytope(ambient, tuple(pts), (pts[0],), 0, (), graded)

    candidates = _drop_midpoints(pts)
    if len(candidates) > MAX_VERTICES:
        raise PolytopeError(f"{len(candidates)} candidate vertices exceed the cap {MAX_VERTICES}")
    chart = [[Fraction(p[c]) for c in pivots] for p in candidates]

    def scan(first: int) -> list[tuple[tuple[int, ...], list[Fraction]]]:
        found = []
        for rest in combinations(range(first + 1, len(chart)), dim - 1):
            rows = [chart[i] + [Fraction(1)] for i in (first, *rest)]
            kernel = linalg.nullspace(rows, dim + 1)
            if len(kernel) != 1:
                continue
            plane = kernel[0]
            values = [sum((w * q for w, q in zip(plane, point)), plane[dim]) for point in chart]
            if all(v >= 0 for v in values):
                oriented = plane
            elif all(v <= 0 for v in values):
                oriented = [-v for v in plane]
            else:
                continue
            found.append((_primitive(oriented), oriented))
        return found

    planes: dict[tuple[int, ...], list[Fraction]] = {}
    for batch in ordered_map(scan, range(len(chart))):
        for key, plane in batch:
            planes.setdefault(key, plane)

    tight_sets = []
    for plane in planes.values():
        tight_sets.append(
            frozenset(i for i, point in enumerate(chart) if sum((w * q for w, q in zip(plane, point)), plane[dim]) == 0)
        )
    vertex_ids = []
    for i in range(len(candidates)):
        holding = [s for s in tight_sets if i in s]
        if holding and frozenset.intersection(*holding) == {i}:
            vertex_ids.append(i)
    position = {i: k for k, i in enumerate(vertex_ids)}

    facets = []
    for plane, tight in zip(planes.values(), tight_sets):
        lifted = [Fraction(0)] * ambient
        for k, column in enumerate(pivots):
            lifted[column] = plane[k]
        normal = list(_primitive(lifted))
        if graded:
            low = min(normal)
            normal = list(_primitive([Fraction(v - low) for v in normal]))
        offset = min(Fraction(sum(w * a for w, a in zip(normal, p))) for p in pts)
        facets.append(Facet(tuple(normal), offset, frozenset(position[i] for i in tight if i in position)))
    facets.sort(key=lambda f: f.normal)
    vertices = tuple(candidates[i] for i in vertex_ids)
    logger.debug("hull of %d points: dim %d, %d vertices, %d facets", len(pts), dim, len(vertices), len(facets))
    return LatticePolytope(ambient, tuple(pts), vertices, dim, tuple(facets), graded)


def newton_polytope(f: Poly) -> LatticePolytope:
    if f.is_zero():
        raise PolytopeError("Newton polytope of the zero polynomial")
    return convex_hull(monom for monom, _ in f.terms())


def _check_face_dim(P: LatticePolytope) -> None:
    if P.dim > MAX_FACE_DIM:
        raise PolytopeError(f"face enumeration supports dimension at most {MAX_FACE_DIM}, got {P.dim}")


def _affine_dim(points: Iterable[Point]) -> int:
    rows = [list(p) + [1] for p in points]
    return linalg.rank(rows) - 1


def faces(P: LatticePolytope) -> dict[int, list[frozenset[int]]]:
    """Proper faces by dimension, each as a set of vertex indices."""
    _check_face_dim(P)
    facet_sets = [f.vertices for f in P.facets]
    found = set(facet_sets)
    frontier = set(facet_sets)
    while frontier:
        fresh = set()
        for a in frontier:
            for b in facet_sets:
                meet = a & b
                if meet and meet not in found:
                    fresh.add(meet)
        found |= fresh
        frontier = fresh
    by_dim: dict[int, list[frozenset[int]]] = {k: [] for k in range(P.dim)}
    for face in found:
        k = _affine_dim(P.vertices[i] for i in face)
        by_dim.setdefault(k, []).append(face)
    by_dim[0] = [frozenset([i]) for i in range(len(P.vertices))] if P.dim > 0 else []
    return {k: sorted(v, key=sorted) for k, v in by_dim.items()}


def f_vector(P: LatticePolytope) -> list[int]:
    by_dim = faces(P)
    return [len(by_dim.get(k, [])) for k in range(P.dim)]


def facet_normals(P: LatticePolytope) -> list[tuple[int, ...]]:
    """Inward primitive normals; for graded polytopes the representative with min entry 0."""
    _check_face_dim(P)
    return [f.normal for f in P.facets]


def _weights(w: Sequence[Any], count: int) -> list[Fraction]:
    weights = [to_fraction(v) for v in w]
    if len(weights) != count:
        raise PolytopeError(f"weight vector has {len(weights)} entries, expected {count}")
    return weights


def initial_form(f: Poly, w: Sequence[Any]) -> Poly:
    """Sum of the terms of f whose exponents minimize w . alpha."""
    if f.is_zero():
        raise PolytopeError("initial form of the zero polynomial")
    weights = _weights(w, len(f.vars))
    scored = [(sum((a * e for a, e in zip(weights, monom)), Fraction(0)), monom, c) for monom, c in f.terms()]
    low = min(score for score, _, _ in scored)
    return Poly.from_terms(f.vars, {monom: c for score, monom, c in scored if score == low})


def face_of(P: LatticePolytope, w: Sequence[Any]) -> list[Point]:
    """The points of P on the face P^w."""
    weights = _weights(w, P.ambient_dim)
    scores = [sum((a * e for a, e in zip(weights, p)), Fraction(0)) for p in P.points]
    low = min(scores)
    return [p for p, score in zip(P.points, scores) if score == low]
