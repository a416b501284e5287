"""Lattice polytopes given by exponent points, vertices and facets."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

Point = tuple[int, ...]


@dataclass(frozen=True, slots=True)
class Facet:
    """Inequality normal . alpha >= offset, tight on `vertices` (indices into the vertex list)."""

    normal: tuple[int, ...]
    offset: Fraction
    vertices: frozenset[int]


@dataclass(frozen=True, slots=True)
class LatticePolytope:
    ambient_dim: int
    points: tuple[Point, ...]
    vertices: tuple[Point, ...]
    dim: int
    facets: tuple[Facet, ...]
    # Points lie on sum(alpha) = const; normals are then reported modulo the all-ones vector.
    graded: bool = False

    def contains(self, point: Point) -> bool:
        return all(sum(w * a for w, a in zip(f.normal, point)) >= f.offset for f in self.facets)

    def to_dict(self) -> dict[str, Any]:
        return {
            "ambient_dim": self.ambient_dim,
            "dim": self.dim,
            "points": [list(p) for p in self.points],
            "vertices": [list(v) for v in self.vertices],
            "facets": [
                {"normal": list(f.normal), "offset": str(f.offset), "vertices": sorted(f.vertices)}
                for f in self.facets
            ],
        }
