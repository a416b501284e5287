from __future__ import annotations

import pytest

from logdisc.geometry.polytope import (
    PolytopeError,
    convex_hull,
    f_vector,
    face_of,
    faces,
    facet_normals,
    initial_form,
    newton_polytope,
)
from logdisc.model.poly import Poly
from logdisc.moduli.m0m import m05_discriminant

U5 = ("u0", "u1", "u2", "u3", "u4")


def test_square():
    P = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1), (1, 0)])
    assert P.dim == 2
    assert len(P.vertices) == 4
    assert f_vector(P) == [4, 4]
    assert sorted(facet_normals(P)) == [(-1, 0), (0, -1), (0, 1), (1, 0)]


def test_interior_and_edge_points_are_not_vertices():
    P = convex_hull([(0, 0), (2, 0), (0, 2), (1, 0), (1, 1), (0, 1)])
    assert sorted(P.vertices) == [(0, 0), (0, 2), (2, 0)]
    assert P.contains((1, 1))
    assert not P.contains((2, 1))


def test_three_simplex():
    P = convex_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert P.dim == 3
    assert f_vector(P) == [4, 6, 4]
    by_dim = faces(P)
    assert all(len(face) == 2 for face in by_dim[1])


def test_graded_simplex_normals():
    P = convex_hull([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert P.graded
    assert P.dim == 2
    assert sorted(facet_normals(P)) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_m05_newton_polytope():
    P = newton_polytope(m05_discriminant())
    assert P.graded
    assert P.dim == 4
    fv = f_vector(P)
    assert fv == [7, 17, 18, 8]
    assert fv[0] - fv[1] + fv[2] - fv[3] == 0
    assert set(facet_normals(P)) == {
        (1, 0, 1, 0, 1),
        (0, 1, 0, 1, 1),
        (0, 0, 1, 1, 1),
        (1, 1, 0, 0, 1),
        (1, 0, 0, 0, 0),
        (0, 1, 0, 0, 0),
        (0, 0, 1, 0, 0),
        (0, 0, 0, 1, 0),
    }


def test_newton_polytope_of_a_product_is_the_minkowski_sum():
    names = ("u0", "u1", "u2")
    u0, u1, u2 = (Poly.variable(n, names) for n in names)
    P = newton_polytope((u0 + u1) * (u1 + u2))
    assert set(P.vertices) == {(1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1)}
    assert f_vector(P) == [4, 4]


def test_initial_form_on_a_facet_of_m05():
    u0, u1, u2, u3, u4 = (Poly.variable(n, U5) for n in U5)
    inner = u0 * u3 + u0 * u4 + u1 * u2 + u2 * u4
    w = [0, 1, 0, 1, 1]
    assert initial_form(m05_discriminant(), w) == inner * inner - u0 * u1 * u2 * u3 * 4
    face = face_of(newton_polytope(m05_discriminant()), w)
    assert set(face) == {monom for monom, _ in initial_form(m05_discriminant(), w).terms()}


def test_initial_form_with_constant_weight_is_everything():
    f = m05_discriminant()
    assert initial_form(f, [3, 3, 3, 3, 3]) == f


def test_initial_form_picks_a_vertex():
    u0, _, _, _, u4 = (Poly.variable(n, U5) for n in U5)
    assert initial_form(m05_discriminant(), [0, 0, 0, 0, 1]) == initial_form(m05_discriminant(), [0, 0, 0, 0, 5])
    assert initial_form(m05_discriminant(), [1, 1, 1, 1, 0]) == u4**4


def test_errors():
    with pytest.raises(PolytopeError, match="empty"):
        convex_hull([])
    with pytest.raises(PolytopeError, match="zero polynomial"):
        newton_polytope(Poly.zero(U5))
    with pytest.raises(PolytopeError, match="expected 5"):
        initial_form(m05_discriminant(), [1, 2])
