from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from logdisc.algebra import linalg
from logdisc.geometry.reciprocal import (
    ReciprocalError,
    circuit_generators,
    gamma_point,
    kernel_basis,
    plucker_names,
    plucker_substitution,
    pull_back_hurwitz,
)
from logdisc.matroid.validate import sample_generic_arrangement
from logdisc.model.arrangement import ArrangementError
from logdisc.model.poly import Poly


def test_kernel_basis_spans_the_kernel(m05, reducible_six_planes):
    for arr in (m05, reducible_six_planes):
        K = kernel_basis(arr.A)
        assert len(K) == arr.n_plus_1
        assert len(K[0]) == arr.n_plus_1 - arr.d
        product = linalg.matmul(linalg.transpose(arr.A), K)
        assert all(v == 0 for row in product for v in row)
        assert linalg.rank(K) == arr.n_plus_1 - arr.d


def test_kernel_basis_needs_full_rank():
    with pytest.raises(ReciprocalError, match="rank 2"):
        kernel_basis([[1, 2], [2, 4], [3, 6]])


def test_circuit_generators_of_generic_lines(generic_lines):
    generators = circuit_generators(generic_lines)
    assert len(generators) == 5
    for g in generators:
        assert len(g.support) == 4
        assert g.poly.is_homogeneous()
        assert g.poly.degree() == 3
        assert g.poly.is_canonical()


@pytest.mark.parametrize(
    "x", [[Fraction(1, 101), Fraction(1, 103)], [Fraction(37, 101), Fraction(-50, 103)], [Fraction(-200, 101), Fraction(300, 103)]]
)
def test_circuits_vanish_on_the_reciprocal_point(generic_lines, x):
    y = gamma_point(generic_lines, x)
    for g in circuit_generators(generic_lines):
        assert g.poly.evaluate(y) == 0


def test_non_uniform_arrangement_skips_partial_circuits(m05, caplog):
    generators = circuit_generators(m05)
    assert all(len(g.support) == 4 for g in generators)
    assert len(generators) < 5
    assert "not uniform" in caplog.text
    y = gamma_point(m05, [Fraction(1, 3), Fraction(5, 2)])
    assert all(g.poly.evaluate(y) == 0 for g in generators)


def test_gamma_point_rejects_points_on_hyperplanes(m05):
    with pytest.raises(ArrangementError, match="on a hyperplane"):
        gamma_point(m05, [1, 3])


def test_plucker_names(m05):
    names = plucker_names(m05)
    assert len(names) == 10
    assert names[0] == "p0_1_2"
    assert names[-1] == "p2_3_4"


def test_plucker_ratios_do_not_depend_on_the_basis(m05):
    ones = [1] * 5
    assert plucker_substitution(m05, [0, 1, 2], ones) == -plucker_substitution(m05, [0, 1, 3], ones)
    u = [1, 2, 3, 4, 5]
    ratio = plucker_substitution(m05, [2, 1, 0], u) / plucker_substitution(m05, [0, 1, 3], u)
    assert ratio == Fraction(-4, 3)


@pytest.mark.parametrize(
    "subset, message",
    [([0, 0, 1], "repeated"), ([0, 1], "3 entries"), ([0, 1, 7], "out of range")],
)
def test_plucker_index_errors(m05, subset, message):
    with pytest.raises(ReciprocalError, match=message):
        plucker_substitution(m05, subset, [1] * 5)


def test_plucker_zero_exponent(m05):
    with pytest.raises(ReciprocalError, match="zero exponent"):
        plucker_substitution(m05, [0, 1, 2], [0, 1, 1, 1, 1])


def test_pull_back_hurwitz(m05):
    names = plucker_names(m05)
    hurwitz = Poly.variable("p0_1_2", names) - Poly.variable("p0_1_3", names)
    u2, u3 = (Poly.variable(n, m05.u_names) for n in ("u2", "u3"))
    assert pull_back_hurwitz(m05, hurwitz) == u2 + u3


def test_pull_back_hurwitz_errors(m05):
    names = plucker_names(m05) + ("q",)
    with pytest.raises(ReciprocalError, match="homogeneous"):
        pull_back_hurwitz(m05, Poly.variable("p0_1_2", names) + 1)
    with pytest.raises(ReciprocalError, match="unknown"):
        pull_back_hurwitz(m05, Poly.variable("q", names))


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("d, n_plus_1, expected", [(1, 4, 4), (2, 5, 5)])
def test_circuits_of_random_uniform_arrangements(d, n_plus_1, expected, seed):
    arr = sample_generic_arrangement(d, n_plus_1, np.random.default_rng(seed))
    generators = circuit_generators(arr)
    assert len(generators) == expected
    y = gamma_point(arr, [Fraction(7, 101), Fraction(11, 103)][:d])
    for g in generators:
        assert g.poly.degree() == d + 1
        assert g.poly.evaluate(y) == 0
