import pytest

from gradedgeo.geometry import (
    check_metric_compatibility,
    christoffel,
    connection_uniqueness_probe,
    covariant_derivative,
    koszul_check,
    lie_bracket,
    torsion_check,
)
from gradedgeo.geometry.types import VectorField
from gradedgeo.symkernel import GradedSeries, parse_expression

from conftest import load

FAST = ["g0", "g0_warped", "odd_r1111", "odd_r1111_warped", "super_line", "ppwave", "sphere", "poincare_disk"]


@pytest.mark.parametrize("name", FAST)
def test_levi_civita_is_torsion_free_and_compatible(name):
    m = load(name).metric
    c = christoffel(m)
    assert torsion_check(c).passed
    assert check_metric_compatibility(m, c).passed


@pytest.mark.parametrize("name", ["g0_warped", "odd_r1111", "super_line", "sphere"])
def test_koszul_formula(name):
    m = load(name).metric
    assert koszul_check(m, christoffel(m)).passed


@pytest.mark.slow
@pytest.mark.parametrize("name", ["flat", "disk"])
def test_levi_civita_on_seven_coordinates(name):
    m = load(name).metric
    c = christoffel(m)
    assert torsion_check(c).passed
    assert check_metric_compatibility(m, c).passed


def test_flat_christoffels_vanish(small_flat):
    c = christoffel(small_flat.metric)
    assert c.to_json() == {}


def test_constant_g0_christoffels_vanish(g0):
    assert christoffel(g0.metric).to_json() == {}


def test_warped_g0_christoffels_are_not_trivial():
    assert christoffel(load("g0_warped").metric).to_json()


def test_uniqueness_probe():
    m = load("g0_warped").metric
    c = christoffel(m)
    assert connection_uniqueness_probe(m, c.copy(), c).passed
    broken = c.copy()
    broken.gamma[0, 1, 0] = broken.gamma[0, 1, 0] + GradedSeries.one(m.chart)
    report = connection_uniqueness_probe(m, broken, c)
    assert report.notes


def test_lie_bracket_of_coordinate_fields(flat):
    chart = flat.chart
    d_x = VectorField.basis(chart, "x1")
    euler = VectorField.from_components(chart, {"x1": GradedSeries.coordinate(chart, "x1")})
    assert (lie_bracket(d_x, euler) - d_x).is_zero()
    assert (lie_bracket(euler, d_x) + d_x).is_zero()


def test_lie_bracket_of_odd_fields_is_symmetric(flat):
    chart = flat.chart
    X = VectorField.from_components(chart, {"xi1": parse_expression(chart, "x1")})
    Y = VectorField.from_components(chart, {"xi1": parse_expression(chart, "xi2*xi1")})
    assert X.degree == Y.degree
    assert (lie_bracket(X, Y) - lie_bracket(Y, X)).is_zero()


def test_covariant_derivative_is_tensorial_in_first_slot():
    m = load("super_line").metric
    chart = m.chart
    c = christoffel(m)
    X = VectorField.basis(chart, "x")
    Y = VectorField.from_components(chart, {"theta": parse_expression(chart, "x^2")})
    f = parse_expression(chart, "1 + x^2")
    lhs = covariant_derivative(c, X.times(f), Y)
    rhs = covariant_derivative(c, X, Y).times(f)
    assert (lhs - rhs).is_zero()
