import pytest

from gradedgeo.errors import DegreeError
from gradedgeo.geometry import degree_report, einstein_check, ricci_scalar, scalar_constancy_check
from gradedgeo.symkernel import GradedSeries, parse_expression

from conftest import curvature, load


@pytest.mark.parametrize("name, kappa", [
    ("sphere", "1/r^2"),
    ("poincare_disk", "-1"),
    ("euclidean_plane", "0"),
])
def test_classical_einstein_metrics(name, kappa):
    m = load(name).metric
    _, _, ric = curvature(m)
    assert einstein_check(m, ric, parse_expression(m.chart, kappa)).passed


def test_sphere_fails_with_wrong_constant():
    m = load("sphere").metric
    _, _, ric = curvature(m)
    assert not einstein_check(m, ric, parse_expression(m.chart, "2/r^2")).passed


def test_euclidean_plane_is_flat():
    m = load("euclidean_plane").metric
    _, r, ric = curvature(m)
    assert not list(r.nonzero_items())
    assert ricci_scalar(m, ric).is_zero()


def test_nonzero_degree_rejects_constant_kappa(g0):
    m = g0.metric
    _, _, ric = curvature(m)
    with pytest.raises(DegreeError):
        einstein_check(m, ric, GradedSeries.one(m.chart))


def test_kappa_must_match_metric_degree(g0):
    m = g0.metric
    _, _, ric = curvature(m)
    with pytest.raises(DegreeError):
        einstein_check(m, ric, parse_expression(m.chart, "xi"))


def test_flat_g0_is_einstein_with_zero(g0):
    m = g0.metric
    _, _, ric = curvature(m)
    assert einstein_check(m, ric, GradedSeries.zero(m.chart)).passed


@pytest.mark.parametrize("name", ["g0_warped", "odd_r1111_warped", "super_line"])
def test_scalar_is_never_a_nonzero_constant(name):
    m = load(name, trunc=3).metric
    _, _, ric = curvature(m)
    assert scalar_constancy_check(m, ricci_scalar(m, ric)).passed


def test_scalar_constancy_not_applicable_in_degree_zero():
    m = load("sphere").metric
    _, _, ric = curvature(m)
    report = scalar_constancy_check(m, ricci_scalar(m, ric))
    assert report.passed
    assert report.notes


@pytest.mark.parametrize("name", ["g0_warped", "odd_r1111_warped", "ppwave"])
def test_components_have_expected_degrees(name):
    m = load(name, trunc=3).metric
    c, r, ric = curvature(m)
    report = degree_report(m, c, r, ric)
    assert report.passed, report.failures
