import pytest

from gradedgeo.errors import DegreeError
from gradedgeo.grading import scalar_product, sign_of
from gradedgeo.specfile import parse_spec
from gradedgeo.geometry import lower_index, metric_pairing, raise_index, reduced_metric, validate_metric
from gradedgeo.geometry.types import VectorField
from gradedgeo.symkernel import parse_expression

from conftest import CORPUS, load

EVEN_ODD_Q = """
[chart]
n = 1
base = x, y
formal = theta[1]

[metric]
degree = [0]
g[x,x] = 1
g[y,y] = 1
"""

ODD_P_NEQ_Q = """
[chart]
n = 1
base = x, y
formal = theta[1]

[metric]
degree = [1]
g[x,theta] = 1
"""


@pytest.mark.parametrize("name", CORPUS)
def test_corpus_metrics_are_valid(name):
    report = validate_metric(load(name).metric)
    assert report.passed, report.failures


def test_even_metric_with_odd_q_is_rejected():
    report = validate_metric(parse_spec(EVEN_ODD_Q).metric)
    failed = {r.check for r in report.failures}
    assert "even-dimension" in failed


def test_odd_metric_with_p_neq_q_is_rejected():
    report = validate_metric(parse_spec(ODD_P_NEQ_Q).metric)
    failed = {r.check for r in report.failures}
    assert "pairing-dimension" in failed
    assert "non-degeneracy" in failed


def test_g0_is_even_but_not_degree_zero(g0):
    m = g0.metric
    assert m.is_even
    assert not m.degree.is_zero


def test_odd_metrics_are_odd(odd, super_line):
    assert odd.metric.is_odd
    assert super_line.metric.is_odd


@pytest.mark.parametrize("name", ["flat", "g0", "odd_r1111", "g0_warped"])
def test_pairing_is_graded_symmetric(name):
    m = load(name).metric
    chart = m.chart
    basis = [VectorField.basis(chart, a) for a in range(chart.dimension)]
    for X in basis:
        for Y in basis:
            sign = sign_of(scalar_product(X.degree, Y.degree))
            assert (metric_pairing(m, X, Y) - metric_pairing(m, Y, X).scale(sign)).is_zero()


def test_raise_inverts_lower(flat):
    m = flat.metric
    chart = m.chart
    X = VectorField.from_components(chart, {
        "x1": parse_expression(chart, "x2^2*xi1"),
        "z": parse_expression(chart, "x1*eta1"),
        "xi1": parse_expression(chart, "x1 + z^2"),
    })
    w = lower_index(m, X)
    assert w.degree == X.degree + m.degree
    back = raise_index(m, w)
    assert (back - X).is_zero()


def test_raise_inverts_lower_nonzero_degree(g0):
    m = g0.metric
    chart = m.chart
    X = VectorField.from_components(chart, {"x": parse_expression(chart, "x*z"), "z": parse_expression(chart, "x")})
    assert (raise_index(m, lower_index(m, X)) - X).is_zero()


def test_reduced_disk_is_poincare_disk():
    reduced = reduced_metric(load("disk").metric)
    classical = load("poincare_disk").metric
    assert reduced.chart.coordinates == classical.chart.coordinates
    for a in range(2):
        for b in range(2):
            diff = reduced.components.entries[a, b].body() - classical.components.entries[a, b].body()
            assert diff.is_zero()


def test_reduced_metric_needs_degree_zero(g0, odd):
    with pytest.raises(DegreeError):
        reduced_metric(g0.metric)
    with pytest.raises(DegreeError):
        reduced_metric(odd.metric)
