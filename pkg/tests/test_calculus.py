from functools import lru_cache

import pytest
from hypothesis import given, settings, strategies as st

from gradedgeo.errors import ChartMismatchError
from gradedgeo.geometry import (
    christoffel,
    contracted_christoffel_check,
    divergence,
    divergence_product_check,
    gradient,
    gradient_defining_check,
    gradient_product_check,
    killing_bracket,
    killing_check,
    laplacian,
    leibniz_anomaly_check,
    odd_laplacian_check,
    probe_functions,
)
from gradedgeo.geometry.types import VectorField
from gradedgeo.suites import coordinate_pairs
from gradedgeo.symkernel import GradedSeries, parse_expression

from conftest import CORPUS, ODD_CORPUS, load

EVEN_CORPUS = [name for name in CORPUS if name not in ODD_CORPUS]
HEAVY = ("flat", "disk", "ppwave")
BASE_FACTORS = ("1", "{b}", "{b}^2", "1 + {b}^2", "exp({b})", "{b}*exp(-{b})")


def test_flat_gradient_and_laplacian(small_flat):
    m = small_flat.metric
    chart = m.chart
    c = christoffel(m)
    f = parse_expression(chart, "x1^2 + x2^3")
    grad = gradient(m, f)
    assert (grad["x1"] - parse_expression(chart, "2*x1")).is_zero()
    assert (grad["x2"] - parse_expression(chart, "3*x2^2")).is_zero()
    assert (laplacian(m, c, f) - parse_expression(chart, "2 + 6*x2")).is_zero()


@pytest.mark.parametrize("name, text", [
    ("flat", "x1^2*z + xi1*eta1"),
    ("g0", "x*z + xi*eta"),
    ("g0_warped", "x^2*xi"),
    ("odd_r1111_warped", "x*z*eta"),
])
def test_gradient_defining_identity(name, text):
    m = load(name, trunc=3).metric
    assert gradient_defining_check(m, parse_expression(m.chart, text)).passed


def test_gradient_product_rule():
    m = load("g0_warped", trunc=3).metric
    chart = m.chart
    pairs = [
        (parse_expression(chart, "x^2"), parse_expression(chart, "z")),
        (parse_expression(chart, "xi"), parse_expression(chart, "x*eta")),
        (parse_expression(chart, "z*xi"), parse_expression(chart, "xi")),
    ]
    assert gradient_product_check(m, pairs).passed


def test_divergence_product_rule():
    m = load("odd_r1111_warped", trunc=3).metric
    chart = m.chart
    c = christoffel(m)
    X = VectorField.from_components(chart, {"x": parse_expression(chart, "x"), "z": parse_expression(chart, "z")})
    Y = VectorField.basis(chart, "xi")
    cases = [
        (parse_expression(chart, "x^2"), X),
        (parse_expression(chart, "eta"), X),
        (parse_expression(chart, "z"), Y),
    ]
    assert divergence_product_check(m, c, cases).passed


@pytest.mark.parametrize("name", ["g0_warped", "ppwave", "sphere"])
def test_leibniz_anomaly(name):
    m = load(name, trunc=3).metric
    c = christoffel(m)
    assert leibniz_anomaly_check(m, c, coordinate_pairs(m)).passed


@lru_cache(maxsize=None)
def levi_civita(name):
    m = load(name, trunc=3).metric
    return m, christoffel(m)


@st.composite
def homogeneous_functions(draw, chart):
    """k * (función de una coordenada base) * (monomio en los generadores)."""
    k = draw(st.integers(min_value=1, max_value=3)) * draw(st.sampled_from([1, -1]))
    text = "1"
    if chart.base:
        text = draw(st.sampled_from(BASE_FACTORS)).format(b=draw(st.sampled_from(chart.base)))
    mono = draw(st.sampled_from(chart.monomials_up_to(1)))
    return parse_expression(chart, f"{k}*({text})") * GradedSeries.monomial(chart, mono)


@pytest.mark.parametrize("name", [
    pytest.param(name, marks=pytest.mark.slow) if name in HEAVY else name for name in EVEN_CORPUS
])
@settings(max_examples=20, deadline=None)
@given(data=st.data())
def test_leibniz_anomaly_on_random_pairs(name, data):
    m, c = levi_civita(name)
    f = data.draw(homogeneous_functions(m.chart))
    h = data.draw(homogeneous_functions(m.chart))
    assert leibniz_anomaly_check(m, c, [(f, h)]).passed


@pytest.mark.parametrize("name", ODD_CORPUS)
def test_odd_laplacian_vanishes(name):
    m = load(name, trunc=3).metric
    assert odd_laplacian_check(m, christoffel(m)).passed


def test_even_laplacian_does_not_vanish(g0):
    m = g0.metric
    report = odd_laplacian_check(m, christoffel(m), [("xz", parse_expression(m.chart, "x*z"))])
    assert not report.passed


def test_probe_functions_cover_generators(odd):
    labels = [label for label, _ in probe_functions(odd.metric, weight=1)]
    assert "1*1" in labels
    assert "x*xi" in labels
    assert "x^2*eta" in labels


@pytest.mark.parametrize("name", ["g0_warped", "odd_r1111_warped", "ppwave", "super_line"])
def test_contracted_christoffel(name):
    m = load(name, trunc=3).metric
    assert contracted_christoffel_check(m, christoffel(m)).passed


def test_divergence_of_coordinate_field_on_sphere():
    m = load("sphere").metric
    c = christoffel(m)
    X = VectorField.basis(m.chart, "x")
    expected = parse_expression(m.chart, "-4*x/(1 + x^2 + y^2)")
    assert (divergence(m, c, X) - expected).is_zero()


@pytest.mark.parametrize("field", ["T1", "T2", "Tz", "Rot"])
def test_flat_killing_fields(flat, field):
    assert killing_check(flat.metric, flat.vector(field)).passed


def test_dilation_is_not_killing(flat):
    report = killing_check(flat.metric, flat.vector("Dil"))
    failed = {r.indices for r in report.failures}
    assert ("x1", "x1") in failed


def test_killing_fields_close_under_bracket(flat):
    m = flat.metric
    rot, t1 = flat.vector("Rot"), flat.vector("T1")
    bracket = killing_bracket(rot, t1)
    assert not bracket.is_zero()
    assert killing_check(m, bracket).passed


def test_ppwave_null_translation():
    spec = load("ppwave")
    assert killing_check(spec.metric, spec.vector("T")).passed


def test_gradient_rejects_foreign_function(flat, g0):
    with pytest.raises(ChartMismatchError):
        gradient(flat.metric, g0.function("f"))
