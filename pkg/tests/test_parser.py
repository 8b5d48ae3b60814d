from fractions import Fraction

import pytest

from gradedgeo.errors import SpecSyntaxError
from gradedgeo.grading import Degree
from gradedgeo.symkernel import Chart, GradedSeries, parse_expression


@pytest.fixture
def chart():
    return Chart(2, ["x", "y"], [("z", Degree.from_bits([1, 1])), ("xi", Degree.from_bits([0, 1]))], ["k"], 4)


def coord(chart, name):
    return GradedSeries.coordinate(chart, name)


def test_precedence_and_unary_minus(chart):
    f = parse_expression(chart, "-x^2 + 3*y*z - (x - y)/2")
    x, y, z = coord(chart, "x"), coord(chart, "y"), coord(chart, "z")
    expected = -(x * x) + (y * z).scale(3) - (x - y).scale(Fraction(1, 2))
    assert (f - expected).is_zero()


def test_decimal_literals_are_exact(chart):
    f = parse_expression(chart, "0.25*x")
    assert (f - coord(chart, "x") / 4).is_zero()


def test_negative_exponents(chart):
    a = parse_expression(chart, "x^(-2)")
    b = parse_expression(chart, "x^-2")
    c = parse_expression(chart, "1/x^2")
    assert (a - c).is_zero()
    assert (b - c).is_zero()


def test_exp_of_formal_argument(chart):
    f = parse_expression(chart, "exp(z^2/k^2)")
    assert chart.unit in f.terms
    assert (0, 0) in f.terms and (2, 0) in f.terms and (4, 0) in f.terms


def test_named_functions(chart):
    f = parse_expression(chart, "x*y")
    g = parse_expression(chart, "f + 1", {"f": f})
    assert (g - f - 1).is_zero()


@pytest.mark.parametrize("text, column", [
    ("x + $", 5),
    ("2 x", 3),
    ("x +", 4),
    ("w + 1", 1),
    ("x^y", 3),
])
def test_diagnostics_have_columns(chart, text, column):
    with pytest.raises(SpecSyntaxError) as info:
        parse_expression(chart, text, line=3)
    assert info.value.line == 3
    assert info.value.column == column


def test_empty_expression(chart):
    with pytest.raises(SpecSyntaxError):
        parse_expression(chart, "   ")
