from fractions import Fraction

import pytest
import sympy

from gradedgeo import config
from gradedgeo.errors import EvaluationError, NotInvertibleError
from gradedgeo.symkernel.expr import Expr, ZeroStatus, coefficient_space, sample_points

SPACE = coefficient_space(("x", "y", "k"))


def sym(name):
    return Expr.symbol(SPACE, name)


def test_rational_arithmetic_is_canonical():
    x, y = sym("x"), sym("y")
    a = (x + y) * (x - y)
    b = x ** 2 - y ** 2
    assert (a - b).is_exact_zero
    assert (a - b).zero_status() is ZeroStatus.SYMBOLIC


def test_division_and_inverse():
    x = sym("x")
    f = (x ** 2 + 1) / (x - 1)
    assert (f * (x - 1) - (x ** 2 + 1)).is_exact_zero
    with pytest.raises(NotInvertibleError):
        Expr.const(SPACE, 0).inverse()


def test_exponentials_combine_keys():
    x = sym("x")
    assert (x.exp() * (-x).exp() - 1).is_exact_zero
    assert ((x + 1).exp() - x.exp() * Expr.const(SPACE, 1).exp()).is_exact_zero


def test_quotient_of_exponential_polynomials_cancels():
    x = sym("x")
    a = 1 / (1 + x.exp())
    b = (-x).exp() / ((-x).exp() + 1)
    assert (a - b).zero_status() is ZeroStatus.SYMBOLIC


def test_derivative_of_exponential():
    x, k = sym("x"), sym("k")
    f = (x ** 2 / k ** 2).exp()
    expected = (2 * x / k ** 2) * f
    assert (f.diff("x") - expected).is_exact_zero


def test_numeric_fallback_detects_hidden_zero():
    x = sympy.Symbol("x")
    one = SPACE.field.one
    hidden = Expr(SPACE, {sympy.exp(x) ** 2: one, sympy.exp(2 * x): -one})
    assert not hidden.is_canonical
    assert hidden.zero_status() is ZeroStatus.NUMERIC
    assert hidden.is_zero()


def test_numeric_fallback_detects_nonzero():
    x = sympy.Symbol("x")
    one = SPACE.field.one
    different = Expr(SPACE, {sympy.exp(x) ** 2: one, sympy.exp(3 * x): -one})
    assert different.zero_status() is ZeroStatus.NONZERO


def test_evaluate_exact_and_pole():
    x, y = sym("x"), sym("y")
    f = (x + y) / (x - y)
    assert f.evaluate({"x": 3, "y": 1, "k": 0}) == 2
    assert f.evaluate({"x": Fraction(1, 2), "y": 0, "k": 0}) == 1
    with pytest.raises(EvaluationError):
        f.evaluate({"x": 1, "y": 1, "k": 0})


def test_from_sympy_roundtrip():
    x = sympy.Symbol("x")
    e = Expr.from_sympy(SPACE, (x ** 2 + 1) / (x + 2) + sympy.exp(x))
    assert (e - Expr.from_sympy(SPACE, e.as_sympy())).is_zero()


def test_text_of_polynomial():
    x = sym("x")
    assert (x ** 2 + 1).text() == "x^2 + 1"
    assert Expr.const(SPACE, Fraction(-3, 2)).text() == "-3/2"


def test_sample_points_are_reproducible():
    settings = config.ZeroTestSettings(tolerance=1e-9, samples=4, seed=7)
    first = list(sample_points(SPACE, settings))
    second = list(sample_points(SPACE, settings))
    assert first == second
    assert len(first) == 4


def test_zero_status_combine():
    assert ZeroStatus.combine([]) is ZeroStatus.SYMBOLIC
    assert ZeroStatus.combine([ZeroStatus.SYMBOLIC, ZeroStatus.NUMERIC]) is ZeroStatus.NUMERIC
    assert ZeroStatus.combine([ZeroStatus.NUMERIC, ZeroStatus.NONZERO]) is ZeroStatus.NONZERO
    assert ZeroStatus.combine([ZeroStatus.NUMERIC, ZeroStatus.INDETERMINATE, ZeroStatus.SYMBOLIC]) is ZeroStatus.INDETERMINATE
    assert ZeroStatus.combine([ZeroStatus.INDETERMINATE, ZeroStatus.NONZERO]) is ZeroStatus.NONZERO
