"""Núcleo simbólico: expresiones escalares, cartas y series graduadas truncadas."""
from gradedgeo.symkernel.expr import CoefficientSpace, Expr, ZeroStatus, coefficient_space
from gradedgeo.symkernel.chart import Chart, Generator, Monomial
from gradedgeo.symkernel.series import (
    GradedSeries,
    evaluate,
    is_zero,
    series_derive,
    series_exp,
    series_invert,
    series_mul,
    sum_series,
)
from gradedgeo.symkernel.parser import ExpressionParser, parse_expression

__all__ = [
    "CoefficientSpace", "Expr", "ZeroStatus", "coefficient_space",
    "Chart", "Generator", "Monomial",
    "GradedSeries", "evaluate", "is_zero", "series_derive", "series_exp", "series_invert",
    "series_mul", "sum_series",
    "ExpressionParser", "parse_expression",
]
