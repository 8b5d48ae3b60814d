"""
Construcción de nuevas variedades riemannianas a partir de otras:
producto cartesiano y producto deformado (warped).
"""
import logging
from dataclasses import dataclass
from typing import Dict, Tuple

import sympy

from gradedgeo import config
from gradedgeo.errors import ConstructionError, DimensionError, NotInvertibleError
from gradedgeo.gradedlinalg import COVARIANT, GradedMatrix
from gradedgeo.grading import Degree
from gradedgeo.symkernel.chart import Chart
from gradedgeo.symkernel.expr import Expr, ZeroStatus, sample_points
from gradedgeo.symkernel.series import GradedSeries
from gradedgeo.geometry.types import MetricTensor

logger = logging.getLogger(__name__)


@dataclass
class ProductChart:
    """Carta producto y su mapa de procedencia: índice fusionado -> (factor, índice de origen)."""
    chart: Chart
    first: Chart
    second: Chart
    provenance: Dict[int, Tuple[int, int]]


def product_chart(c1: Chart, c2: Chart) -> ProductChart:
    if c1.n != c2.n:
        raise DimensionError(f"los factores tienen n distinto: {c1.n} y {c2.n}")
    clash = set(c1.coordinates) & set(c2.coordinates)
    clash |= set(c1.coordinates) & set(c2.params)
    clash |= set(c1.params) & set(c2.coordinates)
    if clash:
        raise ConstructionError(f"nombres repetidos entre factores: {sorted(clash)}")
    params = c1.params + tuple(p for p in c2.params if p not in c1.params)
    formal = [(g.name, g.degree) for g in c1.generators] + [(g.name, g.degree) for g in c2.generators]
    name = f"{c1.name}x{c2.name}" if c1.name and c2.name else ""
    merged = Chart(c1.n, c1.base + c2.base, formal, params, min(c1.trunc_order, c2.trunc_order), name)
    provenance = {}
    for factor, source in ((1, c1), (2, c2)):
        for idx, coord in enumerate(source.coordinates):
            provenance[merged.index_of(coord)] = (factor, idx)
    return ProductChart(merged, c1, c2, provenance)


def transport(series: GradedSeries, target: Chart) -> GradedSeries:
    """Pull-back pi* de una serie de un factor a la carta producto."""
    source = series.chart
    total = GradedSeries.zero(target)
    gens = [GradedSeries.coordinate(target, g.name) for g in source.generators]
    for mono, coeff in series.terms.items():
        expr = coeff if coeff.space is target.space else Expr.from_sympy(target.space, coeff.as_sympy())
        term = GradedSeries.from_expr(target, expr)
        for k, e in enumerate(mono):
            for _ in range(e):
                term = term * gens[k]
        total = total + term
    if series.prec is not None:
        total = GradedSeries(target, total.terms, series.prec if total.prec is None else min(total.prec, series.prec))
    return total


def _place(out: GradedMatrix, m: MetricTensor, pc: ProductChart, factor: int, weight=None) -> None:
    source = m.chart
    for i in range(source.dimension):
        for j in range(source.dimension):
            entry = m.components.entries[i, j]
            if not entry.terms:
                continue
            value = transport(entry, pc.chart)
            if weight is not None:
                value = weight * value
            out[source.coordinates[i], source.coordinates[j]] = value


def _check_factors(m1: MetricTensor, m2: MetricTensor) -> None:
    if m1.chart.n != m2.chart.n:
        raise ConstructionError(f"los factores tienen n distinto: {m1.chart.n} y {m2.chart.n}")
    if m1.degree != m2.degree:
        raise ConstructionError(f"las métricas tienen grados distintos: {m1.degree} y {m2.degree}")


def cartesian_product(m1: MetricTensor, m2: MetricTensor) -> MetricTensor:
    """g = pi1* g1 + pi2* g2 (bloques diagonales)."""
    _check_factors(m1, m2)
    pc = product_chart(m1.chart, m2.chart)
    out = GradedMatrix.zeros(pc.chart, m1.degree, COVARIANT)
    _place(out, m1, pc, 1)
    _place(out, m2, pc, 2)
    logger.info("producto cartesiano de dimensión %s", pc.chart.dimension_label())
    return MetricTensor(pc.chart, m1.degree, out)


def _body_positive(body: Expr, chart: Chart) -> bool:
    if body.zero_status() is not ZeroStatus.NONZERO:
        return False
    space = body.space
    assumed = {
        s: sympy.Symbol(n, real=True, nonzero=True) if n in chart.params else sympy.Symbol(n, real=True)
        for n, s in zip(space.names, space.symbols)
    }
    value = sympy.sympify(body.as_sympy()).xreplace(assumed)
    decided = value.is_positive
    if decided is not None:
        return bool(decided)
    if value.is_nonnegative:
        # >= 0 sin ser > 0: puede anularse en algún punto
        logger.warning("el cuerpo de mu puede anularse: %s", body.text())
        return False
    logger.warning("positividad del cuerpo de mu decidida por muestreo: %s", body.text())
    try:
        return all(float(body.evaluate({n: subs[s] for n, s in zip(space.names, space.symbols)})) > 0
                   for subs in sample_points(space, config.get_settings(), body._pole_free))
    except Exception as exc:  # polos o desbordamiento
        logger.warning("no se pudo muestrear mu: %s", exc)
        return False


def warped_product(m1: MetricTensor, m2: MetricTensor, mu: GradedSeries) -> MetricTensor:
    """g = pi1* g1 + (pi1* mu) pi2* g2."""
    _check_factors(m1, m2)
    if mu.chart != m1.chart:
        raise ConstructionError("mu debe estar definida sobre la carta del primer factor")
    if not mu.is_homogeneous_of(Degree.zero(m1.chart.n)):
        raise ConstructionError("mu debe tener grado cero")
    try:
        mu.invert()
    except NotInvertibleError as exc:
        raise ConstructionError(f"mu no es invertible: {exc}") from exc
    if not _body_positive(mu.body(), m1.chart):
        raise ConstructionError(f"el cuerpo de mu no es estrictamente positivo: {mu.body().text()}")
    pc = product_chart(m1.chart, m2.chart)
    out = GradedMatrix.zeros(pc.chart, m1.degree, COVARIANT)
    _place(out, m1, pc, 1)
    _place(out, m2, pc, 2, weight=transport(mu, pc.chart))
    logger.info("producto deformado de dimensión %s", pc.chart.dimension_label())
    return MetricTensor(pc.chart, m1.degree, out)
