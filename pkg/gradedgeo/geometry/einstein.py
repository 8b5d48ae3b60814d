"""
Condición de Einstein, constancia del escalar de Ricci y contabilidad de grados.
"""
import logging
from typing import Optional

from gradedgeo.errors import DegreeError
from gradedgeo.gradedlinalg import GradedMatrix
from gradedgeo.reports import CheckReport
from gradedgeo.symkernel.expr import ZeroStatus
from gradedgeo.symkernel.series import GradedSeries
from gradedgeo.geometry.types import ChristoffelData, MetricTensor, RiemannData

logger = logging.getLogger(__name__)


def _is_nonzero_constant(kappa: GradedSeries) -> bool:
    chart = kappa.chart
    if kappa.zero_status() is not ZeroStatus.NONZERO:
        return False
    return all(kappa.derive(a).is_zero() for a in range(chart.dimension))


def einstein_check(m: MetricTensor, ric: GradedMatrix, kappa: GradedSeries) -> CheckReport:
    """Residuo Ric - kappa g; exige deg kappa = deg g."""
    dk = kappa.degree()
    if dk is not None and dk != m.degree:
        raise DegreeError(f"deg kappa = {dk} pero deg g = {m.degree}")
    if not m.degree.is_zero and _is_nonzero_constant(kappa):
        raise DegreeError("kappa no puede ser una constante no nula si deg g no es cero")
    chart = m.chart
    names = chart.coordinates
    g = m.components.entries
    report = CheckReport("einstein")
    for i in range(chart.dimension):
        for j in range(chart.dimension):
            report.add("einstein", (names[i], names[j]), ric.entries[i, j] - kappa * g[i, j])
    return report


def scalar_constancy_check(m: MetricTensor, scalar: GradedSeries) -> CheckReport:
    """Si deg g != 0 y S no es nulo, alguna derivada formal de S es no nula."""
    chart = m.chart
    report = CheckReport("scalar-constancy")
    if m.degree.is_zero:
        report.notes.append("métrica de grado cero: la comprobación no aplica")
        return report
    if scalar.is_zero():
        report.add_flag("scalar-constancy", (), True, "S = 0")
        return report
    moving = [chart.coordinates[a] for a in range(chart.p, chart.dimension) if not scalar.derive(a).is_zero()]
    report.add_flag("scalar-constancy", tuple(moving), bool(moving),
                    "derivadas formales no nulas" if moving else "S es constante no nula")
    return report


def degree_report(m: MetricTensor, c: Optional[ChristoffelData] = None, r: Optional[RiemannData] = None,
                  ric: Optional[GradedMatrix] = None) -> CheckReport:
    """Cada componente es homogénea del grado que dicta su tipo."""
    chart = m.chart
    names = chart.coordinates
    degs = chart.index_degrees
    report = CheckReport("degrees")

    def flag(label, idx, series, expected):
        ok = series.is_homogeneous_of(expected)
        if series.terms or not ok:
            report.add_flag(label, tuple(names[a] for a in idx), ok, "" if ok else f"se esperaba {expected}")

    for i in range(chart.dimension):
        for j in range(chart.dimension):
            flag("metric-degree", (i, j), m.components.entries[i, j], degs[i] + degs[j] + m.degree)
            flag("inverse-degree", (i, j), m.inverse.entries[i, j], degs[i] + degs[j] + m.degree)
            if ric is not None:
                flag("ricci-degree", (i, j), ric.entries[i, j], degs[i] + degs[j])
            if c is not None:
                for k in range(chart.dimension):
                    flag("christoffel-degree", (j, i, k), c.gamma[j, i, k], degs[i] + degs[j] + degs[k])
    if r is not None:
        for (i, j, k, l), s in r.nonzero_items():
            flag("riemann-degree", (i, j, k, l), s, degs[i] + degs[j] + degs[k] + degs[l])
    return report
