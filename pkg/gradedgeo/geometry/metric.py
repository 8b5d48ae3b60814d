"""
Operaciones sobre la métrica: validación, métrica reducida, apareamiento
<X|Y>_g y subida/bajada de índices.
"""
import logging

from gradedgeo.errors import ChartMismatchError, DegreeError
from gradedgeo.gradedlinalg import COVARIANT, GradedMatrix, body_determinant
from gradedgeo.grading import Degree, canonical_degree_order, degree_slot, scalar_product, sign_of
from gradedgeo.reports import CheckReport
from gradedgeo.symkernel.chart import Chart
from gradedgeo.symkernel.expr import ZeroStatus
from gradedgeo.symkernel.series import GradedSeries
from gradedgeo.geometry.types import MetricTensor, OneForm, VectorField

logger = logging.getLogger(__name__)


def validate_metric(m: MetricTensor) -> CheckReport:
    """Homogeneidad, simetría graduada, cuerpo invertible y restricciones de dimensión."""
    chart = m.chart
    names = chart.coordinates
    degs = chart.index_degrees
    report = CheckReport("validate")
    g = m.components

    bad = set(g.degree_violations())
    for i in range(chart.dimension):
        for j in range(chart.dimension):
            if g.entries[i, j].terms or (i, j) in bad:
                report.add_flag("homogeneity", (names[i], names[j]), (i, j) not in bad,
                                "" if (i, j) not in bad else f"se esperaba grado {g.expected_degree(i, j)}")

    for i in range(chart.dimension):
        for j in range(i, chart.dimension):
            residue = g.entries[i, j] - g.entries[j, i].scale(sign_of(scalar_product(degs[i], degs[j])))
            report.add("symmetry", (names[i], names[j]), residue)

    det = body_determinant(g)
    status = det.zero_status()
    report.add_flag("non-degeneracy", (), status is ZeroStatus.NONZERO, f"det = {det.text()}")

    counts = chart.q_counts()
    order = canonical_degree_order(chart.n)
    for slot, gamma in enumerate(order):
        partner = degree_slot(gamma + m.degree)
        if partner < slot:
            continue
        label = (str(gamma), str(order[partner]))
        report.add_flag("pairing-dimension", label, counts[slot] == counts[partner],
                        f"{counts[slot]} y {counts[partner]}")
        if partner == slot and scalar_product(gamma, gamma) == 1:
            report.add_flag("even-dimension", label, counts[slot] % 2 == 0, f"q = {counts[slot]}")
    logger.info("validación de la métrica: %s", "ok" if report.passed else "falla")
    return report


def reduced_metric(m: MetricTensor) -> MetricTensor:
    """|g|_ab = epsilon(g_ab) sobre las coordenadas base."""
    if not m.degree.is_zero:
        raise DegreeError("la métrica reducida solo existe para métricas de grado cero")
    chart = m.chart
    classical = Chart(0, chart.base, (), chart.params, chart.trunc_order, chart.name)
    comps = GradedMatrix.zeros(classical, Degree.zero(0), COVARIANT)
    for a in range(chart.p):
        for b in range(chart.p):
            comps.entries[a, b] = GradedSeries.from_expr(classical, m.components.entries[a, b].body())
    return MetricTensor(classical, Degree.zero(0), comps)


def _check(m: MetricTensor, *fields: VectorField) -> None:
    for f in fields:
        if f.chart != m.chart:
            raise ChartMismatchError("el campo no pertenece a la carta de la métrica")


def metric_pairing(m: MetricTensor, X: VectorField, Y: VectorField) -> GradedSeries:
    """<X|Y>_g = (-1)^<Y,I> X^I Y^J g_JI."""
    _check(m, X, Y)
    degs = m.chart.index_degrees
    g = m.components.entries
    total = GradedSeries.zero(m.chart)
    for i, xi in X.nonzero():
        sign = sign_of(scalar_product(Y.degree, degs[i]))
        for j, yj in Y.nonzero():
            gji = g[j, i]
            if gji.terms:
                total = total + (xi * yj * gji).scale(sign)
    return total


def lower_index(m: MetricTensor, X: VectorField) -> OneForm:
    """w_I = (-1)^<X,I> X^J g_JI."""
    _check(m, X)
    chart = m.chart
    degs = chart.index_degrees
    g = m.components.entries
    comps = []
    for i in range(chart.dimension):
        total = GradedSeries.zero(chart)
        for j, xj in X.nonzero():
            if g[j, i].terms:
                total = total + xj * g[j, i]
        comps.append(total.scale(sign_of(scalar_product(X.degree, degs[i]))))
    return OneForm(chart, X.degree + m.degree, comps)


def raise_index(m: MetricTensor, w: OneForm) -> VectorField:
    """X^K = (-1)^<X,I> w_I g^IK, inversa de lower_index."""
    chart = m.chart
    if w.chart != chart:
        raise ChartMismatchError("la 1-forma no pertenece a la carta de la métrica")
    degs = chart.index_degrees
    ginv = m.inverse.entries
    degree = w.degree + m.degree
    comps = [GradedSeries.zero(chart) for _ in range(chart.dimension)]
    for i, wi in enumerate(w.components):
        if not wi.terms:
            continue
        sign = sign_of(scalar_product(degree, degs[i]))
        for k in range(chart.dimension):
            if ginv[i, k].terms:
                comps[k] = comps[k] + (wi * ginv[i, k]).scale(sign)
    return VectorField(chart, degree, comps)
