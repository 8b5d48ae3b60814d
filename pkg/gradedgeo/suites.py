"""
Suite completa de verificación de una métrica (comando ``report``).
"""
import logging
from itertools import combinations_with_replacement
from typing import List

from gradedgeo.gradedlinalg import inverse_symmetry_check
from gradedgeo.reports import CheckReport
from gradedgeo.symkernel.series import GradedSeries
from gradedgeo.geometry import (
    bianchi_first,
    bianchi_second,
    check_metric_compatibility,
    christoffel,
    contracted_christoffel_check,
    degree_report,
    koszul_check,
    leibniz_anomaly_check,
    odd_laplacian_check,
    pairing_antisymmetry_check,
    ricci,
    ricci_scalar,
    ricci_symmetry_check,
    riemann,
    riemann_antisymmetry_check,
    torsion_check,
    validate_metric,
)
from gradedgeo.geometry.types import MetricTensor

logger = logging.getLogger(__name__)


def coordinate_pairs(m: MetricTensor):
    chart = m.chart
    coords = [GradedSeries.coordinate(chart, c) for c in chart.coordinates]
    return list(combinations_with_replacement(coords, 2))


def odd_scalar_check(m: MetricTensor, scalar: GradedSeries) -> CheckReport:
    """Para métricas impares el escalar de Ricci se anula."""
    report = CheckReport("odd-scalar")
    report.add("odd-scalar", (), scalar)
    return report


def full_report(m: MetricTensor, second_bianchi: bool = True) -> List[CheckReport]:
    """Ejecuta todas las comprobaciones aplicables; la validación va primero."""
    logger.info("suite completa sobre %s", m.chart.dimension_label())
    reports = [validate_metric(m)]
    if not reports[0].passed:
        logger.warning("la métrica no es válida; se omiten el resto de comprobaciones")
        return reports
    c = christoffel(m)
    r = riemann(c)
    ric = ricci(c, r)
    reports.append(degree_report(m, c, r, ric))
    reports.append(inverse_symmetry_check(m.components, m.inverse))
    reports.append(torsion_check(c))
    reports.append(check_metric_compatibility(m, c))
    reports.append(koszul_check(m, c))
    reports.append(riemann_antisymmetry_check(r))
    reports.append(bianchi_first(r))
    if second_bianchi:
        reports.append(bianchi_second(c, r))
    reports.append(pairing_antisymmetry_check(m, r))
    reports.append(ricci_symmetry_check(ric))
    reports.append(contracted_christoffel_check(m, c))
    if m.is_odd:
        reports.append(odd_scalar_check(m, ricci_scalar(m, ric)))
        reports.append(odd_laplacian_check(m, c))
    else:
        reports.append(leibniz_anomaly_check(m, c, coordinate_pairs(m)))
    logger.info("suite completa: %d reportes", len(reports))
    return reports
