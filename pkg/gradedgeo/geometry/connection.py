"""
Conexión de Levi-Civita.
Incluye:
- Símbolos de Christoffel a partir de la métrica
- Derivada covariante y corchete de Lie de campos vectoriales
- Torsión, compatibilidad métrica, fórmula de Koszul y prueba de unicidad
"""
import logging
from fractions import Fraction

import numpy as np

from gradedgeo.errors import ChartMismatchError
from gradedgeo.grading import scalar_product, sign_of
from gradedgeo.reports import CheckReport
from gradedgeo.symkernel.series import GradedSeries
from gradedgeo.geometry.metric import metric_pairing
from gradedgeo.geometry.types import ChristoffelData, MetricTensor, VectorField, _zero_array

logger = logging.getLogger(__name__)


def christoffel(m: MetricTensor) -> ChristoffelData:
    """Gamma_JI^L = 1/2 (d_I g_JK + (-1)^<I,J> d_J g_IK - (-1)^<K,I+J> d_K g_IJ) g^KL."""
    chart = m.chart
    dim = chart.dimension
    degs = chart.index_degrees
    g = m.components.entries
    ginv = m.inverse.entries
    logger.info("calculando Christoffel (%d índices)", dim)
    # dg[a][I, J] = d_a g_IJ
    dg = [[[g[i, j].derive(a) for j in range(dim)] for i in range(dim)] for a in range(dim)]
    gamma = _zero_array(chart, 3)
    for j in range(dim):
        for i in range(dim):
            sij = sign_of(scalar_product(degs[i], degs[j]))
            lowered = []
            for k in range(dim):
                term = dg[i][j][k] + dg[j][i][k].scale(sij) \
                    - dg[k][i][j].scale(sign_of(scalar_product(degs[k], degs[i] + degs[j])))
                lowered.append(term)
            for l in range(dim):
                total = GradedSeries.zero(chart)
                for k in range(dim):
                    if lowered[k].terms and ginv[k, l].terms:
                        total = total + lowered[k] * ginv[k, l]
                gamma[j, i, l] = total.scale(Fraction(1, 2))
    return ChristoffelData(chart, gamma)


def _check(c: ChristoffelData, *fields: VectorField) -> None:
    for f in fields:
        if f.chart != c.chart:
            raise ChartMismatchError("el campo no pertenece a la carta de la conexión")


def covariant_derivative(c: ChristoffelData, X: VectorField, Y: VectorField) -> VectorField:
    """nabla_X Y = X^I d_I(Y^J) d_J + (-1)^<I, Y+J> X^I Y^J Gamma_JI^K d_K."""
    _check(c, X, Y)
    chart = c.chart
    degs = chart.index_degrees
    comps = [GradedSeries.zero(chart) for _ in range(chart.dimension)]
    for i, xi in X.nonzero():
        for j, yj in Y.nonzero():
            comps[j] = comps[j] + xi * yj.derive(i)
            sign = sign_of(scalar_product(degs[i], Y.degree + degs[j]))
            xy = None
            for k in range(chart.dimension):
                gam = c.gamma[j, i, k]
                if not gam.terms:
                    continue
                if xy is None:
                    xy = (xi * yj).scale(sign)
                comps[k] = comps[k] + xy * gam
    return VectorField(chart, X.degree + Y.degree, comps)


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """[X,Y]^K = X(Y^K) - (-1)^<X,Y> Y(X^K)."""
    if X.chart != Y.chart:
        raise ChartMismatchError("los campos pertenecen a cartas distintas")
    sign = sign_of(scalar_product(X.degree, Y.degree))
    comps = [X.apply(yk) - Y.apply(xk).scale(sign) for xk, yk in zip(X.components, Y.components)]
    return VectorField(X.chart, X.degree + Y.degree, comps)


def torsion(c: ChristoffelData) -> np.ndarray:
    """T_IJ^K = Gamma_JI^K - (-1)^<I,J> Gamma_IJ^K, guardado como t[I, J, K]."""
    chart = c.chart
    degs = chart.index_degrees
    dim = chart.dimension
    t = _zero_array(chart, 3)
    for i in range(dim):
        for j in range(dim):
            sign = sign_of(scalar_product(degs[i], degs[j]))
            for k in range(dim):
                t[i, j, k] = c.gamma[j, i, k] - c.gamma[i, j, k].scale(sign)
    return t


def torsion_check(c: ChristoffelData) -> CheckReport:
    names = c.chart.coordinates
    t = torsion(c)
    report = CheckReport("torsion")
    dim = c.chart.dimension
    for i in range(dim):
        for j in range(i, dim):
            for k in range(dim):
                report.add("torsion", (names[i], names[j], names[k]), t[i, j, k])
    return report


def check_metric_compatibility(m: MetricTensor, c: ChristoffelData) -> CheckReport:
    """d_I<d_J|d_K> - <nabla_I d_J|d_K> - (-1)^<I,J> <d_J|nabla_I d_K> en cada terna."""
    chart = m.chart
    if c.chart != chart:
        raise ChartMismatchError("la conexión no pertenece a la carta de la métrica")
    names = chart.coordinates
    degs = chart.index_degrees
    dim = chart.dimension
    basis = [VectorField.basis(chart, a) for a in range(dim)]
    g = m.components.entries
    report = CheckReport("compatibility")
    for i in range(dim):
        for j in range(dim):
            nij = c.column(j, i)
            for k in range(dim):
                nik = c.column(k, i)
                residue = g[j, k].derive(i) - metric_pairing(m, nij, basis[k]) \
                    - metric_pairing(m, basis[j], nik).scale(sign_of(scalar_product(degs[i], degs[j])))
                report.add("compatibility", (names[i], names[j], names[k]), residue)
    return report


def koszul_check(m: MetricTensor, c: ChristoffelData, fields=None) -> CheckReport:
    """Los dos lados de la fórmula de Koszul; por defecto sobre la base coordenada."""
    chart = m.chart
    if fields is None:
        fields = [VectorField.basis(chart, a) for a in range(chart.dimension)]
        labels = list(chart.coordinates)
    else:
        labels = [str(a) for a in range(len(fields))]
    report = CheckReport("koszul")

    def pair(a, b):
        return metric_pairing(m, a, b)

    for x_idx, X in enumerate(fields):
        for y_idx, Y in enumerate(fields):
            for z_idx, Z in enumerate(fields):
                dx, dy, dz = X.degree, Y.degree, Z.degree
                lhs = pair(covariant_derivative(c, X, Y), Z).scale(2)
                rhs = X.apply(pair(Y, Z)) + pair(lie_bracket(X, Y), Z) \
                    + (Y.apply(pair(Z, X)) - pair(lie_bracket(Y, Z), X)).scale(
                        sign_of(scalar_product(dx, dy + dz))) \
                    - (Z.apply(pair(X, Y)) - pair(lie_bracket(Z, X), Y)).scale(
                        sign_of(scalar_product(dz, dx + dy)))
                report.add("koszul", (labels[x_idx], labels[y_idx], labels[z_idx]), lhs - rhs)
    return report


def connection_uniqueness_probe(m: MetricTensor, candidate: ChristoffelData,
                                reference: ChristoffelData = None) -> CheckReport:
    """Si el candidato es simétrico y compatible, debe coincidir con Levi-Civita."""
    report = CheckReport("uniqueness")
    symmetric = torsion_check(candidate).passed
    compatible = check_metric_compatibility(m, candidate).passed
    if not (symmetric and compatible):
        report.notes.append("el candidato no es simétrico y compatible: la prueba es vacua")
        report.add_flag("candidate-excluded", (), True,
                        f"simétrico={symmetric}, compatible={compatible}")
        return report
    reference = reference or christoffel(m)
    names = m.chart.coordinates
    for j, i, k in np.ndindex(candidate.gamma.shape):
        report.add("uniqueness", (names[j], names[i], names[k]), candidate.gamma[j, i, k] - reference.gamma[j, i, k])
    return report
