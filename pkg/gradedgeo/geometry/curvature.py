"""
Curvatura de la conexión de Levi-Civita.
Incluye:
- Componentes R_IJK^L y su aplicación a campos arbitrarios
- Identidades de Bianchi y antisimetría del apareamiento
- Tensor de Ricci (traza graduada simetrizada) y escalar de Ricci
- Operador de curvatura por campos y validación cruzada de Ricci
"""
import logging
from fractions import Fraction
from typing import Dict, Optional, Tuple

import numpy as np

from gradedgeo.gradedlinalg import COVARIANT, MIXED, GradedMatrix, graded_trace, metric_trace
from gradedgeo.grading import Degree, scalar_product, sign_of
from gradedgeo.reports import CheckReport
from gradedgeo.symkernel.series import GradedSeries
from gradedgeo.geometry.connection import covariant_derivative, lie_bracket
from gradedgeo.geometry.metric import metric_pairing
from gradedgeo.geometry.types import ChristoffelData, MetricTensor, RiemannData, VectorField, _zero_array

logger = logging.getLogger(__name__)


def riemann(c: ChristoffelData) -> RiemannData:
    """R_IJK^L = d_I G_KJ^L - (-1)^<I,J> d_J G_KI^L
    + (-1)^<I, J+K+M> G_KJ^M G_MI^L - (-1)^<J, K+M> G_KI^M G_MJ^L."""
    chart = c.chart
    dim = chart.dimension
    degs = chart.index_degrees
    gamma = c.gamma
    logger.info("calculando Riemann (%d componentes)", dim ** 4)
    # dgam[a][K, J, L] = d_a Gamma_KJ^L
    dgam = []
    for a in range(dim):
        arr = np.empty((dim, dim, dim), dtype=object)
        for idx in np.ndindex(arr.shape):
            arr[idx] = gamma[idx].derive(a)
        dgam.append(arr)
    r = _zero_array(chart, 4)
    for i in range(dim):
        for j in range(dim):
            sij = sign_of(scalar_product(degs[i], degs[j]))
            for k in range(dim):
                acc: Dict[int, GradedSeries] = {}

                def add(l, value):
                    acc[l] = acc[l] + value if l in acc else value

                for l in range(dim):
                    add(l, dgam[i][k, j, l] - dgam[j][k, i, l].scale(sij))
                for mm in range(dim):
                    g1 = gamma[k, j, mm]
                    if g1.terms:
                        s1 = sign_of(scalar_product(degs[i], degs[j] + degs[k] + degs[mm]))
                        for l in range(dim):
                            g2 = gamma[mm, i, l]
                            if g2.terms:
                                add(l, (g1 * g2).scale(s1))
                    g3 = gamma[k, i, mm]
                    if g3.terms:
                        s2 = sign_of(scalar_product(degs[j], degs[k] + degs[mm]))
                        for l in range(dim):
                            g4 = gamma[mm, j, l]
                            if g4.terms:
                                add(l, -(g3 * g4).scale(s2))
                for l, value in acc.items():
                    r[i, j, k, l] = value
    return RiemannData(chart, r)


def apply_curvature(r: RiemannData, X: VectorField, Y: VectorField, W: VectorField) -> VectorField:
    """R(X,Y)W = (-1)^(<Y+J,I> + <W+K,I+J>) X^I Y^J W^K R_IJK^L d_L."""
    chart = r.chart
    degs = chart.index_degrees
    dim = chart.dimension
    comps = [GradedSeries.zero(chart) for _ in range(dim)]
    for i, xi in X.nonzero():
        for j, yj in Y.nonzero():
            xy = xi * yj
            if not xy.terms:
                continue
            for k, wk in W.nonzero():
                sign = sign_of(scalar_product(Y.degree + degs[j], degs[i])
                               + scalar_product(W.degree + degs[k], degs[i] + degs[j]))
                xyw = None
                for l in range(dim):
                    rl = r.r[i, j, k, l]
                    if not rl.terms:
                        continue
                    if xyw is None:
                        xyw = (xy * wk).scale(sign)
                    comps[l] = comps[l] + xyw * rl
    return VectorField(chart, X.degree + Y.degree + W.degree, comps)


def curvature_operator(c: ChristoffelData, X: VectorField, Y: VectorField, Z: VectorField) -> VectorField:
    """R(X,Y)Z = nabla_X nabla_Y Z - (-1)^<X,Y> nabla_Y nabla_X Z - nabla_[X,Y] Z."""
    sign = sign_of(scalar_product(X.degree, Y.degree))
    first = covariant_derivative(c, X, covariant_derivative(c, Y, Z))
    second = covariant_derivative(c, Y, covariant_derivative(c, X, Z)).scale(sign)
    third = covariant_derivative(c, lie_bracket(X, Y), Z)
    return first - second - third


def _names(chart, *idx) -> Tuple[str, ...]:
    return tuple(chart.coordinates[a] for a in idx)


def riemann_antisymmetry_check(r: RiemannData) -> CheckReport:
    """R_IJK^L + (-1)^<I,J> R_JIK^L = 0."""
    chart = r.chart
    degs = chart.index_degrees
    dim = chart.dimension
    report = CheckReport("riemann-antisymmetry")
    for i in range(dim):
        for j in range(i, dim):
            sign = sign_of(scalar_product(degs[i], degs[j]))
            for k in range(dim):
                for l in range(dim):
                    residue = r.r[i, j, k, l] + r.r[j, i, k, l].scale(sign)
                    report.add("riemann-antisymmetry", _names(chart, i, j, k, l), residue)
    return report


def curvature_operator_check(c: ChristoffelData, r: RiemannData) -> CheckReport:
    """Compara las componentes con el operador construido campo a campo."""
    chart = c.chart
    dim = chart.dimension
    basis = [VectorField.basis(chart, a) for a in range(dim)]
    report = CheckReport("curvature-operator")
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                op = curvature_operator(c, basis[i], basis[j], basis[k])
                for l in range(dim):
                    report.add("curvature-operator", _names(chart, i, j, k, l), op.components[l] - r.r[i, j, k, l])
    return report


def bianchi_first(r: RiemannData) -> CheckReport:
    """(-1)^<I,K> R(I,J)K + (-1)^<J,I> R(J,K)I + (-1)^<K,J> R(K,I)J = 0."""
    chart = r.chart
    degs = chart.index_degrees
    dim = chart.dimension
    report = CheckReport("bianchi-first")
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                s1 = sign_of(scalar_product(degs[i], degs[k]))
                s2 = sign_of(scalar_product(degs[j], degs[i]))
                s3 = sign_of(scalar_product(degs[k], degs[j]))
                for l in range(dim):
                    residue = r.r[i, j, k, l].scale(s1) + r.r[j, k, i, l].scale(s2) + r.r[k, i, j, l].scale(s3)
                    report.add("bianchi-first", _names(chart, i, j, k, l), residue)
    return report


def covariant_derivative_riemann(c: ChristoffelData, r: RiemannData, M: VectorField,
                                 X: VectorField, Y: VectorField, W: VectorField) -> VectorField:
    """(nabla_M R)(X,Y)W por la regla del producto."""
    dm = M.degree
    out = covariant_derivative(c, M, apply_curvature(r, X, Y, W))
    out = out - apply_curvature(r, covariant_derivative(c, M, X), Y, W)
    out = out - apply_curvature(r, X, covariant_derivative(c, M, Y), W).scale(
        sign_of(scalar_product(dm, X.degree)))
    out = out - apply_curvature(r, X, Y, covariant_derivative(c, M, W)).scale(
        sign_of(scalar_product(dm, X.degree + Y.degree)))
    return out


def bianchi_second(c: ChristoffelData, r: RiemannData) -> CheckReport:
    """(-1)^<J,M> (nabla_M R)(I,J) + (-1)^<I,J> (nabla_J R)(M,I) + (-1)^<M,I> (nabla_I R)(J,M) = 0."""
    chart = c.chart
    dim = chart.dimension
    degs = chart.index_degrees
    basis = [VectorField.basis(chart, a) for a in range(dim)]
    cache: Dict[Tuple[int, int, int, int], VectorField] = {}
    logger.info("segunda identidad de Bianchi (%d cuaternas)", dim ** 4)

    def dr(mm, i, j, k):
        key = (mm, i, j, k)
        if key not in cache:
            cache[key] = covariant_derivative_riemann(c, r, basis[mm], basis[i], basis[j], basis[k])
        return cache[key]

    report = CheckReport("bianchi-second")
    for i in range(dim):
        for j in range(dim):
            for mm in range(dim):
                s1 = sign_of(scalar_product(degs[j], degs[mm]))
                s2 = sign_of(scalar_product(degs[i], degs[j]))
                s3 = sign_of(scalar_product(degs[mm], degs[i]))
                for k in range(dim):
                    total = dr(mm, i, j, k).scale(s1) + dr(j, mm, i, k).scale(s2) + dr(i, j, mm, k).scale(s3)
                    for l in range(dim):
                        report.add("bianchi-second", _names(chart, i, j, mm, k, l), total.components[l])
    return report


def pairing_antisymmetry_check(m: MetricTensor, r: RiemannData) -> CheckReport:
    """<R(I,J)K|L> + (-1)^<K,L> <R(I,J)L|K> = 0."""
    chart = m.chart
    dim = chart.dimension
    degs = chart.index_degrees
    basis = [VectorField.basis(chart, a) for a in range(dim)]
    report = CheckReport("pairing-antisymmetry")
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                rk = r.image(i, j, k)
                for l in range(k, dim):
                    rl = r.image(i, j, l)
                    residue = metric_pairing(m, rk, basis[l]) \
                        + metric_pairing(m, rl, basis[k]).scale(sign_of(scalar_product(degs[k], degs[l])))
                    report.add("pairing-antisymmetry", _names(chart, i, j, k, l), residue)
    return report


def _diagonal_trace(chart, d: Degree, diagonal) -> GradedSeries:
    """Traza graduada del endomorfismo de grado d con la diagonal dada."""
    op = GradedMatrix.zeros(chart, d, MIXED)
    for k, e in enumerate(diagonal):
        op.entries[k, k] = e
    return graded_trace(op)


def _partial_trace(r: RiemannData, i: int, j: int) -> GradedSeries:
    """Traza graduada de Z -> R(Z, d_I) d_J."""
    degs = r.chart.index_degrees
    return _diagonal_trace(r.chart, degs[i] + degs[j], (r.r[k, i, j, k] for k in range(r.chart.dimension)))


def ricci_unsymmetrized(r: RiemannData) -> GradedMatrix:
    chart = r.chart
    out = GradedMatrix.zeros(chart, Degree.zero(chart.n), COVARIANT)
    for i in range(chart.dimension):
        for j in range(chart.dimension):
            out.entries[i, j] = _partial_trace(r, i, j)
    return out


def ricci(c: ChristoffelData, r: RiemannData) -> GradedMatrix:
    """R_IJ = 1/2 (tr R(., d_I) d_J + (-1)^<I,J> tr R(., d_J) d_I)."""
    chart = r.chart
    degs = chart.index_degrees
    raw = ricci_unsymmetrized(r)
    out = GradedMatrix.zeros(chart, Degree.zero(chart.n), COVARIANT)
    half = Fraction(1, 2)
    for i in range(chart.dimension):
        for j in range(chart.dimension):
            sign = sign_of(scalar_product(degs[i], degs[j]))
            out.entries[i, j] = (raw.entries[i, j] + raw.entries[j, i].scale(sign)).scale(half)
    return out


def ricci_symmetry_check(ric: GradedMatrix) -> CheckReport:
    chart = ric.chart
    degs = chart.index_degrees
    report = CheckReport("ricci-symmetry")
    for i in range(chart.dimension):
        for j in range(i, chart.dimension):
            residue = ric.entries[i, j] - ric.entries[j, i].scale(sign_of(scalar_product(degs[i], degs[j])))
            report.add("ricci-symmetry", _names(chart, i, j), residue)
    return report


def ricci_scalar(m: MetricTensor, ric: GradedMatrix) -> GradedSeries:
    """S = tr_g(Ric)."""
    return metric_trace(ric, m.inverse)


def ricci_cross_check(c: ChristoffelData, r: RiemannData, ric: Optional[GradedMatrix] = None) -> CheckReport:
    """Ricci por componentes frente a la traza del operador construido campo a campo."""
    chart = c.chart
    dim = chart.dimension
    degs = chart.index_degrees
    ric = ric if ric is not None else ricci(c, r)
    basis = [VectorField.basis(chart, a) for a in range(dim)]
    raw = np.empty((dim, dim), dtype=object)
    for i in range(dim):
        for j in range(dim):
            diagonal = (curvature_operator(c, basis[k], basis[i], basis[j]).components[k] for k in range(dim))
            raw[i, j] = _diagonal_trace(chart, degs[i] + degs[j], diagonal)
    report = CheckReport("ricci-cross")
    half = Fraction(1, 2)
    for i in range(dim):
        for j in range(dim):
            sign = sign_of(scalar_product(degs[i], degs[j]))
            other = (raw[i, j] + raw[j, i].scale(sign)).scale(half)
            report.add("ricci-cross", _names(chart, i, j), ric.entries[i, j] - other)
    return report


def curvature_trace(r: RiemannData, i: int, j: int) -> GradedSeries:
    """tr(Z -> R(d_I, d_J) Z) = sum_K (-1)^<K, K+I+J> R_IJK^K."""
    degs = r.chart.index_degrees
    return _diagonal_trace(r.chart, degs[i] + degs[j], (r.r[i, j, k, k] for k in range(r.chart.dimension)))


def curvature_trace_check(r: RiemannData) -> CheckReport:
    """Se anula para métricas pares; para impares el resultado es solo informativo."""
    chart = r.chart
    report = CheckReport("curvature-trace")
    for i in range(chart.dimension):
        for j in range(i, chart.dimension):
            report.add("curvature-trace", _names(chart, i, j), curvature_trace(r, i, j))
    return report
