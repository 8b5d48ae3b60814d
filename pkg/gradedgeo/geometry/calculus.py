"""
Cálculo sobre la variedad riemanniana graduada.
Incluye:
- Gradiente, divergencia covariante y laplaciano de conexión
- Derivada de Lie de la métrica y campos de Killing
- Identidades de producto, anomalía de Leibniz y Christoffel contraído
"""
import logging
from typing import Iterable, Optional, Sequence, Tuple

from gradedgeo.errors import ChartMismatchError
from gradedgeo.gradedlinalg import COVARIANT, GradedMatrix
from gradedgeo.grading import scalar_product, sign_of
from gradedgeo.reports import CheckReport
from gradedgeo.symkernel.series import GradedSeries
from gradedgeo.geometry.connection import lie_bracket
from gradedgeo.geometry.metric import metric_pairing
from gradedgeo.geometry.types import ChristoffelData, MetricTensor, VectorField, series_degree

logger = logging.getLogger(__name__)


def gradient(m: MetricTensor, f: GradedSeries) -> VectorField:
    """grad f = (-1)^(<f,g> + <f+g, J>) d_J f g^JI d_I."""
    chart = m.chart
    if f.chart != chart:
        raise ChartMismatchError("la función no pertenece a la carta de la métrica")
    degs = chart.index_degrees
    df = series_degree(f)
    ginv = m.inverse.entries
    comps = [GradedSeries.zero(chart) for _ in range(chart.dimension)]
    for j in range(chart.dimension):
        dj = f.derive(j)
        if not dj.terms:
            continue
        sign = sign_of(scalar_product(df, m.degree) + scalar_product(df + m.degree, degs[j]))
        for i in range(chart.dimension):
            if ginv[j, i].terms:
                comps[i] = comps[i] + (dj * ginv[j, i]).scale(sign)
    return VectorField(chart, df + m.degree, comps)


def divergence(m: MetricTensor, c: ChristoffelData, X: VectorField) -> GradedSeries:
    """Div X = (-1)^<I, I+X> d_I X^I + (-1)^<I, I+J> X^J Gamma_JI^I."""
    chart = m.chart
    if X.chart != chart or c.chart != chart:
        raise ChartMismatchError("el campo no pertenece a la carta de la métrica")
    degs = chart.index_degrees
    total = GradedSeries.zero(chart)
    for i in range(chart.dimension):
        xi = X.components[i]
        if xi.terms:
            total = total + xi.derive(i).scale(sign_of(scalar_product(degs[i], degs[i] + X.degree)))
    for j, xj in X.nonzero():
        for i in range(chart.dimension):
            gam = c.gamma[j, i, i]
            if gam.terms:
                total = total + (xj * gam).scale(sign_of(scalar_product(degs[i], degs[i] + degs[j])))
    return total


def laplacian(m: MetricTensor, c: ChristoffelData, f: GradedSeries) -> GradedSeries:
    """Delta_g f = Div(grad f)."""
    return divergence(m, c, gradient(m, f))


def lie_derivative_metric(m: MetricTensor, X: VectorField) -> GradedMatrix:
    """(L_X g)_IJ = (-1)^<X,I> d_J X^K g_KI + (-1)^<X+J, I> d_I X^K g_KJ + (-1)^<X, I+J> X^K d_K g_IJ."""
    chart = m.chart
    if X.chart != chart:
        raise ChartMismatchError("el campo no pertenece a la carta de la métrica")
    dim = chart.dimension
    degs = chart.index_degrees
    g = m.components.entries
    dX = [[X.components[k].derive(a) for k in range(dim)] for a in range(dim)]
    out = GradedMatrix.zeros(chart, m.degree + X.degree, COVARIANT)
    for i in range(dim):
        for j in range(dim):
            first = GradedSeries.zero(chart)
            second = GradedSeries.zero(chart)
            third = GradedSeries.zero(chart)
            for k in range(dim):
                if dX[j][k].terms and g[k, i].terms:
                    first = first + dX[j][k] * g[k, i]
                if dX[i][k].terms and g[k, j].terms:
                    second = second + dX[i][k] * g[k, j]
                xk = X.components[k]
                if xk.terms:
                    third = third + xk * g[i, j].derive(k)
            out.entries[i, j] = first.scale(sign_of(scalar_product(X.degree, degs[i]))) \
                + second.scale(sign_of(scalar_product(X.degree + degs[j], degs[i]))) \
                + third.scale(sign_of(scalar_product(X.degree, degs[i] + degs[j])))
    return out


def killing_check(m: MetricTensor, X: VectorField) -> CheckReport:
    lx = lie_derivative_metric(m, X)
    names = m.chart.coordinates
    report = CheckReport("killing")
    for i in range(m.chart.dimension):
        for j in range(m.chart.dimension):
            report.add("killing", (names[i], names[j]), lx.entries[i, j])
    return report


def killing_bracket(X: VectorField, Y: VectorField) -> VectorField:
    return lie_bracket(X, Y)


# ------------------ Identidades ------------------

def _basis(m: MetricTensor):
    return [VectorField.basis(m.chart, a) for a in range(m.chart.dimension)]


def gradient_defining_check(m: MetricTensor, f: GradedSeries) -> CheckReport:
    """X(f) = (-1)^<f,g> <X|grad f> para cada campo básico."""
    grad = gradient(m, f)
    sign = sign_of(scalar_product(series_degree(f), m.degree))
    report = CheckReport("gradient-defining")
    for a, X in enumerate(_basis(m)):
        residue = X.apply(f) - metric_pairing(m, X, grad).scale(sign)
        report.add("gradient-defining", (m.chart.coordinates[a],), residue)
    return report


def gradient_product_check(m: MetricTensor, pairs: Iterable[Tuple[GradedSeries, GradedSeries]]) -> CheckReport:
    """grad(ff') = (-1)^<f,g> f grad f' + (-1)^<f', f+g> f' grad f."""
    report = CheckReport("gradient-product")
    for n, (f, h) in enumerate(pairs):
        df, dh = series_degree(f), series_degree(h)
        expected = gradient(m, h).times(f).scale(sign_of(scalar_product(df, m.degree))) \
            + gradient(m, f).times(h).scale(sign_of(scalar_product(dh, df + m.degree)))
        diff = gradient(m, f * h) - expected
        for a, comp in enumerate(diff.components):
            report.add("gradient-product", (str(n), m.chart.coordinates[a]), comp)
    return report


def divergence_product_check(m: MetricTensor, c: ChristoffelData,
                             cases: Iterable[Tuple[GradedSeries, VectorField]]) -> CheckReport:
    """Div(fX) = (-1)^<f, X+g> <X|grad f> + f Div X."""
    report = CheckReport("divergence-product")
    for n, (f, X) in enumerate(cases):
        df = series_degree(f)
        residue = divergence(m, c, X.times(f)) \
            - metric_pairing(m, X, gradient(m, f)).scale(sign_of(scalar_product(df, X.degree + m.degree))) \
            - f * divergence(m, c, X)
        report.add("divergence-product", (str(n),), residue)
    return report


def leibniz_anomaly(m: MetricTensor, c: ChristoffelData, f: GradedSeries, h: GradedSeries) -> GradedSeries:
    """Delta(ff') - (Delta f) f' - (-1)^<g,f> f Delta f'."""
    df = series_degree(f)
    return laplacian(m, c, f * h) - laplacian(m, c, f) * h \
        - (f * laplacian(m, c, h)).scale(sign_of(scalar_product(m.degree, df)))


def leibniz_anomaly_check(m: MetricTensor, c: ChristoffelData,
                          pairs: Iterable[Tuple[GradedSeries, GradedSeries]]) -> CheckReport:
    """La anomalía es (-1)^<f',g> (1 + (-1)^<g,g>) <grad f|grad f'>."""
    report = CheckReport("leibniz-anomaly")
    factor = 1 + sign_of(scalar_product(m.degree, m.degree))
    for n, (f, h) in enumerate(pairs):
        dh = series_degree(h)
        expected = metric_pairing(m, gradient(m, f), gradient(m, h)).scale(
            factor * sign_of(scalar_product(dh, m.degree)))
        report.add("leibniz-anomaly", (str(n),), leibniz_anomaly(m, c, f, h) - expected)
    return report


def probe_functions(m: MetricTensor, weight: Optional[int] = None) -> Sequence[Tuple[str, GradedSeries]]:
    """Monomios en los generadores por cada coordenada base: base de funciones de prueba."""
    chart = m.chart
    weight = chart.trunc_order if weight is None else weight
    out = []
    base_factors = [("1", GradedSeries.one(chart))]
    base_factors += [(b, GradedSeries.coordinate(chart, b)) for b in chart.base]
    base_factors += [(f"{b}^2", GradedSeries.coordinate(chart, b) ** 2) for b in chart.base]
    for mono in chart.monomials_up_to(weight):
        gen = GradedSeries.monomial(chart, mono)
        label = chart.mono_text(mono) or "1"
        for blabel, bf in base_factors:
            out.append((f"{blabel}*{label}", bf * gen))
    return out


def odd_laplacian_check(m: MetricTensor, c: ChristoffelData, functions=None) -> CheckReport:
    """Para métricas impares Delta_g f = 0 en un conjunto generador de funciones."""
    report = CheckReport("odd-laplacian")
    for label, f in functions if functions is not None else probe_functions(m):
        report.add("odd-laplacian", (label,), laplacian(m, c, f))
    return report


def contracted_christoffel_check(m: MetricTensor, c: ChristoffelData) -> CheckReport:
    """2 C_L = T2_L + (1 - (-1)^<g,g>) T1_L; si g es impar además C_L = T1_L, con
    C_L = (-1)^<I,I+L> Gamma_LI^I, T1_L = (-1)^<I,I+L> d_I g_LM g^MI, T2_L = (-1)^<I,I> d_L g_IM g^MI."""
    chart = m.chart
    dim = chart.dimension
    degs = chart.index_degrees
    g = m.components.entries
    ginv = m.inverse.entries
    odd = m.is_odd
    factor = 1 - sign_of(scalar_product(m.degree, m.degree))
    report = CheckReport("contracted-christoffel")
    for l in range(dim):
        cl = GradedSeries.zero(chart)
        t1 = GradedSeries.zero(chart)
        t2 = GradedSeries.zero(chart)
        for i in range(dim):
            s_il = sign_of(scalar_product(degs[i], degs[i] + degs[l]))
            s_ii = sign_of(scalar_product(degs[i], degs[i]))
            cl = cl + c.gamma[l, i, i].scale(s_il)
            for mm in range(dim):
                if not ginv[mm, i].terms:
                    continue
                t1 = t1 + (g[l, mm].derive(i) * ginv[mm, i]).scale(s_il)
                t2 = t2 + (g[i, mm].derive(l) * ginv[mm, i]).scale(s_ii)
        name = chart.coordinates[l]
        report.add("contracted-general", (name,), cl.scale(2) - t2 - t1.scale(factor))
        if odd:
            report.add("contracted-odd", (name,), cl - t1)
    return report
