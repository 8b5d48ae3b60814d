"""
Álgebra lineal graduada sobre series.
Incluye:
- GradedMatrix: arreglo cuadrado de GradedSeries con varianza y grado
- Cuerpo (proyección epsilon), determinante del cuerpo e inversión por serie de Neumann
- Traza graduada y traza respecto de una métrica
"""
import logging
from typing import Dict, List, Optional, Tuple

import numpy as np
import sympy

from gradedgeo.errors import ChartMismatchError, NonDegeneracyError, VarianceError
from gradedgeo.grading import Degree, scalar_product, sign_of
from gradedgeo.reports import CheckReport
from gradedgeo.symkernel.chart import Chart
from gradedgeo.symkernel.expr import Expr, ZeroStatus
from gradedgeo.symkernel.series import GradedSeries

logger = logging.getLogger(__name__)

COVARIANT = "covariant"
CONTRAVARIANT = "contravariant"
MIXED = "mixed"
_VARIANCES = (COVARIANT, CONTRAVARIANT, MIXED)


class GradedMatrix:
    """Componentes (I,J) indexadas por las coordenadas de la carta."""

    def __init__(self, chart: Chart, entries: np.ndarray, degree: Degree, variance: str = COVARIANT):
        if variance not in _VARIANCES:
            raise VarianceError(f"varianza desconocida: {variance}")
        dim = chart.dimension
        if entries.shape != (dim, dim):
            raise ChartMismatchError(f"se esperaba una matriz {dim}x{dim}, se recibió {entries.shape}")
        self.chart = chart
        self.entries = entries
        self.degree = degree
        self.variance = variance

    @classmethod
    def zeros(cls, chart: Chart, degree: Degree, variance: str = COVARIANT) -> "GradedMatrix":
        dim = chart.dimension
        entries = np.empty((dim, dim), dtype=object)
        for i in range(dim):
            for j in range(dim):
                entries[i, j] = GradedSeries.zero(chart)
        return cls(chart, entries, degree, variance)

    @classmethod
    def identity(cls, chart: Chart, variance: str = MIXED) -> "GradedMatrix":
        m = cls.zeros(chart, Degree.zero(chart.n), variance)
        for i in range(chart.dimension):
            m.entries[i, i] = GradedSeries.one(chart)
        return m

    def __getitem__(self, key) -> GradedSeries:
        i, j = key
        return self.entries[self.chart.index_of(i), self.chart.index_of(j)]

    def __setitem__(self, key, value: GradedSeries):
        i, j = key
        self.entries[self.chart.index_of(i), self.chart.index_of(j)] = value

    def copy(self) -> "GradedMatrix":
        return GradedMatrix(self.chart, self.entries.copy(), self.degree, self.variance)

    def expected_degree(self, i: int, j: int) -> Degree:
        degs = self.chart.index_degrees
        return degs[i] + degs[j] + self.degree

    def degree_violations(self) -> List[Tuple[int, int]]:
        dim = self.chart.dimension
        return [
            (i, j) for i in range(dim) for j in range(dim)
            if not self.entries[i, j].is_homogeneous_of(self.expected_degree(i, j))
        ]

    def nonzero_items(self):
        dim = self.chart.dimension
        for i in range(dim):
            for j in range(dim):
                if self.entries[i, j].terms:
                    yield i, j, self.entries[i, j]

    def to_json(self) -> Dict[str, str]:
        names = self.chart.coordinates
        return {f"{names[i]},{names[j]}": s.text() for i, j, s in self.nonzero_items()}

    def __sub__(self, other: "GradedMatrix") -> "GradedMatrix":
        _check_chart(self, other)
        return GradedMatrix(self.chart, self.entries - other.entries, self.degree, self.variance)

    def __repr__(self):
        return f"GradedMatrix({self.variance}, deg={self.degree}, {self.to_json()})"


def _check_chart(a: GradedMatrix, b: GradedMatrix) -> None:
    if a.chart != b.chart:
        raise ChartMismatchError("las matrices pertenecen a cartas distintas")


def matmul(a: GradedMatrix, b: GradedMatrix, variance: Optional[str] = None) -> GradedMatrix:
    """Producto de componentes sum_K a_IK b_KJ."""
    _check_chart(a, b)
    chart = a.chart
    dim = chart.dimension
    out = GradedMatrix.zeros(chart, a.degree + b.degree, variance or MIXED)
    for i in range(dim):
        for k in range(dim):
            aik = a.entries[i, k]
            if not aik.terms:
                continue
            for j in range(dim):
                bkj = b.entries[k, j]
                if bkj.terms:
                    out.entries[i, j] = out.entries[i, j] + aik * bkj
    return out


def body(m: GradedMatrix) -> np.ndarray:
    """Matriz de Expr con todos los generadores puestos a cero."""
    dim = m.chart.dimension
    out = np.empty((dim, dim), dtype=object)
    for i in range(dim):
        for j in range(dim):
            out[i, j] = m.entries[i, j].body()
    return out


def body_determinant(m: GradedMatrix) -> Expr:
    """Determinante del cuerpo por eliminación sin fracciones (Bareiss)."""
    b = body(m)
    mat = sympy.Matrix(b.shape[0], b.shape[1], lambda i, j: b[i, j].as_sympy())
    det = mat.det(method="bareiss")
    return Expr.from_sympy(m.chart.space, sympy.cancel(det) if not det.has(sympy.exp) else det)


def _body_inverse(b: np.ndarray, space) -> np.ndarray:
    """Gauss-Jordan exacto sobre Expr con pivote no nulo."""
    dim = b.shape[0]
    work = [[b[i, j] for j in range(dim)] + [Expr.const(space, 1 if i == j else 0) for j in range(dim)]
            for i in range(dim)]
    for col in range(dim):
        pivot = None
        for row in range(col, dim):
            if work[row][col].zero_status() is ZeroStatus.NONZERO:
                pivot = row
                break
        if pivot is None:
            raise NonDegeneracyError("el cuerpo de la matriz es singular")
        work[col], work[pivot] = work[pivot], work[col]
        inv = work[col][col].inverse()
        work[col] = [e * inv for e in work[col]]
        for row in range(dim):
            if row == col or work[row][col].is_exact_zero:
                continue
            factor = work[row][col]
            work[row] = [e - factor * p for e, p in zip(work[row], work[col])]
    out = np.empty((dim, dim), dtype=object)
    for i in range(dim):
        for j in range(dim):
            out[i, j] = work[i][dim + j]
    return out


def invert(m: GradedMatrix) -> GradedMatrix:
    """m = B(1 + U'), U' = B^-1 (m - B); m^-1 = (sum (-U')^k) B^-1."""
    chart = m.chart
    dim = chart.dimension
    logger.info("invirtiendo matriz %dx%d", dim, dim)
    det = body_determinant(m)
    status = det.zero_status()
    if status is not ZeroStatus.NONZERO:
        raise NonDegeneracyError(f"determinante del cuerpo nulo ({status.value})")
    if not det.is_canonical:
        logger.warning("invertibilidad del cuerpo decidida por muestreo: det = %s", det.text())
    binv_e = _body_inverse(body(m), chart.space)
    variance = CONTRAVARIANT if m.variance == COVARIANT else (COVARIANT if m.variance == CONTRAVARIANT else MIXED)
    binv = GradedMatrix.zeros(chart, Degree.zero(chart.n), MIXED)
    nil = GradedMatrix.zeros(chart, m.degree, MIXED)
    for i in range(dim):
        for j in range(dim):
            if not binv_e[i, j].is_exact_zero:
                binv.entries[i, j] = GradedSeries.from_expr(chart, binv_e[i, j])
            e = m.entries[i, j]
            nil.entries[i, j] = e - GradedSeries.from_expr(chart, e.body())
    step = matmul(binv, nil)
    step.entries = -step.entries
    total = GradedMatrix.identity(chart)
    power = GradedMatrix.identity(chart)
    limit = chart.trunc_order + len(chart.generators) + 1
    for k in range(1, limit + 2):
        power = matmul(power, step)
        if not any(True for _ in power.nonzero_items()):
            break
        total.entries = total.entries + power.entries
        logger.debug("Neumann: término %d", k)
    else:
        raise NonDegeneracyError("la serie de Neumann no terminó")
    result = matmul(total, binv, variance)
    result.degree = m.degree
    return result



def graded_trace(m: GradedMatrix, d: Optional[Degree] = None) -> GradedSeries:
    """sum_I (-1)^<I, I+d> m_I^I."""
    if m.variance != MIXED:
        raise VarianceError("la traza graduada requiere un tensor mixto (1,1)")
    d = m.degree if d is None else d
    total = GradedSeries.zero(m.chart)
    for i, deg in enumerate(m.chart.index_degrees):
        e = m.entries[i, i]
        if e.terms or e.prec is not None:
            total = total + e.scale(sign_of(scalar_product(deg, deg + d)))
    return total


def mixed_from_covariant(w: GradedMatrix, ginv: GradedMatrix) -> GradedMatrix:
    """X_J^K = sum_I (-1)^<I, w+g+J> w_JI g^IK."""
    _check_chart(w, ginv)
    chart = w.chart
    dim = chart.dimension
    degs = chart.index_degrees
    shift = w.degree + ginv.degree
    out = GradedMatrix.zeros(chart, shift, MIXED)
    for j in range(dim):
        for i in range(dim):
            wji = w.entries[j, i]
            if not wji.terms:
                continue
            sign = sign_of(scalar_product(degs[i], shift + degs[j]))
            for k in range(dim):
                gik = ginv.entries[i, k]
                if gik.terms:
                    out.entries[j, k] = out.entries[j, k] + (wji * gik).scale(sign)
    return out


def metric_trace(w: GradedMatrix, ginv: GradedMatrix) -> GradedSeries:
    """tr_g(w) = sum (-1)^(<w+g, I+J> + <I,J> + <J,J>) w_JI g^IJ."""
    _check_chart(w, ginv)
    chart = w.chart
    degs = chart.index_degrees
    shift = w.degree + ginv.degree
    total = GradedSeries.zero(chart)
    dim = chart.dimension
    for i in range(dim):
        for j in range(dim):
            wji, gij = w.entries[j, i], ginv.entries[i, j]
            if not (wji.terms and gij.terms):
                continue
            e = scalar_product(shift, degs[i] + degs[j]) + scalar_product(degs[i], degs[j]) \
                + scalar_product(degs[j], degs[j])
            total = total + (wji * gij).scale(sign_of(e))
    return total


def inverse_symmetry_check(g: GradedMatrix, ginv: GradedMatrix) -> CheckReport:
    """g^JK = (-1)^(<J,J>+<K,K>+<K,J>+<g,g>) g^KJ."""
    chart = g.chart
    degs = chart.index_degrees
    names = chart.coordinates
    gg = scalar_product(g.degree, g.degree)
    report = CheckReport("inverse-symmetry")
    for j in range(chart.dimension):
        for k in range(j, chart.dimension):
            e = scalar_product(degs[j], degs[j]) + scalar_product(degs[k], degs[k]) \
                + scalar_product(degs[k], degs[j]) + gg
            residue = ginv.entries[j, k] - ginv.entries[k, j].scale(sign_of(e))
            report.add("inverse-symmetry", (names[j], names[k]), residue)
    return report


def inverse_identity_check(g: GradedMatrix, ginv: GradedMatrix) -> CheckReport:
    """Ambos productos g^-1 g y g g^-1 deben ser la identidad."""
    report = CheckReport("inverse-identity")
    names = g.chart.coordinates
    ident = GradedMatrix.identity(g.chart)
    for label, prod in (("left", matmul(ginv, g)), ("right", matmul(g, ginv))):
        diff = prod - ident
        for i in range(g.chart.dimension):
            for j in range(g.chart.dimension):
                report.add(f"inverse-{label}", (names[i], names[j]), diff.entries[i, j])
    return report
