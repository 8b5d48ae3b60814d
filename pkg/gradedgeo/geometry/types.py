"""
Tipos de la geometría riemanniana graduada: métrica, campos vectoriales,
1-formas, símbolos de Christoffel y tensor de Riemann.
"""
import logging
from typing import Iterable, List, Optional, Sequence

import numpy as np

from gradedgeo.errors import ChartMismatchError, DegreeError
from gradedgeo.gradedlinalg import COVARIANT, GradedMatrix, invert
from gradedgeo.grading import Degree, scalar_product, sign_of
from gradedgeo.symkernel.chart import Chart
from gradedgeo.symkernel.series import GradedSeries

logger = logging.getLogger(__name__)


def series_degree(f: GradedSeries, default: Optional[Degree] = None) -> Degree:
    """Grado de una función homogénea; la función nula toma ``default`` (o cero)."""
    d = f.degree()
    if d is not None:
        return d
    return default if default is not None else Degree.zero(f.chart.n)


class MetricTensor:
    """g_IJ = <d_I|d_J>_g junto con su grado."""

    def __init__(self, chart: Chart, degree: Degree, components: GradedMatrix):
        if components.chart != chart:
            raise ChartMismatchError("las componentes no pertenecen a la carta")
        if degree.n != chart.n:
            raise DegreeError(f"el grado de la métrica tiene {degree.n} bits; la carta usa n={chart.n}")
        self.chart = chart
        self.degree = degree
        self.components = components
        self._inverse: Optional[GradedMatrix] = None

    @classmethod
    def from_entries(cls, chart: Chart, degree: Degree, entries: dict) -> "MetricTensor":
        """Construye g desde {(I, J): serie}; completa g_JI = (-1)^<I,J> g_IJ."""
        m = GradedMatrix.zeros(chart, degree, COVARIANT)
        degs = chart.index_degrees
        for (a, b), value in entries.items():
            i, j = chart.index_of(a), chart.index_of(b)
            m.entries[i, j] = value
            if i != j:
                m.entries[j, i] = value.scale(sign_of(scalar_product(degs[i], degs[j])))
        return cls(chart, degree, m)

    @property
    def is_odd(self) -> bool:
        return scalar_product(self.degree, self.degree) == 1

    @property
    def is_even(self) -> bool:
        return not self.is_odd

    def __getitem__(self, key) -> GradedSeries:
        return self.components[key]

    @property
    def inverse(self) -> GradedMatrix:
        """g^IJ, calculada una sola vez."""
        if self._inverse is None:
            self._inverse = invert(self.components)
        return self._inverse

    def __repr__(self):
        return f"MetricTensor(deg={self.degree}, {self.components.to_json()})"


class VectorField:
    """X = X^I d_I con coeficientes a la izquierda."""

    def __init__(self, chart: Chart, degree: Degree, components: Sequence[GradedSeries]):
        if len(components) != chart.dimension:
            raise ChartMismatchError(f"se esperaban {chart.dimension} componentes")
        self.chart = chart
        self.degree = degree
        self.components: List[GradedSeries] = list(components)

    @classmethod
    def zero(cls, chart: Chart, degree: Optional[Degree] = None) -> "VectorField":
        return cls(chart, degree or Degree.zero(chart.n), [GradedSeries.zero(chart)] * chart.dimension)

    @classmethod
    def basis(cls, chart: Chart, coord) -> "VectorField":
        idx = chart.index_of(coord)
        comps = [GradedSeries.zero(chart)] * chart.dimension
        comps = list(comps)
        comps[idx] = GradedSeries.one(chart)
        return cls(chart, chart.index_degrees[idx], comps)

    @classmethod
    def from_components(cls, chart: Chart, components: dict, degree: Optional[Degree] = None) -> "VectorField":
        """Campo desde {coordenada: serie}; el grado se infiere si no se indica."""
        comps = [GradedSeries.zero(chart)] * chart.dimension
        comps = list(comps)
        inferred = set()
        for coord, value in components.items():
            idx = chart.index_of(coord)
            comps[idx] = value
            d = value.degree()
            if d is not None:
                inferred.add(d + chart.index_degrees[idx])
        if degree is None:
            if len(inferred) > 1:
                raise DegreeError(f"campo no homogéneo: grados {sorted(str(d) for d in inferred)}")
            degree = inferred.pop() if inferred else Degree.zero(chart.n)
        return cls(chart, degree, comps)

    def _check(self, other: "VectorField") -> None:
        if other.chart != self.chart:
            raise ChartMismatchError("los campos pertenecen a cartas distintas")

    def __getitem__(self, coord) -> GradedSeries:
        return self.components[self.chart.index_of(coord)]

    def __add__(self, other: "VectorField") -> "VectorField":
        self._check(other)
        return VectorField(self.chart, self.degree, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other: "VectorField") -> "VectorField":
        self._check(other)
        return VectorField(self.chart, self.degree, [a - b for a, b in zip(self.components, other.components)])

    def __neg__(self) -> "VectorField":
        return VectorField(self.chart, self.degree, [-a for a in self.components])

    def times(self, f: GradedSeries) -> "VectorField":
        """f X, con f a la izquierda de cada componente."""
        return VectorField(self.chart, series_degree(f) + self.degree, [f * a for a in self.components])

    def scale(self, c) -> "VectorField":
        return VectorField(self.chart, self.degree, [a.scale(c) for a in self.components])

    def apply(self, f: GradedSeries) -> GradedSeries:
        """X(f) = X^I d_I f."""
        total = GradedSeries.zero(self.chart)
        for i, comp in enumerate(self.components):
            if comp.terms:
                total = total + comp * f.derive(i)
        return total

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def nonzero(self):
        for i, c in enumerate(self.components):
            if c.terms:
                yield i, c

    def degree_violations(self) -> List[int]:
        degs = self.chart.index_degrees
        return [i for i, c in enumerate(self.components) if not c.is_homogeneous_of(self.degree + degs[i])]

    def to_json(self) -> dict:
        names = self.chart.coordinates
        return {names[i]: c.text() for i, c in self.nonzero()}

    def __repr__(self):
        return f"VectorField(deg={self.degree}, {self.to_json()})"


class OneForm:
    """Componentes w_I de una 1-forma."""

    def __init__(self, chart: Chart, degree: Degree, components: Sequence[GradedSeries]):
        if len(components) != chart.dimension:
            raise ChartMismatchError(f"se esperaban {chart.dimension} componentes")
        self.chart = chart
        self.degree = degree
        self.components = list(components)

    def to_json(self) -> dict:
        names = self.chart.coordinates
        return {names[i]: c.text() for i, c in enumerate(self.components) if c.terms}


def _zero_array(chart: Chart, rank: int) -> np.ndarray:
    dim = chart.dimension
    arr = np.empty((dim,) * rank, dtype=object)
    zero = GradedSeries.zero(chart)
    for idx in np.ndindex(arr.shape):
        arr[idx] = zero
    return arr


class ChristoffelData:
    """Gamma_JI^K guardado como gamma[J, I, K]: nabla_{d_I} d_J = Gamma_JI^K d_K."""

    def __init__(self, chart: Chart, gamma: Optional[np.ndarray] = None):
        self.chart = chart
        self.gamma = gamma if gamma is not None else _zero_array(chart, 3)

    def copy(self) -> "ChristoffelData":
        return ChristoffelData(self.chart, self.gamma.copy())

    def column(self, j: int, i: int) -> VectorField:
        """nabla_{d_I} d_J como campo vectorial."""
        degs = self.chart.index_degrees
        return VectorField(self.chart, degs[i] + degs[j], list(self.gamma[j, i, :]))

    def to_json(self) -> dict:
        names = self.chart.coordinates
        return {
            f"{names[j]},{names[i]},{names[k]}": self.gamma[j, i, k].text()
            for j, i, k in np.ndindex(self.gamma.shape) if self.gamma[j, i, k].terms
        }


class RiemannData:
    """R_IJK^L guardado como r[I, J, K, L]: R(d_I, d_J) d_K = R_IJK^L d_L."""

    def __init__(self, chart: Chart, r: Optional[np.ndarray] = None):
        self.chart = chart
        self.r = r if r is not None else _zero_array(chart, 4)

    def image(self, i: int, j: int, k: int) -> VectorField:
        degs = self.chart.index_degrees
        return VectorField(self.chart, degs[i] + degs[j] + degs[k], list(self.r[i, j, k, :]))

    def nonzero_items(self) -> Iterable:
        for idx in np.ndindex(self.r.shape):
            if self.r[idx].terms:
                yield idx, self.r[idx]

    def to_json(self) -> dict:
        names = self.chart.coordinates
        return {",".join(names[a] for a in idx): s.text() for idx, s in self.nonzero_items()}
