"""
Series formales truncadas en los generadores graduados de una carta.

Los coeficientes son ``Expr`` en las coordenadas base. Cada serie guarda su
precisión ``prec``: el mayor peso (potencia de generadores no nilpotentes)
hasta el cual es exacta; ``None`` significa exacta en todos los pesos.
"""
import logging
import math
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional

import sympy

from gradedgeo import config
from gradedgeo.errors import ChartMismatchError, DegreeError, NotInvertibleError
from gradedgeo.grading import Degree
from gradedgeo.symkernel.chart import DROPPED, Chart, Monomial
from gradedgeo.symkernel.expr import Expr, ZeroStatus

logger = logging.getLogger(__name__)

_SCALARS = (int, Fraction, sympy.Rational, Expr)


def _min_prec(*precs: Optional[int]) -> Optional[int]:
    known = [p for p in precs if p is not None]
    return min(known) if known else None


class GradedSeries:
    __slots__ = ("chart", "terms", "prec")

    def __init__(self, chart: Chart, terms: Optional[Dict[Monomial, Expr]] = None,
                 prec: Optional[int] = None):
        self.chart = chart
        self.terms = {m: c for m, c in (terms or {}).items() if not c.is_exact_zero}
        if prec is not None:
            prec = min(prec, chart.trunc_order)
        self.prec = prec

    # ------------------ Construcción ------------------

    @classmethod
    def zero(cls, chart: Chart) -> "GradedSeries":
        return cls(chart)

    @classmethod
    def one(cls, chart: Chart) -> "GradedSeries":
        return cls.constant(chart, 1)

    @classmethod
    def constant(cls, chart: Chart, value) -> "GradedSeries":
        return cls(chart, {chart.unit: Expr.const(chart.space, value)})

    @classmethod
    def from_expr(cls, chart: Chart, expr: Expr) -> "GradedSeries":
        return cls(chart, {chart.unit: expr})

    @classmethod
    def coordinate(cls, chart: Chart, name: str) -> "GradedSeries":
        """La función coordenada x^I (o un parámetro, como constante)."""
        if name in chart.params:
            return cls.from_expr(chart, Expr.symbol(chart.space, name))
        idx = chart.index_of(name)
        if idx < chart.p:
            return cls.from_expr(chart, Expr.symbol(chart.space, name))
        mono = chart.gen_monomial(idx - chart.p)
        if chart.mono_weight(mono) > chart.trunc_order:
            return cls(chart, {}, chart.trunc_order)
        return cls(chart, {mono: Expr.const(chart.space, 1)})

    @classmethod
    def monomial(cls, chart: Chart, mono: Monomial, coeff=1) -> "GradedSeries":
        return cls(chart, {mono: Expr.const(chart.space, coeff)})

    def _like(self, terms, prec) -> "GradedSeries":
        return GradedSeries(self.chart, terms, prec)

    def _coerce(self, other) -> "GradedSeries":
        if isinstance(other, GradedSeries):
            if other.chart != self.chart:
                raise ChartMismatchError("las series pertenecen a cartas distintas")
            return other
        if isinstance(other, _SCALARS):
            return GradedSeries.constant(self.chart, other)
        return NotImplemented

    # ------------------ Consultas ------------------

    @property
    def is_exact(self) -> bool:
        return self.prec is None

    def valuation(self) -> Optional[int]:
        """Menor peso presente; None si no hay términos."""
        if not self.terms:
            return None
        return min(self.chart.mono_weight(m) for m in self.terms)

    def _true_valuation(self) -> Optional[int]:
        v = self.valuation()
        if self.prec is not None:
            bound = self.prec + 1
            v = bound if v is None else min(v, bound)
        return v

    def body(self) -> Expr:
        return self.terms.get(self.chart.unit, Expr.const(self.chart.space, 0))

    def degrees(self) -> set:
        return {self.chart.mono_degree(m) for m in self.terms}

    def degree(self) -> Optional[Degree]:
        """Grado de una serie homogénea; None para la serie nula."""
        degs = self.degrees()
        if not degs:
            return None
        if len(degs) > 1:
            raise DegreeError(f"serie no homogénea: grados {sorted(str(d) for d in degs)}")
        return degs.pop()

    def is_homogeneous_of(self, d: Degree) -> bool:
        return all(self.chart.mono_degree(m) == d for m in self.terms)

    def visible_terms(self):
        """Términos dentro de la ventana exacta."""
        if self.prec is None:
            return self.terms.items()
        return [(m, c) for m, c in self.terms.items() if self.chart.mono_weight(m) <= self.prec]

    def zero_status(self, settings: Optional[config.ZeroTestSettings] = None) -> ZeroStatus:
        if self.prec is not None and self.prec < 0:
            logger.warning("ventana de precisión vacía: el test de cero no es concluyente")
            return ZeroStatus.INDETERMINATE
        return ZeroStatus.combine(c.zero_status(settings) for _, c in self.visible_terms())

    def is_zero(self) -> bool:
        return self.zero_status().is_zero

    # ------------------ Aritmética ------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m)
            if s is None:
                terms[m] = c
            else:
                s = s + c
                if s.is_exact_zero:
                    del terms[m]
                else:
                    terms[m] = s
        return self._like(terms, _min_prec(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self):
        return self._like({m: -c for m, c in self.terms.items()}, self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor) -> "GradedSeries":
        """Producto por un escalar de grado cero (coeficiente a la izquierda)."""
        factor = Expr.const(self.chart.space, factor)
        if factor.is_exact_zero:
            return self._like({}, self.prec)
        return self._like({m: factor * c for m, c in self.terms.items()}, self.prec)

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        chart = self.chart
        terms: Dict[Monomial, Expr] = {}
        dropped = False
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                r = chart.mono_mul(ma, mb)
                if r is None:
                    continue
                if r is DROPPED:
                    dropped = True
                    continue
                sign, mc = r
                c = ca * cb
                if sign < 0:
                    c = -c
                s = terms.get(mc)
                terms[mc] = c if s is None else s + c
        return self._like(terms, self._product_prec(other, dropped))

    def __rmul__(self, other):
        if isinstance(other, _SCALARS):
            return self.scale(other)
        return NotImplemented

    def _product_prec(self, other: "GradedSeries", dropped: bool) -> Optional[int]:
        cands = []
        if self.prec is not None:
            vb = other._true_valuation()
            if vb is not None:
                cands.append(self.prec + vb)
        if other.prec is not None:
            va = self._true_valuation()
            if va is not None:
                cands.append(other.prec + va)
        if dropped:
            cands.append(self.chart.trunc_order)
        return min(cands) if cands else None

    def invert(self) -> "GradedSeries":
        """Inversa a0^-1 sum (-u)^k con a = a0 (1 + u)."""
        body = self.body()
        status = body.zero_status()
        if status is not ZeroStatus.NONZERO:
            raise NotInvertibleError(f"el cuerpo de la serie es nulo ({status.value})")
        chart = self.chart
        inv_body = body.inverse()
        rest = self - GradedSeries.from_expr(chart, body)
        u = rest.scale(inv_body)
        step = -u
        power = GradedSeries.one(chart)
        result = GradedSeries.one(chart)
        limit = chart.trunc_order + len(chart.generators) + 1
        for k in range(1, limit + 2):
            power = power * step
            if not power.terms:
                result = self._like(result.terms, _min_prec(result.prec, power.prec))
                break
            result = result + power
            logger.debug("inversión: iteración %d, %d términos", k, len(power.terms))
        else:
            raise NotInvertibleError("la serie de Neumann no terminó")
        return result.scale(inv_body)

    def __truediv__(self, other):
        if isinstance(other, _SCALARS):
            return self.scale(Expr.const(self.chart.space, other).inverse())
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.invert()

    def __rtruediv__(self, other):
        return GradedSeries.constant(self.chart, other) * self.invert()

    def __pow__(self, n: int):
        n = int(n)
        if n < 0:
            return self.invert() ** (-n)
        result = GradedSeries.one(self.chart)
        for _ in range(n):
            result = result * self
        return result

    def exp(self) -> "GradedSeries":
        """exp(b + u) = exp(b) sum u^k/k!, para series de grado cero."""
        if not self.is_homogeneous_of(Degree.zero(self.chart.n)):
            raise DegreeError("exp solo está definida para series de grado cero")
        body = self.body()
        u = self - GradedSeries.from_expr(self.chart, body)
        power = GradedSeries.one(self.chart)
        result = GradedSeries.one(self.chart)
        k = 0
        while True:
            k += 1
            power = power * u
            if not power.terms:
                result = self._like(result.terms, _min_prec(result.prec, power.prec))
                break
            result = result + power.scale(Fraction(1, math.factorial(k)))
        return result.scale(body.exp())

    # ------------------ Derivadas ------------------

    def derive(self, coord) -> "GradedSeries":
        """Derivación izquierda d/dx^I."""
        chart = self.chart
        idx = chart.index_of(coord)
        if idx < chart.p:
            name = chart.base[idx]
            return self._like({m: c.diff(name) for m, c in self.terms.items()}, self.prec)
        k = idx - chart.p
        terms: Dict[Monomial, Expr] = {}
        for m, c in self.terms.items():
            r = chart.mono_derive(k, m)
            if r is None:
                continue
            factor, nm = r
            terms[nm] = c * factor
        prec = self.prec
        if prec is not None and not chart.nilpotent[k]:
            prec -= 1
        return self._like(terms, prec)

    # ------------------ Evaluación e impresión ------------------

    def evaluate(self, point: Mapping[str, object], weights: Optional[Mapping[Monomial, object]] = None):
        """sum weights[m] * c_m(point); sin pesos se evalúa el cuerpo."""
        if weights is None:
            weights = {self.chart.unit: 1}
        total = 0
        for m, w in weights.items():
            c = self.terms.get(tuple(m))
            if c is not None and w:
                total += c.evaluate(point) * (sympy.Rational(w) if not isinstance(w, float) else w)
        return sympy.sympify(total)

    def text(self) -> str:
        chart = self.chart
        items = sorted(self.visible_terms(), key=lambda mc: (chart.mono_weight(mc[0]), sum(mc[0]), mc[0]))
        if not items:
            return "0"
        parts = []
        for m, c in items:
            ct = c.text()
            mt = chart.mono_text(m)
            if not mt:
                parts.append(ct if _is_atom(ct) else f"({ct})")
            elif ct == "1":
                parts.append(mt)
            elif ct == "-1":
                parts.append(f"-{mt}")
            else:
                parts.append(f"{ct}*{mt}" if _is_atom(ct) else f"({ct})*{mt}")
        return " + ".join(parts)

    def __str__(self):
        return self.text()

    def __repr__(self):
        suffix = "" if self.prec is None else f", prec={self.prec}"
        return f"GradedSeries({self.text()}{suffix})"


def _is_atom(text: str) -> bool:
    body = text[1:] if text.startswith("-") else text
    return not any(ch in body for ch in " +-*/()^")


def series_mul(a: GradedSeries, b: GradedSeries) -> GradedSeries:
    return a * b


def series_derive(a: GradedSeries, coord) -> GradedSeries:
    return a.derive(coord)


def series_invert(a: GradedSeries) -> GradedSeries:
    return a.invert()


def series_exp(a: GradedSeries) -> GradedSeries:
    return a.exp()


def is_zero(a: GradedSeries) -> bool:
    return a.is_zero()


def evaluate(a: GradedSeries, point, weights=None):
    return a.evaluate(point, weights)


def sum_series(chart: Chart, items: Iterable[GradedSeries]) -> GradedSeries:
    total = GradedSeries.zero(chart)
    for s in items:
        total = total + s
    return total
