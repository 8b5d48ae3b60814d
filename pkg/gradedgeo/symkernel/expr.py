"""
Expresiones escalares sobre las coordenadas base.

Una ``Expr`` es un cociente N/D de combinaciones finitas sum c_k(x) exp(e_k(x)),
con c_k en el cuerpo de funciones racionales de sympy (``FracField``) y los
exponentes e_k como claves. Si todos los exponentes son racionales la forma es
canónica y el test de cero es exacto; un exponente con exp anidado se guarda
como expresión de sympy y el test de cero recurre a la evaluación numérica.
"""
import logging
import math
import re
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Mapping, Optional, Tuple, Union

import numpy as np
import sympy
from sympy.polys.domains import QQ
from sympy.polys.fields import FracElement, FracField

from gradedgeo import config
from gradedgeo.errors import EvaluationError, NotInvertibleError, UnknownCoordinateError

logger = logging.getLogger(__name__)

Number = Union[int, Fraction, sympy.Rational]


class ZeroStatus(str, Enum):
    SYMBOLIC = "symbolic-zero"
    NUMERIC = "numeric-zero"
    INDETERMINATE = "indeterminate"  # ventana de precisión vacía
    NONZERO = "nonzero"

    @property
    def is_zero(self) -> bool:
        return self in (ZeroStatus.SYMBOLIC, ZeroStatus.NUMERIC)

    @staticmethod
    def combine(statuses) -> "ZeroStatus":
        """El peor estado gana: nonzero > indeterminate > numeric-zero > symbolic-zero."""
        result = ZeroStatus.SYMBOLIC
        for s in statuses:
            if s is ZeroStatus.NONZERO:
                return s
            if _STATUS_RANK[s] > _STATUS_RANK[result]:
                result = s
        return result


_STATUS_RANK = {
    ZeroStatus.SYMBOLIC: 0,
    ZeroStatus.NUMERIC: 1,
    ZeroStatus.INDETERMINATE: 2,
    ZeroStatus.NONZERO: 3,
}


class CoefficientSpace:
    """Cuerpo de coeficientes: funciones racionales en las coordenadas base y los parámetros."""

    def __init__(self, names: Tuple[str, ...]):
        self.names = tuple(names)
        self.symbols = tuple(sympy.Symbol(n) for n in self.names)
        self.field = FracField(self.symbols, QQ)
        self.gens = dict(zip(self.names, self.field.gens))
        self.by_symbol = dict(zip(self.symbols, self.names))
        self.zero_key = self.field.zero

    def __repr__(self):
        return f"CoefficientSpace({', '.join(self.names)})"

    # ------------------ Claves (exponentes) ------------------

    def key_sympy(self, key):
        return key.as_expr() if isinstance(key, FracElement) else key

    def normalize_key(self, expr):
        """Convierte a FracElement todo exponente sin exp anidado."""
        expr = sympy.sympify(expr)
        if not expr.has(sympy.exp, sympy.E):
            try:
                return self.field.from_expr(expr)
            except ValueError as exc:
                raise EvaluationError(f"exponente no racional: {expr}") from exc
        return expr

    def key_add(self, k1, k2):
        if isinstance(k1, FracElement) and isinstance(k2, FracElement):
            return k1 + k2
        return self.normalize_key(self.key_sympy(k1) + self.key_sympy(k2))

    def key_neg(self, k):
        if isinstance(k, FracElement):
            return -k
        return self.normalize_key(-k)

    def const(self, value) -> "Expr":
        return Expr.const(self, value)


@lru_cache(maxsize=None)
def coefficient_space(names: Tuple[str, ...]) -> CoefficientSpace:
    return CoefficientSpace(tuple(names))


# ------------------ Polinomios exponenciales (dict clave -> FracElement) ------------------

def _ep_add(a: Dict, b: Dict) -> Dict:
    out = dict(a)
    for k, c in b.items():
        s = out.get(k)
        if s is None:
            out[k] = c
        else:
            s = s + c
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def _ep_neg(a: Dict) -> Dict:
    return {k: -c for k, c in a.items()}


def _ep_mul(space: CoefficientSpace, a: Dict, b: Dict) -> Dict:
    out: Dict = {}
    for k1, c1 in a.items():
        for k2, c2 in b.items():
            k = k1 if not k2 else (k2 if not k1 else space.key_add(k1, k2))
            c = c1 * c2
            s = out.get(k)
            out[k] = c if s is None else s + c
    return {k: c for k, c in out.items() if c}


def _ep_diff(a: Dict, gen) -> Dict:
    # solo claves racionales: d(c exp(k)) = (c' + c k') exp(k)
    out: Dict = {}
    for k, c in a.items():
        d = c.diff(gen)
        if k:
            d = d + c * k.diff(gen)
        if d:
            out[k] = d
    return out


def _frac_to_sympy(c: FracElement):
    return c.as_expr()


def _is_rational_keys(a: Dict) -> bool:
    return all(isinstance(k, FracElement) for k in a)


# ------------------ Impresión en la gramática de expresiones ------------------

def _rational_text(q) -> str:
    r = QQ.to_sympy(q)
    return str(r.p) if r.q == 1 else f"{r.p}/{r.q}"


def _poly_text(poly, names) -> str:
    if not poly:
        return "0"
    parts = []
    for monom, coeff in poly.terms():
        factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, monom) if e]
        r = QQ.to_sympy(coeff)
        negative = r < 0
        mag = _rational_text(QQ.from_sympy(abs(r)))
        if factors:
            body = "*".join(factors) if mag == "1" else mag + "*" + "*".join(factors)
        else:
            body = mag
        parts.append(("-" if negative else "+", body))
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sgn, body in parts[1:]:
        text += f" {sgn} {body}"
    return text


def frac_text(c: FracElement, names) -> str:
    num = _poly_text(c.numer, names)
    if c.denom == c.field.ring.one:
        return num
    return f"({num})/({_poly_text(c.denom, names)})"


def _sympy_text(e) -> str:
    text = sympy.sstr(e, order="lex").replace("**", "^")
    return re.sub(r"\bE\b", "exp(1)", text)


class Expr:
    """Escalar inmutable sobre un ``CoefficientSpace``."""

    __slots__ = ("space", "num", "den")

    def __init__(self, space: CoefficientSpace, num: Dict, den: Optional[Dict] = None):
        self.space = space
        self.num = num
        self.den = den

    # ------------------ Construcción ------------------

    @classmethod
    def _make(cls, space, num: Dict, den: Optional[Dict]) -> "Expr":
        if not num:
            return cls(space, {})
        if den is None:
            return cls(space, num)
        if not den:
            raise ZeroDivisionError("denominador nulo")
        if len(den) == 1:
            (k, c), = den.items()
            inv = space.field.one / c
            if not k:
                return cls(space, {kk: cc * inv for kk, cc in num.items()})
            nk = space.key_neg(k)
            return cls(space, _ep_mul(space, num, {nk: inv}))
        return cls(space, num, den)

    @classmethod
    def const(cls, space: CoefficientSpace, value) -> "Expr":
        if isinstance(value, Expr):
            return value
        if isinstance(value, FracElement):
            c = value
        else:
            if isinstance(value, Fraction):
                value = sympy.Rational(value.numerator, value.denominator)
            c = space.field.ground_new(QQ.from_sympy(sympy.Rational(value)))
        return cls(space, {space.zero_key: c} if c else {})

    @classmethod
    def symbol(cls, space: CoefficientSpace, name: str) -> "Expr":
        try:
            return cls(space, {space.zero_key: space.gens[name]})
        except KeyError:
            raise UnknownCoordinateError(f"símbolo desconocido: {name}") from None

    @classmethod
    def from_sympy(cls, space: CoefficientSpace, e) -> "Expr":
        e = sympy.sympify(e)
        if e.is_Rational:
            return cls.const(space, e)
        if e.is_Float:
            return cls.const(space, sympy.nsimplify(e, rational=True))
        if e.is_Symbol:
            if e not in space.by_symbol:
                raise UnknownCoordinateError(f"símbolo desconocido: {e}")
            return cls.symbol(space, space.by_symbol[e])
        if e is sympy.E:
            return cls.const(space, 1).exp()
        if isinstance(e, sympy.exp):
            return cls.from_sympy(space, e.args[0]).exp()
        if e.is_Add:
            out = cls.const(space, 0)
            for a in e.args:
                out = out + cls.from_sympy(space, a)
            return out
        if e.is_Mul:
            out = cls.const(space, 1)
            for a in e.args:
                out = out * cls.from_sympy(space, a)
            return out
        if e.is_Pow and e.exp.is_Integer:
            return cls.from_sympy(space, e.base) ** int(e.exp)
        raise EvaluationError(f"expresión no soportada: {e}")

    # ------------------ Consultas ------------------

    @property
    def is_exact_zero(self) -> bool:
        return not self.num

    @property
    def is_plain(self) -> bool:
        """Función racional sin exponenciales."""
        return self.den is None and all(not k for k in self.num)

    def as_frac(self) -> FracElement:
        if not self.is_plain:
            raise EvaluationError("la expresión contiene exponenciales")
        return self.num.get(self.space.zero_key, self.space.field.zero)

    @property
    def is_canonical(self) -> bool:
        return _is_rational_keys(self.num) and (self.den is None or _is_rational_keys(self.den))

    def _coerce(self, other) -> "Expr":
        if isinstance(other, Expr):
            return other
        return Expr.const(self.space, other)

    # ------------------ Aritmética ------------------

    def __add__(self, other):
        other = self._coerce(other)
        if self.den is None and other.den is None:
            return Expr(self.space, _ep_add(self.num, other.num))
        if self.den == other.den:
            return Expr._make(self.space, _ep_add(self.num, other.num), self.den)
        sd = self.den or {self.space.zero_key: self.space.field.one}
        od = other.den or {self.space.zero_key: self.space.field.one}
        num = _ep_add(_ep_mul(self.space, self.num, od), _ep_mul(self.space, other.num, sd))
        return Expr._make(self.space, num, _ep_mul(self.space, sd, od))

    __radd__ = __add__

    def __neg__(self):
        return Expr(self.space, _ep_neg(self.num), self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        num = _ep_mul(self.space, self.num, other.num)
        if self.den is None and other.den is None:
            return Expr(self.space, num)
        if self.den is None:
            den = other.den
        elif other.den is None:
            den = self.den
        else:
            den = _ep_mul(self.space, self.den, other.den)
        return Expr._make(self.space, num, den)

    __rmul__ = __mul__

    def inverse(self) -> "Expr":
        if not self.num:
            raise NotInvertibleError("inversa de una expresión nula")
        den = self.den if self.den is not None else {self.space.zero_key: self.space.field.one}
        return Expr._make(self.space, den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        n = int(n)
        if n < 0:
            return self.inverse() ** (-n)
        result = Expr.const(self.space, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def exp(self) -> "Expr":
        space = self.space
        if self.is_plain:
            key = self.as_frac()
        else:
            key = space.normalize_key(self.as_sympy())
        return Expr(space, {key: space.field.one})

    def diff(self, name: str) -> "Expr":
        """Derivada parcial respecto de una coordenada base."""
        space = self.space
        if name not in space.gens:
            raise UnknownCoordinateError(f"coordenada desconocida: {name}")
        if not self.is_canonical:
            sym = space.symbols[space.names.index(name)]
            return Expr.from_sympy(space, sympy.diff(self.as_sympy(), sym))
        gen = space.gens[name]
        dnum = _ep_diff(self.num, gen)
        if self.den is None:
            return Expr(space, dnum)
        dden = _ep_diff(self.den, gen)
        num = _ep_add(_ep_mul(space, dnum, self.den), _ep_neg(_ep_mul(space, self.num, dden)))
        return Expr._make(space, num, _ep_mul(space, self.den, self.den))

    # ------------------ Conversión e impresión ------------------

    def _ep_sympy(self, a: Dict):
        return sympy.Add(*[_frac_to_sympy(c) * sympy.exp(self.space.key_sympy(k)) for k, c in a.items()])

    def as_sympy(self):
        num = self._ep_sympy(self.num)
        if self.den is None:
            return num
        return num / self._ep_sympy(self.den)

    def _ep_text(self, a: Dict) -> str:
        names = self.space.names
        terms = []
        for k, c in a.items():
            ct = frac_text(c, names)
            if not k:
                terms.append(ct)
                continue
            kt = frac_text(k, names) if isinstance(k, FracElement) else _sympy_text(k)
            terms.append(f"exp({kt})" if ct == "1" else f"({ct})*exp({kt})")
        if not terms:
            return "0"
        terms.sort()
        return " + ".join(terms)

    def text(self) -> str:
        num = self._ep_text(self.num)
        if self.den is None:
            return num
        return f"({num})/({self._ep_text(self.den)})"

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f"Expr({self.text()})"

    # ------------------ Evaluación ------------------

    def _subs(self, point: Mapping[str, Number]) -> Dict:
        subs = {}
        for name, sym in zip(self.space.names, self.space.symbols):
            if name in point:
                v = point[name]
                if isinstance(v, Fraction):
                    v = sympy.Rational(v.numerator, v.denominator)
                subs[sym] = sympy.sympify(v)
        return subs

    def _eval_frac(self, c: FracElement, subs):
        den = c.denom.as_expr().xreplace(subs)
        if not den.is_number:
            raise EvaluationError(f"faltan valores para evaluar {c.as_expr()}")
        if den == 0:
            raise EvaluationError(f"polo al evaluar el coeficiente {c.as_expr()}")
        return c.numer.as_expr().xreplace(subs) / den

    def evaluate(self, point: Mapping[str, Number]):
        """Valor exacto (Rational) sin exponenciales; float en otro caso."""
        subs = self._subs(point)
        if self.is_plain:
            return self._eval_frac(self.as_frac(), subs)
        num = self._ep_float(self.num, subs)
        if self.den is None:
            return num
        den = self._ep_float(self.den, subs)
        if den == 0.0:
            raise EvaluationError(f"polo al evaluar {self.text()}")
        return num / den

    def _ep_float(self, a: Dict, subs, magnitudes: Optional[list] = None) -> float:
        total = 0.0
        for k, c in a.items():
            cv = float(self._eval_frac(c, subs))
            kv = self.space.key_sympy(k).xreplace(subs) if k else 0
            try:
                term = cv * math.exp(float(kv))
            except OverflowError:
                raise EvaluationError(f"desbordamiento al evaluar exp({kv})") from None
            if magnitudes is not None:
                magnitudes.append(abs(term))
            total += term
        return total

    # ------------------ Test de cero ------------------

    def zero_status(self, settings: Optional[config.ZeroTestSettings] = None) -> ZeroStatus:
        if not self.num:
            return ZeroStatus.SYMBOLIC
        if _is_rational_keys(self.num):
            return ZeroStatus.NONZERO
        return self._numeric_status(settings or config.get_settings())

    def _numeric_status(self, settings: config.ZeroTestSettings) -> ZeroStatus:
        logger.warning("test de cero numérico para %s", self.text())
        for subs in sample_points(self.space, settings, self._pole_free):
            mags: list = []
            value = self._ep_float(self.num, subs, mags)
            scale = max([1.0] + mags)
            if abs(value) > settings.tolerance * scale:
                return ZeroStatus.NONZERO
        return ZeroStatus.NUMERIC

    def _pole_free(self, subs) -> bool:
        try:
            for c in self.num.values():
                self._eval_frac(c, subs)
        except EvaluationError:
            return False
        return True

    def is_zero(self) -> bool:
        return self.zero_status() is not ZeroStatus.NONZERO

    def equals(self, other) -> bool:
        return (self - other).is_zero()


def sample_points(space: CoefficientSpace, settings: config.ZeroTestSettings, accept=None, attempts: int = 50):
    """Genera ``settings.samples`` puntos racionales reproducibles (semilla fija)."""
    rng = np.random.default_rng(settings.seed)
    produced = 0
    tries = 0
    while produced < settings.samples:
        tries += 1
        if tries > settings.samples * attempts:
            raise EvaluationError("no se encontraron puntos de muestra sin polos")
        subs = {
            sym: sympy.Rational(int(rng.integers(-7, 8)), int(rng.integers(8, 14)))
            for sym in space.symbols
        }
        if accept is not None and not accept(subs):
            continue
        logger.debug("punto de muestra %s", subs)
        produced += 1
        yield subs
