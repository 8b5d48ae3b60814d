"""
Cartas locales de una Z_2^n-variedad.
Incluye:
- Coordenadas base (grado cero), generadores formales graduados y parámetros
- Orden fijo de índices: base, luego generadores agrupados por grado canónico
- Tablas cacheadas de producto y derivada de monomios (signo de Koszul)
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Optional, Sequence, Tuple

from gradedgeo import config
from gradedgeo.errors import DimensionError, UnknownCoordinateError
from gradedgeo.grading import Degree, canonical_degree_order, degree_slot, scalar_product
from gradedgeo.symkernel.expr import CoefficientSpace, coefficient_space

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]

# Resultado de mono_mul cuando el producto excede el orden de truncamiento
DROPPED = object()


@dataclass(frozen=True)
class Generator:
    name: str
    degree: Degree

    @property
    def nilpotent(self) -> bool:
        """Los generadores con <g,g> = 1 cuadran a cero."""
        return scalar_product(self.degree, self.degree) == 1


class Chart:
    """Carta con coordenadas x^I = (x^a, xi^A)."""

    def __init__(self, n: int, base: Sequence[str], formal: Iterable[Tuple[str, Degree]] = (),
                 params: Sequence[str] = (), trunc_order: Optional[int] = None, name: str = ""):
        if n < 0:
            raise DimensionError("n debe ser >= 0")
        self.n = n
        self.name = name
        self.trunc_order = config.TRUNC_ORDER if trunc_order is None else int(trunc_order)
        if self.trunc_order < 0:
            raise DimensionError("el orden de truncamiento debe ser >= 0")
        gens = []
        for gname, deg in formal:
            if deg.n != n:
                raise DimensionError(f"el grado de {gname} tiene {deg.n} bits; la carta usa n={n}")
            if deg.is_zero:
                raise DimensionError(f"el generador {gname} debe tener grado no nulo")
            gens.append(Generator(gname, deg))
        # orden estable por posición canónica del grado
        gens.sort(key=lambda g: degree_slot(g.degree))
        self.base = tuple(base)
        self.generators = tuple(gens)
        self.params = tuple(params)
        names = self.base + tuple(g.name for g in self.generators) + self.params
        seen = set()
        for nm in names:
            if nm in seen:
                raise DimensionError(f"nombre repetido en la carta: {nm}")
            if nm == "exp":
                raise DimensionError("'exp' es un nombre reservado")
            seen.add(nm)
        self.coordinates = self.base + tuple(g.name for g in self.generators)
        self.index_degrees = tuple([Degree.zero(n)] * len(self.base) + [g.degree for g in self.generators])
        self.dimension = len(self.coordinates)
        self.p = len(self.base)
        self._index = {nm: i for i, nm in enumerate(self.coordinates)}
        self.space: CoefficientSpace = coefficient_space(self.base + self.params)
        self.nilpotent = tuple(g.nilpotent for g in self.generators)
        ng = len(self.generators)
        self._pair = tuple(
            tuple(scalar_product(a.degree, b.degree) for b in self.generators) for a in self.generators
        )
        self.unit: Monomial = (0,) * ng
        self._mul_cache: Dict[Tuple[Monomial, Monomial], object] = {}
        self._derive_cache: Dict[Tuple[int, Monomial], object] = {}

    # ------------------ Identidad ------------------

    @property
    def signature(self):
        return (self.n, self.base, tuple((g.name, g.degree.mask) for g in self.generators),
                self.params, self.trunc_order)

    def __eq__(self, other):
        return isinstance(other, Chart) and self.signature == other.signature

    def __hash__(self):
        return hash(self.signature)

    def __repr__(self):
        return f"Chart(n={self.n}, {self.dimension_label()}, coords={list(self.coordinates)})"

    # ------------------ Índices ------------------

    def index_of(self, coord) -> int:
        if isinstance(coord, int):
            if not 0 <= coord < self.dimension:
                raise UnknownCoordinateError(f"índice fuera de rango: {coord}")
            return coord
        try:
            return self._index[coord]
        except KeyError:
            raise UnknownCoordinateError(f"coordenada desconocida: {coord}") from None

    def degree_of(self, coord) -> Degree:
        return self.index_degrees[self.index_of(coord)]

    def is_generator(self, idx: int) -> bool:
        return idx >= self.p

    def q_counts(self) -> Tuple[int, ...]:
        """Cantidad de coordenadas en cada posición del orden canónico (posición 0 = p)."""
        counts = [0] * len(canonical_degree_order(self.n))
        for d in self.index_degrees:
            counts[degree_slot(d)] += 1
        return tuple(counts)

    def dimension_label(self) -> str:
        counts = self.q_counts()
        return f"{counts[0]}|" + ",".join(str(c) for c in counts[1:])

    # ------------------ Monomios ------------------

    def gen_monomial(self, k: int) -> Monomial:
        m = [0] * len(self.generators)
        m[k] = 1
        return tuple(m)

    def mono_weight(self, m: Monomial) -> int:
        """Potencia total de generadores no nilpotentes."""
        return sum(e for e, nil in zip(m, self.nilpotent) if not nil)

    @lru_cache(maxsize=None)
    def mono_degree(self, m: Monomial) -> Degree:
        mask = 0
        for e, g in zip(m, self.generators):
            if e & 1:
                mask ^= g.degree.mask
        return Degree(self.n, mask)

    def mono_mul(self, a: Monomial, b: Monomial):
        """None si el producto se anula, DROPPED si supera el truncamiento, si no (signo, monomio)."""
        key = (a, b)
        hit = self._mul_cache.get(key)
        if hit is not None:
            return None if hit is _ZERO else hit
        result = self._mono_mul(a, b)
        self._mul_cache[key] = _ZERO if result is None else result
        return result

    def _mono_mul(self, a: Monomial, b: Monomial):
        c = tuple(x + y for x, y in zip(a, b))
        for e, nil in zip(c, self.nilpotent):
            if nil and e > 1:
                return None
        if self.mono_weight(c) > self.trunc_order:
            return DROPPED
        # signo de llevar cada generador de b a la izquierda de los de a con índice mayor
        parity = 0
        ng = len(c)
        for i in range(ng):
            if not a[i]:
                continue
            for j in range(i):
                if b[j]:
                    parity += a[i] * b[j] * self._pair[i][j]
        return (-1 if parity & 1 else 1, c)

    def mono_derive(self, k: int, m: Monomial):
        """Derivada izquierda respecto del generador k: (factor entero, monomio) o None."""
        key = (k, m)
        hit = self._derive_cache.get(key)
        if hit is not None:
            return None if hit is _ZERO else hit
        if not m[k]:
            result = None
        else:
            parity = sum(m[i] * self._pair[k][i] for i in range(k))
            factor = (-1 if parity & 1 else 1) * m[k]
            new = list(m)
            new[k] -= 1
            result = (factor, tuple(new))
        self._derive_cache[key] = _ZERO if result is None else result
        return result

    def monomials_up_to(self, weight: int):
        """Todos los monomios admitidos con peso <= weight (base de funciones de prueba)."""
        out = [self.unit]
        for k, nil in enumerate(self.nilpotent):
            top = 1 if nil else weight
            extended = []
            for m in out:
                for e in range(top + 1):
                    cand = m[:k] + (e,) + m[k + 1:]
                    if self.mono_weight(cand) <= weight:
                        extended.append(cand)
            out = extended
        return sorted(set(out), key=lambda m: (self.mono_weight(m), sum(m), m))

    def mono_text(self, m: Monomial) -> str:
        parts = []
        for e, g in zip(m, self.generators):
            if e == 1:
                parts.append(g.name)
            elif e > 1:
                parts.append(f"{g.name}^{e}")
        return "*".join(parts)


_ZERO = object()
