"""
Aritmética de grados en Z_2^n.
Incluye:
- Degree: vector de bits empaquetado en un entero
- Producto escalar módulo 2 y signo de Koszul
- Orden canónico de los 2^n grados (cero, pares, impares)
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple

from gradedgeo.errors import DimensionError


@dataclass(frozen=True, order=True)
class Degree:
    """Elemento de Z_2^n. El bit i de la tupla es el bit n-1-i de ``mask``."""
    n: int
    mask: int = 0

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "Degree":
        bits = tuple(bits)
        mask = 0
        for b in bits:
            if b not in (0, 1):
                raise DimensionError(f"bit inválido en grado: {b!r}")
            mask = (mask << 1) | b
        return cls(len(bits), mask)

    @classmethod
    def zero(cls, n: int) -> "Degree":
        return cls(n, 0)

    @property
    def bits(self) -> Tuple[int, ...]:
        return tuple((self.mask >> (self.n - 1 - i)) & 1 for i in range(self.n))

    @property
    def is_zero(self) -> bool:
        return self.mask == 0

    @property
    def parity(self) -> int:
        """Grado total módulo 2."""
        return bin(self.mask).count("1") & 1

    def _check(self, other: "Degree") -> None:
        if self.n != other.n:
            raise DimensionError(f"grados de longitudes distintas: {self.n} y {other.n}")

    def __add__(self, other: "Degree") -> "Degree":
        self._check(other)
        return Degree(self.n, self.mask ^ other.mask)

    def __sub__(self, other: "Degree") -> "Degree":
        return self + other

    def to_json(self) -> List[int]:
        return list(self.bits)

    def __str__(self):
        return "(" + ",".join(str(b) for b in self.bits) + ")"


def scalar_product(a: Degree, b: Degree) -> int:
    """<a,b> = sum a_i b_i mod 2."""
    a._check(b)
    return bin(a.mask & b.mask).count("1") & 1


def koszul_sign(a: Degree, b: Degree) -> int:
    return -1 if scalar_product(a, b) else 1


def sign_of(exponent: int) -> int:
    """(-1)^exponent."""
    return -1 if exponent & 1 else 1


@lru_cache(maxsize=None)
def canonical_degree_order(n: int) -> Tuple[Degree, ...]:
    """Grado cero primero, luego los pares y después los impares, cada bloque en orden lexicográfico."""
    if n < 0:
        raise DimensionError("n debe ser >= 0")
    degrees = [Degree(n, m) for m in range(2 ** n)]
    return tuple(sorted(degrees, key=lambda d: (d.parity, d.bits)))


def degree_slot(d: Degree) -> int:
    """Posición de ``d`` en el orden canónico (0 para el grado cero)."""
    return canonical_degree_order(d.n).index(d)


def parse_degree(bits: Sequence[int], n: int) -> Degree:
    if len(bits) != n:
        raise DimensionError(f"se esperaban {n} bits y se recibieron {len(bits)}")
    return Degree.from_bits(bits)
