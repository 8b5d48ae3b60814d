"""Excepciones del motor de geometría graduada."""


class GradedGeoError(Exception):
    """Base de todos los errores del paquete."""


class DimensionError(GradedGeoError, ValueError):
    """Grados de distinta longitud n."""


class ChartMismatchError(GradedGeoError, ValueError):
    """Operandos definidos sobre cartas distintas."""


class UnknownCoordinateError(GradedGeoError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class NotInvertibleError(GradedGeoError, ArithmeticError):
    """Cuerpo idénticamente nulo: la serie no tiene inversa."""


class NonDegeneracyError(GradedGeoError, ArithmeticError):
    """El cuerpo de la métrica es singular."""


class VarianceError(GradedGeoError, ValueError):
    pass


class DegreeError(GradedGeoError, ValueError):
    """Violación de una regla de grado (homogeneidad, métrica de grado no nulo, ...)."""


class EvaluationError(GradedGeoError, ArithmeticError):
    """Polo al evaluar un coeficiente."""


class ConstructionError(GradedGeoError, ValueError):
    """Precondición de producto o producto deformado no satisfecha."""


class SpecSyntaxError(GradedGeoError, ValueError):
    """Error de sintaxis con posición (línea y columna, base 1)."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column

    def __str__(self):
        if self.line:
            return f"línea {self.line}, columna {self.column}: {self.message}"
        return self.message

    def to_dict(self) -> dict:
        return {"error": "syntax", "message": self.message, "line": self.line, "column": self.column}
