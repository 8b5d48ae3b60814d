"""
Analizador descendente recursivo de la gramática de expresiones:

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := '-' factor | base ('^' exponent)?
    base   := number | ident | '(' expr ')' | 'exp' '(' expr ')'

No hay multiplicación implícita. Los números decimales se leen como
racionales exactos y el exponente admite signo: ``x^(-2)`` o ``x^-2``.
"""
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Mapping, Optional

from gradedgeo.errors import SpecSyntaxError, UnknownCoordinateError
from gradedgeo.symkernel.chart import Chart
from gradedgeo.symkernel.series import GradedSeries

_TOKENS = [
    ("NUMBER", r"\d+(?:\.\d*)?|\.\d+"),
    ("IDENT", r"[A-Za-z_][A-Za-z_0-9]*"),
    ("OP", r"[-+*/^()]"),
    ("SPACE", r"\s+"),
]
_REGEX = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in _TOKENS))


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    pos: int


def tokenize(text: str, line: int = 0, column: int = 0) -> List[Token]:
    tokens = []
    index = 0
    while index < len(text):
        match = _REGEX.match(text, index)
        if not match:
            raise SpecSyntaxError(f"carácter inesperado {text[index]!r}", line, column + index + 1)
        if match.lastgroup != "SPACE":
            tokens.append(Token(match.lastgroup, match.group(), index))
        index = match.end()
    tokens.append(Token("END", "", len(text)))
    return tokens


class ExpressionParser:
    """Convierte texto en ``GradedSeries`` sobre una carta."""

    def __init__(self, chart: Chart, names: Optional[Mapping[str, GradedSeries]] = None,
                 line: int = 0, column: int = 0):
        self.chart = chart
        self.names = dict(names or {})
        self.line = line
        self.column = column
        self.tokens: List[Token] = []
        self.index = 0

    def parse(self, text: str) -> GradedSeries:
        self.tokens = tokenize(text, self.line, self.column)
        self.index = 0
        if self.peek("END"):
            self.error("expresión vacía")
        value = self.expr()
        if not self.peek("END"):
            tok = self.current
            self.error(f"se esperaba un operador antes de {tok.value!r}")
        return value

    # ------------------ Utilidades del cursor ------------------

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def error(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.current
        raise SpecSyntaxError(message, self.line, self.column + tok.pos + 1)

    def peek(self, kind: str, value: Optional[str] = None) -> bool:
        tok = self.current
        return tok.kind == kind and (value is None or tok.value == value)

    def accept(self, kind: str, value: Optional[str] = None) -> Optional[Token]:
        if self.peek(kind, value):
            tok = self.current
            self.index += 1
            return tok
        return None

    def expect(self, kind: str, value: Optional[str] = None) -> Token:
        tok = self.accept(kind, value)
        if tok is None:
            found = self.current.value or "fin de la expresión"
            self.error(f"se esperaba {value or kind!r} y se encontró {found!r}")
        return tok

    # ------------------ Reglas ------------------

    def expr(self) -> GradedSeries:
        value = self.term()
        while True:
            if self.accept("OP", "+"):
                value = value + self.term()
            elif self.accept("OP", "-"):
                value = value - self.term()
            else:
                return value

    def term(self) -> GradedSeries:
        value = self.factor()
        while True:
            if self.accept("OP", "*"):
                value = value * self.factor()
            elif self.peek("OP", "/"):
                tok = self.expect("OP", "/")
                divisor = self.factor()
                if not divisor.terms:
                    self.error("división por cero", tok)
                value = value / divisor
            else:
                return value

    def factor(self) -> GradedSeries:
        if self.accept("OP", "-"):
            return -self.factor()
        value = self.base()
        if self.accept("OP", "^"):
            value = value ** self.exponent()
        return value

    def exponent(self) -> int:
        if self.accept("OP", "("):
            negative = bool(self.accept("OP", "-"))
            tok = self.expect("NUMBER")
            self.expect("OP", ")")
        else:
            negative = bool(self.accept("OP", "-"))
            tok = self.expect("NUMBER")
        if not tok.value.isdigit():
            self.error("el exponente debe ser entero", tok)
        n = int(tok.value)
        return -n if negative else n

    def base(self) -> GradedSeries:
        tok = self.current
        if self.accept("NUMBER"):
            return GradedSeries.constant(self.chart, Fraction(tok.value))
        if self.accept("OP", "("):
            value = self.expr()
            self.expect("OP", ")")
            return value
        if self.accept("IDENT"):
            if tok.value == "exp":
                self.expect("OP", "(")
                value = self.expr()
                self.expect("OP", ")")
                return value.exp()
            if tok.value in self.names:
                return self.names[tok.value]
            try:
                return GradedSeries.coordinate(self.chart, tok.value)
            except UnknownCoordinateError:
                self.error(f"identificador desconocido: {tok.value}", tok)
        self.error(f"token inesperado {tok.value or 'fin de la expresión'!r}")


def parse_expression(chart: Chart, text: str, names: Optional[Mapping[str, GradedSeries]] = None,
                     line: int = 0, column: int = 0) -> GradedSeries:
    return ExpressionParser(chart, names, line, column).parse(text)
