"""
Lectura y escritura de archivos de carta.

Formato orientado a líneas con secciones ``[chart]``, ``[metric]`` y
``[fields]`` y entradas ``clave = valor``; ``#`` inicia un comentario.

    [chart]
    name = g0
    n = 2
    trunc = 4
    base = x
    formal = z[1,1], xi[0,1], eta[1,0]
    params = k

    [metric]
    degree = [1,1]
    g[x,z] = 1
    g[eta,xi] = 1

    [fields]
    f = x^2*z
    X[x] = 1
"""
import logging
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from gradedgeo.errors import DegreeError, DimensionError, SpecSyntaxError, UnknownCoordinateError
from gradedgeo.grading import Degree, parse_degree, scalar_product, sign_of
from gradedgeo.symkernel.chart import Chart
from gradedgeo.symkernel.parser import parse_expression
from gradedgeo.symkernel.series import GradedSeries
from gradedgeo.geometry.types import MetricTensor, VectorField

logger = logging.getLogger(__name__)

SECTIONS = ("chart", "metric", "fields")

_NAME = r"[A-Za-z_][A-Za-z_0-9]*"
_SECTION_RE = re.compile(r"^\[(\w+)\]$")
_INDEXED_RE = re.compile(rf"^({_NAME})\s*\[\s*({_NAME})\s*(?:,\s*({_NAME})\s*)?\]$")
_FORMAL_RE = re.compile(rf"^({_NAME})\s*\[([^\]]*)\]$")
_BITS_RE = re.compile(r"^\[\s*([01](?:\s*,\s*[01])*)?\s*\]$")


@dataclass
class ManifoldSpec:
    """Carta, métrica y campos con nombre leídos de un archivo."""
    chart: Chart
    metric_degree: Degree
    metric_entries: Dict[Tuple[str, str], str] = field(default_factory=dict)
    functions: Dict[str, str] = field(default_factory=dict)
    vectors: Dict[str, Dict[str, str]] = field(default_factory=dict)
    metric: Optional[MetricTensor] = None
    function_series: Dict[str, GradedSeries] = field(default_factory=dict)
    vector_fields: Dict[str, VectorField] = field(default_factory=dict)

    @property
    def name(self) -> str:
        return self.chart.name

    def function(self, name_or_expr: str) -> GradedSeries:
        """Función declarada o, si no existe, expresión sobre la carta."""
        if name_or_expr in self.function_series:
            return self.function_series[name_or_expr]
        return parse_expression(self.chart, name_or_expr, self.function_series)

    def vector(self, name: str) -> VectorField:
        try:
            return self.vector_fields[name]
        except KeyError:
            raise UnknownCoordinateError(f"campo vectorial no declarado: {name}") from None


# ------------------ Lectura ------------------

def _strip_comment(raw: str) -> str:
    return raw.split("#", 1)[0].rstrip()


def _split_entry(raw: str, lineno: int) -> Tuple[str, str, int]:
    if "=" not in raw:
        raise SpecSyntaxError("se esperaba 'clave = valor'", lineno, len(raw.strip()) + 1)
    key, value = raw.split("=", 1)
    offset = len(key) + 1 + (len(value) - len(value.lstrip()))
    return key.strip(), value.strip(), offset


def _parse_bits(text: str, n: int, lineno: int, column: int) -> Degree:
    match = _BITS_RE.match(text.strip())
    if not match:
        raise SpecSyntaxError(f"grado mal formado: {text!r}", lineno, column)
    bits = [int(b) for b in match.group(1).replace(" ", "").split(",")] if match.group(1) else []
    try:
        return parse_degree(bits, n)
    except DimensionError as exc:
        raise SpecSyntaxError(str(exc), lineno, column) from None


def _name_list(value: str) -> List[str]:
    return [v.strip() for v in value.split(",") if v.strip()]


def _split_formal(value: str) -> List[str]:
    items, depth, current = [], 0, ""
    for ch in value:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            items.append(current)
            current = ""
        else:
            current += ch
    if current.strip():
        items.append(current)
    return [i.strip() for i in items if i.strip()]


def _build_chart(entries: Dict[str, Tuple[str, int, int]], trunc: Optional[int]) -> Chart:
    if "n" not in entries:
        raise SpecSyntaxError("falta la clave 'n' en [chart]", 1, 1)
    value, lineno, col = entries["n"]
    if not value.isdigit():
        raise SpecSyntaxError(f"n debe ser un entero no negativo: {value!r}", lineno, col)
    n = int(value)
    if trunc is None and "trunc" in entries:
        value, lineno, col = entries["trunc"]
        if not value.isdigit():
            raise SpecSyntaxError(f"trunc debe ser un entero no negativo: {value!r}", lineno, col)
        trunc = int(value)
    base = _name_list(entries.get("base", ("", 0, 0))[0])
    formal = []
    if "formal" in entries:
        value, lineno, col = entries["formal"]
        for item in _split_formal(value):
            match = _FORMAL_RE.match(item)
            if not match:
                raise SpecSyntaxError(f"coordenada formal mal formada: {item!r}", lineno, col + value.find(item))
            formal.append((match.group(1), _parse_bits(f"[{match.group(2)}]", n, lineno, col + value.find(item))))
    params = _name_list(entries.get("params", ("", 0, 0))[0])
    name = entries.get("name", ("", 0, 0))[0]
    try:
        return Chart(n, base, formal, params, trunc, name)
    except DimensionError as exc:
        raise SpecSyntaxError(str(exc), entries.get("formal", entries["n"])[1], 1) from None


def parse_spec(text: str, trunc: Optional[int] = None) -> ManifoldSpec:
    """Lee un archivo de carta; los errores llevan línea y columna (base 1)."""
    section = None
    raw_sections: Dict[str, List[Tuple[str, str, int, int]]] = {s: [] for s in SECTIONS}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        match = _SECTION_RE.match(line.strip())
        if match:
            section = match.group(1)
            if section not in SECTIONS:
                raise SpecSyntaxError(f"sección desconocida: [{section}]", lineno, raw.find("[") + 1)
            continue
        if section is None:
            raise SpecSyntaxError("entrada fuera de una sección", lineno, 1)
        indent = len(line) - len(line.lstrip())
        key, value, offset = _split_entry(line.lstrip(), lineno)
        raw_sections[section].append((key, value, lineno, indent + offset + 1))

    chart_entries = {}
    for key, value, lineno, col in raw_sections["chart"]:
        if key not in ("name", "n", "trunc", "base", "formal", "params"):
            raise SpecSyntaxError(f"clave desconocida en [chart]: {key}", lineno, 1)
        if key in chart_entries:
            first = chart_entries[key][1]
            raise SpecSyntaxError(f"clave repetida en [chart]: {key} (ya definida en la línea {first})", lineno, 1)
        chart_entries[key] = (value, lineno, col)
    chart = _build_chart(chart_entries, trunc)
    spec = ManifoldSpec(chart, Degree.zero(chart.n))

    series_entries: Dict[Tuple[str, str], Tuple[GradedSeries, int]] = {}
    for key, value, lineno, col in raw_sections["metric"]:
        if key == "degree":
            spec.metric_degree = _parse_bits(value, chart.n, lineno, col)
            continue
        match = _INDEXED_RE.match(key)
        if not match or match.group(1) != "g" or match.group(3) is None:
            raise SpecSyntaxError(f"se esperaba g[I,J]: {key!r}", lineno, 1)
        a, b = match.group(2), match.group(3)
        for coord in (a, b):
            if coord not in chart.coordinates:
                raise SpecSyntaxError(f"coordenada desconocida: {coord}", lineno, _key_column(key, coord))
        series = parse_expression(chart, value, line=lineno, column=col - 1)
        if (a, b) in series_entries:
            expected = series_entries[(a, b)][0]
        elif (b, a) in series_entries:
            degs = chart.index_degrees
            sign = sign_of(scalar_product(degs[chart.index_of(a)], degs[chart.index_of(b)]))
            expected = series_entries[(b, a)][0].scale(sign)
        else:
            expected = None
        if expected is not None:
            if not (series - expected).is_zero():
                raise SpecSyntaxError(f"entradas contradictorias para g[{a},{b}] y g[{b},{a}]", lineno, 1)
            continue
        series_entries[(a, b)] = (series, lineno)
        spec.metric_entries[(a, b)] = value

    field_lines: Dict[Tuple[str, str], Tuple[int, int]] = {}
    for key, value, lineno, col in raw_sections["fields"]:
        match = _INDEXED_RE.match(key)
        if match and match.group(3) is None:
            vname, coord = match.group(1), match.group(2)
            if coord not in chart.coordinates:
                raise SpecSyntaxError(f"coordenada desconocida: {coord}", lineno, _key_column(key, coord))
            field_lines[(vname, coord)] = (lineno, col)
            spec.vectors.setdefault(vname, {})[coord] = value
            continue
        if not re.fullmatch(_NAME, key):
            raise SpecSyntaxError(f"nombre de campo inválido: {key!r}", lineno, 1)
        if key in chart.coordinates or key in chart.params:
            raise SpecSyntaxError(f"el nombre {key} ya es una coordenada o parámetro", lineno, 1)
        spec.function_series[key] = parse_expression(chart, value, spec.function_series, lineno, col - 1)
        spec.functions[key] = value

    # los campos vectoriales se resuelven al final: pueden usar cualquier función declarada
    for vname, comps in spec.vectors.items():
        parsed = {}
        for coord, value in comps.items():
            lineno, col = field_lines[(vname, coord)]
            parsed[coord] = parse_expression(chart, value, spec.function_series, lineno, col - 1)
        try:
            spec.vector_fields[vname] = VectorField.from_components(chart, parsed)
        except DegreeError as exc:
            first = field_lines[(vname, next(iter(comps)))]
            raise SpecSyntaxError(f"campo {vname}: {exc}", first[0], 1) from None

    spec.metric = MetricTensor.from_entries(chart, spec.metric_degree,
                                            {k: s for k, (s, _) in series_entries.items()})
    logger.info("carta %s leída: %s, métrica de grado %s", chart.name or "(sin nombre)",
                chart.dimension_label(), spec.metric_degree)
    return spec


def _key_column(key: str, coord: str) -> int:
    return key.find(coord, key.find("[")) + 1


def load_spec(path: str, trunc: Optional[int] = None) -> ManifoldSpec:
    with open(path, "r", encoding="utf-8") as fh:
        spec = parse_spec(fh.read(), trunc)
    if not spec.chart.name:
        spec.chart.name = path.rsplit("/", 1)[-1].rsplit(".", 1)[0]
    return spec


# ------------------ Escritura ------------------

def _bits_text(d: Degree) -> str:
    return "[" + ",".join(str(b) for b in d.bits) + "]"


def dump_spec(spec: ManifoldSpec) -> str:
    """Serializa la especificación; ``parse_spec(dump_spec(s))`` reproduce ``s``."""
    chart = spec.chart
    lines = ["[chart]"]
    if chart.name:
        lines.append(f"name = {chart.name}")
    lines.append(f"n = {chart.n}")
    lines.append(f"trunc = {chart.trunc_order}")
    lines.append(f"base = {', '.join(chart.base)}")
    lines.append("formal = " + ", ".join(f"{g.name}{_bits_text(g.degree)}" for g in chart.generators))
    if chart.params:
        lines.append(f"params = {', '.join(chart.params)}")
    lines.append("")
    lines.append("[metric]")
    lines.append(f"degree = {_bits_text(spec.metric_degree)}")
    for (a, b), value in spec.metric_entries.items():
        lines.append(f"g[{a},{b}] = {value}")
    if spec.functions or spec.vectors:
        lines.append("")
        lines.append("[fields]")
        for fname, value in spec.functions.items():
            lines.append(f"{fname} = {value}")
        for vname, comps in spec.vectors.items():
            for coord, value in comps.items():
                lines.append(f"{vname}[{coord}] = {value}")
    return "\n".join(lines) + "\n"


def spec_from_metric(m: MetricTensor) -> ManifoldSpec:
    """Especificación de una métrica construida (producto o producto deformado)."""
    chart = m.chart
    entries = {}
    for i in range(chart.dimension):
        for j in range(i, chart.dimension):
            s = m.components.entries[i, j]
            if s.terms:
                entries[(chart.coordinates[i], chart.coordinates[j])] = s.text()
    return ManifoldSpec(chart, m.degree, entries, metric=m)
