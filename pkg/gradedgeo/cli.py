"""
Interfaz de línea de comandos.

    python -m gradedgeo <comando> [argumento] --spec carta.spec [--json] [--trunc k]
                        [--seed s] [--tolerance t] [--second otra.spec] [--save] [-v]

Códigos de salida: 0 todas las comprobaciones pasan, 1 alguna es no nula,
2 error de sintaxis o de uso, 3 precondición matemática no satisfecha.
"""
import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from gradedgeo import config
from gradedgeo.constructions import cartesian_product, warped_product
from gradedgeo.errors import GradedGeoError, SpecSyntaxError, UnknownCoordinateError
from gradedgeo.gradedlinalg import inverse_identity_check, inverse_symmetry_check
from gradedgeo.reports import CheckReport, summarize
from gradedgeo.specfile import ManifoldSpec, dump_spec, load_spec, spec_from_metric
from gradedgeo.suites import full_report, odd_scalar_check
from gradedgeo.symkernel.parser import parse_expression
from gradedgeo.geometry import (
    bianchi_first,
    bianchi_second,
    check_metric_compatibility,
    christoffel,
    divergence,
    einstein_check,
    gradient,
    gradient_defining_check,
    killing_check,
    laplacian,
    lie_derivative_metric,
    odd_laplacian_check,
    ricci,
    ricci_scalar,
    ricci_symmetry_check,
    riemann,
    riemann_antisymmetry_check,
    torsion_check,
    validate_metric,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NONZERO = 1
EXIT_USAGE = 2
EXIT_PRECONDITION = 3

COMMANDS = (
    "validate", "inverse", "christoffel", "riemann", "ricci", "scalar", "laplacian", "gradient",
    "divergence", "lie", "killing", "bianchi", "compat", "einstein", "product", "warp", "report",
)
NEEDS_ARGUMENT = ("laplacian", "gradient", "divergence", "lie", "killing", "einstein", "warp")
NEEDS_SECOND = ("product", "warp")


class UsageError(GradedGeoError, ValueError):
    """Comando mal invocado (falta un argumento o una segunda carta)."""


@dataclass
class CommandResult:
    command: str
    payload: Dict = field(default_factory=dict)
    reports: List[CheckReport] = field(default_factory=list)
    text: str = ""

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.passed else EXIT_NONZERO

    def to_dict(self) -> Dict:
        return {
            "command": self.command,
            "passed": self.passed,
            "result": self.payload,
            "reports": [r.to_dict() for r in self.reports],
        }

    def render(self) -> str:
        parts = [self.text] if self.text else []
        parts.extend(summarize(r, limit=20) for r in self.reports)
        return "\n".join(parts)


def _table(mapping: Dict[str, str], empty: str = "todas las componentes son nulas") -> str:
    if not mapping:
        return empty
    return "\n".join(f"[{k}] = {v}" for k, v in sorted(mapping.items()))


# ------------------ Comandos ------------------

def run_command(spec: ManifoldSpec, command: str, argument: Optional[str] = None,
                second: Optional[ManifoldSpec] = None) -> CommandResult:
    """Ejecuta un comando sobre la carta y devuelve el documento de resultado."""
    if command not in COMMANDS:
        raise UsageError(f"comando desconocido: {command}")
    if command in NEEDS_ARGUMENT and not argument:
        raise UsageError(f"el comando {command} necesita un argumento")
    if command in NEEDS_SECOND and second is None:
        raise UsageError(f"el comando {command} necesita --second")
    m = spec.metric
    result = CommandResult(command)
    logger.info("comando %s sobre %s", command, spec.name or "(sin nombre)")

    if command == "validate":
        result.reports.append(validate_metric(m))
    elif command == "inverse":
        ginv = m.inverse
        result.payload["inverse"] = ginv.to_json()
        result.text = _table(result.payload["inverse"])
        result.reports += [inverse_symmetry_check(m.components, ginv), inverse_identity_check(m.components, ginv)]
    elif command == "christoffel":
        result.payload["christoffel"] = christoffel(m).to_json()
        result.text = _table(result.payload["christoffel"])
    elif command == "riemann":
        result.payload["riemann"] = riemann(christoffel(m)).to_json()
        result.text = _table(result.payload["riemann"])
    elif command == "ricci":
        c = christoffel(m)
        ric = ricci(c, riemann(c))
        result.payload["ricci"] = ric.to_json()
        result.text = _table(result.payload["ricci"])
        result.reports.append(ricci_symmetry_check(ric))
    elif command == "scalar":
        c = christoffel(m)
        s = ricci_scalar(m, ricci(c, riemann(c)))
        status = s.zero_status()
        result.payload["scalar"] = "0" if not s.terms else s.text()
        result.payload["status"] = status.value
        result.text = f"S = {result.payload['scalar']}  ({status.value})"
        if m.is_odd:
            result.reports.append(odd_scalar_check(m, s))
    elif command == "laplacian":
        f = spec.function(argument)
        c = christoffel(m)
        value = laplacian(m, c, f)
        result.payload["laplacian"] = value.text()
        result.payload["status"] = value.zero_status().value
        result.text = f"Delta {argument} = {value.text()}"
        if m.is_odd:
            result.reports.append(odd_laplacian_check(m, c, [(argument, f)]))
    elif command == "gradient":
        f = spec.function(argument)
        grad = gradient(m, f)
        result.payload["gradient"] = grad.to_json()
        result.payload["degree"] = grad.degree.to_json()
        result.text = _table(result.payload["gradient"])
        result.reports.append(gradient_defining_check(m, f))
    elif command == "divergence":
        value = divergence(m, christoffel(m), spec.vector(argument))
        result.payload["divergence"] = value.text()
        result.payload["status"] = value.zero_status().value
        result.text = f"Div {argument} = {value.text()}"
    elif command == "lie":
        lx = lie_derivative_metric(m, spec.vector(argument))
        result.payload["lie"] = lx.to_json()
        result.text = _table(result.payload["lie"])
    elif command == "killing":
        result.reports.append(killing_check(m, spec.vector(argument)))
    elif command == "bianchi":
        c = christoffel(m)
        r = riemann(c)
        result.reports += [riemann_antisymmetry_check(r), bianchi_first(r), bianchi_second(c, r)]
    elif command == "compat":
        c = christoffel(m)
        result.reports += [torsion_check(c), check_metric_compatibility(m, c)]
    elif command == "einstein":
        kappa = spec.function(argument)
        c = christoffel(m)
        result.reports.append(einstein_check(m, ricci(c, riemann(c)), kappa))
    elif command == "product":
        merged = cartesian_product(m, second.metric)
        _construction_result(result, merged)
    elif command == "warp":
        mu = parse_expression(spec.chart, argument, spec.function_series)
        merged = warped_product(m, second.metric, mu)
        _construction_result(result, merged)
    elif command == "report":
        result.reports += full_report(m)
    return result


def _construction_result(result: CommandResult, merged) -> None:
    text = dump_spec(spec_from_metric(merged))
    result.payload["spec"] = text
    result.text = text.rstrip("\n")
    result.reports.append(validate_metric(merged))


# ------------------ Punto de entrada ------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gradedgeo",
                                     description="Geometría riemanniana simbólica sobre Z_2^n-variedades.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("argument", nargs="?", help="función, campo o expresión según el comando")
    parser.add_argument("--spec", required=True, help="archivo de carta")
    parser.add_argument("--second", help="segunda carta (product, warp)")
    parser.add_argument("--json", action="store_true", help="salida JSON con claves ordenadas")
    parser.add_argument("--trunc", type=int, help="orden de truncamiento")
    parser.add_argument("--seed", type=int, help="semilla del test de cero numérico")
    parser.add_argument("--tolerance", type=float, help="tolerancia del test de cero numérico")
    parser.add_argument("--save", action="store_true", help="guardar la ejecución en el historial")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    return parser


def _emit_error(args, code: int, payload: Dict) -> int:
    payload = dict(payload, exit_code=code)
    if args.json:
        print(json.dumps(payload, sort_keys=True, ensure_ascii=False), file=sys.stderr)
    elif payload.get("line"):
        print(f"error: línea {payload['line']}, columna {payload['column']}: {payload['message']}", file=sys.stderr)
    else:
        print(f"error: {payload.get('message')}", file=sys.stderr)
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    config.setup_logging(args.verbose)
    config.configure(tolerance=args.tolerance, seed=args.seed)
    try:
        spec = load_spec(args.spec, args.trunc)
        second = load_spec(args.second, args.trunc) if args.second else None
        result = run_command(spec, args.command, args.argument, second)
    except SpecSyntaxError as exc:
        return _emit_error(args, EXIT_USAGE, exc.to_dict())
    except (UsageError, UnknownCoordinateError, OSError) as exc:
        return _emit_error(args, EXIT_USAGE, {"error": "usage", "message": str(exc)})
    except GradedGeoError as exc:
        return _emit_error(args, EXIT_PRECONDITION, {"error": type(exc).__name__, "message": str(exc)})

    if args.json:
        print(json.dumps(result.to_dict(), sort_keys=True, ensure_ascii=False, indent=2))
    else:
        print(result.render())
    if args.save:
        from gradedgeo.db import registrar_verificacion
        registrar_verificacion(spec.name, args.command, result.reports, result.payload)
    return result.exit_code
