"""
Reportes estructurados de verificación.
Cada comprobación produce registros (check, índices, residuo, estado) en lugar
de un booleano, para poder inspeccionar qué componente falla.
"""
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import pandas as pd

from gradedgeo.symkernel.expr import ZeroStatus
from gradedgeo.symkernel.series import GradedSeries


@dataclass(frozen=True)
class CheckRecord:
    check: str
    indices: Tuple[str, ...]
    residue: str
    status: ZeroStatus

    @property
    def passed(self) -> bool:
        return self.status.is_zero

    def to_dict(self) -> Dict:
        return {
            "check": self.check,
            "indices": list(self.indices),
            "residue": self.residue,
            "status": self.status.value,
        }


@dataclass
class CheckReport:
    name: str
    records: List[CheckRecord] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def add(self, check: str, indices: Sequence[str], residue: GradedSeries) -> CheckRecord:
        status = residue.zero_status()
        text = "0" if status is ZeroStatus.SYMBOLIC else residue.text()
        record = CheckRecord(check, tuple(indices), text, status)
        self.records.append(record)
        return record

    def add_flag(self, check: str, indices: Sequence[str], ok: bool, detail: str = "") -> CheckRecord:
        """Registro de una condición booleana (p. ej. una regla de dimensiones)."""
        status = ZeroStatus.SYMBOLIC if ok else ZeroStatus.NONZERO
        record = CheckRecord(check, tuple(indices), detail or ("ok" if ok else "falla"), status)
        self.records.append(record)
        return record

    def extend(self, other: "CheckReport") -> "CheckReport":
        self.records.extend(other.records)
        self.notes.extend(other.notes)
        return self

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def failures(self) -> List[CheckRecord]:
        return [r for r in self.records if not r.passed]

    def counts(self) -> Dict[str, int]:
        out = {s.value: 0 for s in ZeroStatus}
        for r in self.records:
            out[r.status.value] += 1
        return out

    def to_frame(self) -> pd.DataFrame:
        rows = [
            {"check": r.check, "indices": ",".join(r.indices), "residue": r.residue, "status": r.status.value}
            for r in self.records
        ]
        return pd.DataFrame(rows, columns=["check", "indices", "residue", "status"])

    def to_dict(self) -> Dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "counts": self.counts(),
            "notes": list(self.notes),
            "records": [r.to_dict() for r in self.records],
        }


def merge_reports(name: str, reports: Iterable[CheckReport]) -> CheckReport:
    out = CheckReport(name)
    for rep in reports:
        out.extend(rep)
    return out


def summarize(report: CheckReport, limit: Optional[int] = None) -> str:
    """Texto breve para la salida legible: resumen y registros que fallan."""
    counts = report.counts()
    lines = [
        f"{report.name}: {'OK' if report.passed else 'FALLA'} "
        f"({counts['symbolic-zero']} simbólicos, {counts['numeric-zero']} numéricos, "
        f"{counts['indeterminate']} indeterminados, {counts['nonzero']} no nulos)"
    ]
    failures = report.failures
    for r in failures[:limit] if limit else failures:
        lines.append(f"  {r.check}[{','.join(r.indices)}] = {r.residue}")
    lines.extend(f"  nota: {n}" for n in report.notes)
    return "\n".join(lines)
