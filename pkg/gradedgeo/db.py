"""
Historial de verificaciones (DuckDB).
Incluye:
- Esquema de BD (verificaciones)
- Registro de una ejecución con su resumen en JSON
- Consulta del historial como DataFrame
"""
import os
import json
from datetime import date, datetime
from typing import Any, Iterable, Optional

import duckdb
import pandas as pd

from gradedgeo import config
from gradedgeo.reports import CheckReport, merge_reports

# Conexión única por proceso
_con = None
_con_path = None

# ------------------ Utilidades internas ------------------

def _serialize_for_json(obj: Any) -> Any:
    """
    Convierte objetos no serializables a formatos JSON compatibles.
    Maneja Timestamp de pandas, datetime, date, etc.
    """
    if isinstance(obj, dict):
        return {k: _serialize_for_json(v) for k, v in obj.items()}
    elif isinstance(obj, (list, tuple)):
        return [_serialize_for_json(item) for item in obj]
    elif isinstance(obj, (pd.Timestamp, datetime, date)):
        return obj.isoformat()
    elif isinstance(obj, pd.DataFrame):
        return obj.to_dict('records')
    elif obj is None or isinstance(obj, (str, int, float, bool)):
        return obj
    else:
        return str(obj)


def get_con(path: Optional[str] = None):
    """Conexión compartida; ``path`` (o GRADEDGEO_DB_PATH) solo se usa al abrirla."""
    global _con, _con_path
    path = path or config.DB_PATH
    if _con is not None and _con_path != path:
        _con.close()
        _con = None
    if _con is None:
        if path != ":memory:" and os.path.dirname(path):
            os.makedirs(os.path.dirname(path), exist_ok=True)
        _con = duckdb.connect(path)
        _con_path = path
        _con.execute("PRAGMA threads=4;")
        init_db(_con)
    return _con


# ------------------ Inicialización de BD ------------------

def init_db(con=None):
    """Crea la tabla de verificaciones si no existe."""
    con = con or get_con()
    con.execute(
        """
        CREATE TABLE IF NOT EXISTS verificaciones (
            id INTEGER PRIMARY KEY,
            ts TIMESTAMP NOT NULL,
            carta VARCHAR NOT NULL,
            comando VARCHAR NOT NULL,
            aprobado BOOLEAN NOT NULL,
            simbolicos INTEGER NOT NULL,
            numericos INTEGER NOT NULL,
            no_nulos INTEGER NOT NULL,
            resumen_json VARCHAR
        );
        """
    )
    _init_sequence(con, "seq_verificaciones", "verificaciones")


def _init_sequence(con, seq_name: str, table_name: str) -> None:
    """Crea la secuencia a partir del MAX(id) de la tabla."""
    con.execute(f"DROP SEQUENCE IF EXISTS {seq_name};")
    max_id = con.execute(f"SELECT COALESCE(MAX(id), 0) FROM {table_name}").fetchone()[0]
    con.execute(f"CREATE SEQUENCE {seq_name} START {max_id + 1};")


# ------------------ Verificaciones ------------------

def registrar_verificacion(carta: str, comando: str, reports: Iterable[CheckReport],
                           extra: Optional[dict] = None, con=None) -> int:
    """Guarda una ejecución y devuelve su id."""
    con = con or get_con()
    merged = merge_reports(comando, reports)
    counts = merged.counts()
    resumen = {"reports": merged.to_dict(), "extra": extra or {}}
    new_id = con.execute("SELECT nextval('seq_verificaciones')").fetchone()[0]
    con.execute(
        "INSERT INTO verificaciones (id, ts, carta, comando, aprobado, simbolicos, numericos, no_nulos, resumen_json) "
        "VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?)",
        [
            new_id, datetime.now(), carta or "(sin nombre)", comando, merged.passed,
            counts["symbolic-zero"], counts["numeric-zero"], counts["nonzero"],
            json.dumps(_serialize_for_json(resumen), sort_keys=True),
        ],
    )
    return new_id


def list_verificaciones(carta: Optional[str] = None, solo_fallidas: bool = False, con=None) -> pd.DataFrame:
    con = con or get_con()
    sql = "SELECT id, ts, carta, comando, aprobado, simbolicos, numericos, no_nulos FROM verificaciones"
    where, params = [], []
    if carta:
        where.append("carta = ?")
        params.append(carta)
    if solo_fallidas:
        where.append("aprobado = FALSE")
    if where:
        sql += " WHERE " + " AND ".join(where)
    sql += " ORDER BY id DESC"
    return con.execute(sql, params).df()


def get_resumen(verificacion_id: int, con=None) -> Optional[dict]:
    con = con or get_con()
    row = con.execute("SELECT resumen_json FROM verificaciones WHERE id = ?", [verificacion_id]).fetchone()
    if not row or row[0] is None:
        return None
    return json.loads(row[0])
