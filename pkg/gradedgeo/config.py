"""
Configuración del motor.
Incluye:
- Carga opcional de .env (python-dotenv)
- Valores por defecto leídos de variables de entorno
- Ajustes del test de cero numérico (tolerancia, muestras, semilla)
"""
import os
import logging
from dataclasses import dataclass, replace
from typing import Optional

# Intentar cargar .env solo si existe (desarrollo local)
try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass


def _get_config(key: str, default: str = "") -> str:
    """Obtiene un valor de configuración desde las variables de entorno."""
    return os.getenv(key, default)


TRUNC_ORDER = int(_get_config("GRADEDGEO_TRUNC", "4"))
TOLERANCE = float(_get_config("GRADEDGEO_TOLERANCE", "1e-9"))
SAMPLES = int(_get_config("GRADEDGEO_SAMPLES", "5"))
SEED = int(_get_config("GRADEDGEO_SEED", "0"))
DB_PATH = _get_config("GRADEDGEO_DB_PATH", os.path.join("data", "verificaciones.duckdb"))
LOG_LEVEL = _get_config("GRADEDGEO_LOG_LEVEL", "WARNING")


@dataclass(frozen=True)
class ZeroTestSettings:
    """Parámetros del test de cero por evaluación en puntos aleatorios."""
    tolerance: float = TOLERANCE
    samples: int = SAMPLES
    seed: int = SEED


_settings = ZeroTestSettings()


def get_settings() -> ZeroTestSettings:
    return _settings


def configure(tolerance: Optional[float] = None, samples: Optional[int] = None,
              seed: Optional[int] = None) -> ZeroTestSettings:
    """Sobrescribe los ajustes vigentes; los argumentos en None se conservan."""
    global _settings
    changes = {k: v for k, v in (("tolerance", tolerance), ("samples", samples), ("seed", seed)) if v is not None}
    _settings = replace(_settings, **changes)
    return _settings


def setup_logging(verbosity: int = 0) -> None:
    """Configura el logging en stderr; cada -v baja un nivel."""
    level = getattr(logging, LOG_LEVEL.upper(), logging.WARNING)
    if verbosity == 1:
        level = min(level, logging.INFO)
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
