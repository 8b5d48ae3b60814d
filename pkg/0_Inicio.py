import os
import glob

import streamlit as st

from gradedgeo import config
from gradedgeo.cli import COMMANDS, NEEDS_ARGUMENT, NEEDS_SECOND, run_command
from gradedgeo.db import init_db, registrar_verificacion
from gradedgeo.errors import GradedGeoError, SpecSyntaxError
from gradedgeo.reports import merge_reports
from gradedgeo.specfile import load_spec, parse_spec

SPECS_DIR = os.path.join("data", "specs")

st.set_page_config(
    page_title="Inicio",
    page_icon=":material/functions:",
    layout="wide"
)

init_db()
config.setup_logging()

st.title(":material/functions: Verificación de geometría graduada")

corpus = sorted(glob.glob(os.path.join(SPECS_DIR, "*.spec")))
names = [os.path.basename(p) for p in corpus]


def _leer(nombre: str) -> str:
    with open(os.path.join(SPECS_DIR, nombre), encoding="utf-8") as fh:
        return fh.read()


# ------------------ Selección de carta ------------------
col1, col2 = st.columns(2)
with col1:
    origen = st.radio("Carta", ["Corpus", "Pegar texto"], horizontal=True)
    if origen == "Corpus":
        elegido = st.selectbox("Archivo", names)
        texto = _leer(elegido) if elegido else ""
        st.code(texto, language="ini")
    else:
        texto = st.text_area("Especificación", height=300, placeholder="[chart]\nn = 0\nbase = x\n...")
with col2:
    comando = st.selectbox("Comando", COMMANDS, index=COMMANDS.index("report"))
    argumento = None
    if comando in NEEDS_ARGUMENT:
        argumento = st.text_input("Argumento (función, campo o expresión)")
    segunda = None
    if comando in NEEDS_SECOND:
        segunda = st.selectbox("Segunda carta", names)
    trunc = st.number_input("Orden de truncamiento", min_value=0, max_value=8, value=config.TRUNC_ORDER)
    ejecutar = st.button(":material/play_arrow: Ejecutar", type="primary", use_container_width=True)

# ------------------ Ejecución ------------------
if ejecutar:
    try:
        spec = parse_spec(texto, int(trunc))
        if not spec.name and origen == "Corpus":
            spec.chart.name = os.path.splitext(elegido)[0]
        second = load_spec(os.path.join(SPECS_DIR, segunda), int(trunc)) if segunda else None
        with st.spinner("Calculando..."):
            result = run_command(spec, comando, argumento or None, second)
    except SpecSyntaxError as exc:
        st.error(f":material/error: {exc}")
    except GradedGeoError as exc:
        st.error(f":material/block: Precondición no satisfecha: {exc}")
    else:
        if result.passed:
            st.success(":material/check_circle: Todas las comprobaciones pasan.")
        else:
            st.error(":material/cancel: Hay residuos no nulos.")
        if result.text:
            st.code(result.text)
        if result.reports:
            df = merge_reports(comando, result.reports).to_frame()
            st.dataframe(df, use_container_width=True)
        _id = registrar_verificacion(spec.name, comando, result.reports, result.payload)
        st.caption(f"Ejecución guardada en el historial con ID {_id}")
