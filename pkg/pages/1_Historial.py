import streamlit as st

from gradedgeo.db import get_resumen, list_verificaciones

st.set_page_config(
    page_title="Historial",
    page_icon=":material/history:",
    layout="wide"
)

st.title(":material/history: Historial de verificaciones")

c1, c2 = st.columns(2)
with c1:
    carta = st.text_input("Filtrar por carta")
with c2:
    solo_fallidas = st.checkbox("Solo fallidas", value=False)

df = list_verificaciones(carta=carta.strip() or None, solo_fallidas=solo_fallidas)
if df.empty:
    st.info("No hay verificaciones registradas.")
else:
    st.dataframe(df, use_container_width=True)
    sel = st.selectbox("Ver detalle de la ejecución", df['id'].tolist())
    if sel is not None:
        resumen = get_resumen(int(sel))
        if resumen:
            st.json(resumen)
