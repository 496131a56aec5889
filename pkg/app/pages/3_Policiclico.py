import streamlit as st
import pandas as pd
import plotly.express as px
from utils import show_report

from workbench.config import DEFAULT_SAMPLES, DEFAULT_SEED, default_maxlen
from workbench.errors import WorkbenchError
from workbench.polycyclic import (
    bicyclic_mul,
    endo_classification_check,
    endo_classification_sweep,
    heap_type_check_polycyclic,
    parse_expression,
    parse_word,
    premorphism_ideal_check,
    verify_bicyclic,
    verify_poly_arithmetic,
    verify_zappa,
)

st.set_page_config(page_title="Policíclico", layout="wide")
st.title("🔤 Monoides policíclicos P_n")

st.sidebar.header("Parámetros")
n = st.sidebar.slider("Tamaño del alfabeto (n)", 1, 4, 2)
L = st.sidebar.slider("Ventana (longitud máxima de palabra)", 0, 6, min(default_maxlen(n), 6))
samples = st.sidebar.number_input("Muestras", min_value=1, value=DEFAULT_SAMPLES)
seed = st.sidebar.number_input("Semilla", value=DEFAULT_SEED)

st.subheader("Calculadora")
st.caption("Letras a, b, c…; `^-1` invierte; `*` o espacio multiplican; `1` y `0` son la identidad y el cero.")
text = st.text_area("Expresiones (una por línea)", "(ab)^-1 a * b^-1\na^-1 a\na a^-1")
rows = []
for line in text.splitlines():
    if not line.strip():
        continue
    try:
        rows.append({"expresión": line, "forma normal": str(parse_expression(line, n)), "error": ""})
    except WorkbenchError as e:
        rows.append({"expresión": line, "forma normal": "", "error": str(e)})
st.dataframe(pd.DataFrame(rows), use_container_width=True, hide_index=True)

st.divider()

# Bicíclico: (i, j) = a^-i a^j
st.subheader("Monoide bicíclico")
size = st.slider("Rejilla (i, j ≤ …)", 1, 6, 3)
grid = [(i, j) for i in range(size + 1) for j in range(size + 1)]
labels = [f"({i},{j})" for i, j in grid]
cells = [[" ".join(map(str, bicyclic_mul(x, y))) for y in grid] for x in grid]
heat = [[sum(bicyclic_mul(x, y)) for y in grid] for x in grid]
fig = px.imshow(heat, x=labels, y=labels, color_continuous_scale="Viridis", labels={"color": "i + j"})
fig.update_traces(text=cells, texttemplate="%{text}")
fig.update_layout(coloraxis_showscale=False)
st.plotly_chart(fig, use_container_width=True)

st.divider()

st.subheader("Comprobaciones por ventana")
check = st.selectbox(
    "Comprobación",
    ["Aritmética", "Bicíclico", "Zappa", "Premorfismos", "Endomorfismo (σ)", "Barrido de endomorfismos", "Heap"],
)
sigma_text, shift_text = "", ""
if check == "Endomorfismo (σ)":
    sigma_text = st.text_input("Imágenes de las letras (separadas por comas)", ",".join("abcd"[i] + "a" for i in range(n)))
    shift_text = st.text_input("Palabra de traslación", "")

if st.button("Ejecutar"):
    try:
        with st.spinner("Comprobando..."):
            if check == "Aritmética":
                report = verify_poly_arithmetic(n, L, int(samples), int(seed))
            elif check == "Bicíclico":
                report = verify_bicyclic(max(L, 1))
            elif check == "Zappa":
                report = verify_zappa(n, L, int(samples), int(seed))
            elif check == "Premorfismos":
                report = premorphism_ideal_check(n, L, premorphism_window=min(L, 2))
            elif check == "Endomorfismo (σ)":
                images = [parse_word(w.strip(), n) for w in sigma_text.split(",")]
                if len(images) != n:
                    st.error(f"Hacen falta {n} imágenes, hay {len(images)}")
                    st.stop()
                report = endo_classification_check(n, images, parse_word(shift_text.strip(), n), max(L, 1))
            elif check == "Barrido de endomorfismos":
                report = endo_classification_sweep(n, max(L, 1))
            else:
                report = heap_type_check_polycyclic(n, L, int(samples), int(seed))
        st.caption(report.title)
        show_report(report)
    except WorkbenchError as e:
        st.error(f"{type(e).__name__}: {e}")
