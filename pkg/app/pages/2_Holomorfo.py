import streamlit as st
import pandas as pd
import plotly.express as px
from utils import EXAMPLES, load_example, load_holomorph, load_premorphisms, load_sha, map_frame, show_report

from workbench.heap import HeapMap, verify_sha
from workbench.holomorph import action_table, holomorph_units, verify_hol_laws, verify_interchange

st.set_page_config(page_title="Holomorfo", layout="wide")
st.title("🔁 Holomorfo y mapas de heap")

st.sidebar.header("Filtros")
# los grupos grandes (S3) tardan; el resto es instantáneo
name = st.sidebar.selectbox("Ejemplo", EXAMPLES, index=EXAMPLES.index("Z3"))
show_tables = st.sidebar.checkbox("Mostrar tablas completas", value=False)

S = load_example(name)
prem = load_premorphisms(name)
tables = load_holomorph(name)
units = holomorph_units(tables)

# KPIs
c1, c2, c3, c4 = st.columns(4)
c1.metric("|S|", S.size)
c2.metric("Premorfismos", len(prem))
c3.metric("|Hol(S)|", tables.size)
c4.metric("Unidades", len(units))

st.divider()

st.subheader("Premorfismos (imagen de cada elemento)")
st.dataframe(map_frame(S, prem, prefix="θ"), use_container_width=True)

st.subheader("Elementos de Hol(S)")
rows = []
for i, x in enumerate(tables.elements):
    rows.append(
        {
            "#": i,
            "alpha": " ".join(S.names[v] for v in x.alpha),
            "tau": " ".join(S.names[v] for v in x.tau),
            "unidad": i in set(units),
        }
    )
st.dataframe(pd.DataFrame(rows), use_container_width=True, hide_index=True)

# Acción s ◁ x
A = action_table(S, tables.elements)
fig = px.imshow(
    A,
    x=[f"x{i}" for i in range(tables.size)],
    y=list(S.names),
    color_continuous_scale="Viridis",
    labels={"x": "x ∈ Hol(S)", "y": "s", "color": "s ◁ x"},
    title="Acción de Hol(S) sobre S",
)
st.plotly_chart(fig, use_container_width=True)

if show_tables:
    st.subheader("Producto ◇")
    st.plotly_chart(px.imshow(tables.diamond, color_continuous_scale="Viridis"), use_container_width=True)
    st.subheader("Composición del grupoide (-1 = indefinida)")
    st.plotly_chart(px.imshow(tables.compose, color_continuous_scale="Viridis"), use_container_width=True)

st.subheader("Comprobaciones")
tab1, tab2 = st.tabs(["Leyes de Hol(S)", "Intercambio"])
with tab1:
    show_report(verify_hol_laws(S, tables))
with tab2:
    show_report(verify_interchange(tables))

st.divider()

st.subheader("Mapas ordenados que preservan el heap")
sha = load_sha(name)
st.metric("|Ш(S)|", len(sha))
heap_rows = []
for eta in sha:
    h = HeapMap.of(S, eta)
    heap_rows.append(
        {
            "eta": " ".join(S.names[v] for v in h.eta),
            "phi": " ".join(S.names[v] for v in h.phi),
            "tau": " ".join(S.names[v] for v in h.tau),
        }
    )
st.dataframe(pd.DataFrame(heap_rows), use_container_width=True, hide_index=True)
show_report(verify_sha(S, sha))
