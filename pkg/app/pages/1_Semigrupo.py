import streamlit as st
import pandas as pd
import plotly.express as px
from utils import EXAMPLES, load_example, load_uploaded, saved_tables, show_report

from workbench.core_semigroup import check_order_properties
from workbench.errors import WorkbenchError
from workbench.ordered_groupoid import esn_back, esn_forward, is_inductive, verify_ordered_groupoid

st.set_page_config(page_title="Semigrupo", layout="wide")
st.title("🔎 Explorador de semigrupos inversos")

# Sidebar: origen de la tabla
st.sidebar.header("Origen")
source = st.sidebar.radio("Tabla", ["Catálogo", "Guardada", "Subir JSON"])

S = None
try:
    if source == "Catálogo":
        S = load_example(st.sidebar.selectbox("Ejemplo", EXAMPLES, index=EXAMPLES.index("I2")))
    elif source == "Guardada":
        paths = saved_tables()
        if not paths:
            st.info("No hay tablas en data_processed/. Ejecuta scripts/build_example_tables.py")
        else:
            path = st.sidebar.selectbox("Fichero", paths, format_func=lambda p: p.name)
            S = load_uploaded(path.read_text(encoding="utf-8"))
    else:
        up = st.sidebar.file_uploader("Tabla (.json)", type=["json"])
        if up is not None:
            S = load_uploaded(up.getvalue().decode("utf-8"))
except WorkbenchError as e:
    st.error(f"{type(e).__name__}: {e}")
    if e.witness is not None:
        st.caption(f"Testigo: {e.witness}")

if S is None:
    st.stop()

# KPIs
c1, c2, c3, c4 = st.columns(4)
c1.metric("Elementos", S.size)
c2.metric("Idempotentes", len(S.idempotents))
c3.metric("Identidad", S.names[S.identity] if S.identity is not None else "-")
c4.metric("Cero", S.names[S.zero] if S.zero is not None else "-")

st.divider()

st.subheader("Tabla de multiplicación")
fig = px.imshow(
    S.mul,
    x=list(S.names),
    y=list(S.names),
    text_auto=False,
    color_continuous_scale="Viridis",
    labels={"x": "b", "y": "a", "color": "ab"},
)
fig.update_traces(text=S.to_frame().values, texttemplate="%{text}")
fig.update_layout(coloraxis_showscale=False)
st.plotly_chart(fig, use_container_width=True)

with st.expander("Tabla como DataFrame"):
    st.dataframe(S.to_frame(), use_container_width=True)

st.divider()

left, right = st.columns(2)
with left:
    st.subheader("Orden natural (a ≤ b)")
    leq = pd.DataFrame(S.order.rows, index=list(S.names), columns=list(S.names)).astype(int)
    st.plotly_chart(px.imshow(leq, color_continuous_scale="Blues", labels={"color": "≤"}), use_container_width=True)
with right:
    st.subheader("Elementos")
    st.dataframe(
        pd.DataFrame(
            {
                "elemento": S.names,
                "inverso": [S.names[S.inverse(a)] for a in range(S.size)],
                "dom": [S.names[S.dom(a)] for a in range(S.size)],
                "ran": [S.names[S.ran(a)] for a in range(S.size)],
                "idempotente": [S.is_idempotent(a) for a in range(S.size)],
            }
        ),
        use_container_width=True,
        hide_index=True,
    )

st.subheader("Compatibilidad del orden")
show_report(check_order_properties(S))

st.divider()

st.subheader("Grupoide inductivo (ESN)")
G = esn_forward(S)
c1, c2, c3 = st.columns(3)
c1.metric("Flechas", G.size)
c2.metric("Identidades", len(G.identities))
c3.metric("Vuelta = S", "Sí" if esn_back(G).same_table(S) and is_inductive(G) else "No")
show_report(verify_ordered_groupoid(G))
