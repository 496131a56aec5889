import streamlit as st
from utils import EXAMPLES, load_example

st.set_page_config(page_title="Holomorfo de semigrupos inversos", layout="wide")

st.title("🧮 Banco de pruebas: holomorfos de semigrupos inversos")

st.markdown("""
¡Bienvenido al **banco de pruebas** de semigrupos inversos finitos! Aquí puedes construir ejemplos pequeños,
calcular sus premorfismos y su holomorfo **Hol(S)**, y comprobar las propiedades que se esperan de ellos.

### ¿Qué puedes hacer?
1. **Explorar un semigrupo**:
   - Elige un ejemplo del catálogo o sube una tabla en JSON.
   - Mira su tabla de multiplicación, sus idempotentes y el orden natural.
   - Revisa el grupoide inductivo asociado (ESN) y vuelve al semigrupo.

2. **Holomorfo y heaps**:
   - Lista los premorfismos y los elementos de Hol(S) con su acción sobre S.
   - Compara |Hol(S)| con las unidades y, en grupos, con |Aut(G)|·|G|.
   - Enumera los mapas ordenados que preservan el heap y su incrustación en Hol(S).

3. **Monoides policíclicos**:
   - Evalúa expresiones en P_n (por ejemplo `(ab)^-1 a * b^-1`).
   - Lanza las comprobaciones por ventana: aritmética, bicíclico, producto de Zappa, endomorfismos y heaps.

La línea de comandos (`python -m workbench`) hace lo mismo en modo batch.
""")

st.divider()

st.subheader("Catálogo")
sizes = {name: load_example(name).size for name in EXAMPLES}
st.dataframe(
    [{"ejemplo": name, "elementos": n, "idempotentes": len(load_example(name).idempotents)} for name, n in sizes.items()],
    use_container_width=True,
    hide_index=True,
)
