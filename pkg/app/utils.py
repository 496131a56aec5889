import sys
from pathlib import Path

import pandas as pd
import streamlit as st

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from workbench.core_semigroup import CATALOG, InverseSemigroup, build_example  # noqa: E402
from workbench.heap import enumerate_sha  # noqa: E402
from workbench.holomorph import HolTables, enumerate_holomorph, hol_tables  # noqa: E402
from workbench.morphisms import enumerate_premorphisms  # noqa: E402
from workbench.report import Report  # noqa: E402
from workbench.tables import parse_document, semigroup_from_document  # noqa: E402

TABLES_DIR = ROOT / "data_processed"
EXAMPLES = sorted(CATALOG)


@st.cache_data(show_spinner=False)
def load_example(name: str) -> InverseSemigroup:
    return build_example(name)


@st.cache_data(show_spinner=False)
def load_uploaded(text: str) -> InverseSemigroup:
    return semigroup_from_document(parse_document(text), text)


def saved_tables() -> list[Path]:
    # las tablas que deja scripts/build_example_tables.py
    if not TABLES_DIR.exists():
        return []
    return sorted(TABLES_DIR.glob("*.json"))


@st.cache_data(show_spinner="Calculando premorfismos...")
def load_premorphisms(name: str) -> list[tuple[int, ...]]:
    return enumerate_premorphisms(load_example(name))


@st.cache_data(show_spinner="Calculando Hol(S)...")
def load_holomorph(name: str) -> HolTables:
    S = load_example(name)
    return hol_tables(S, enumerate_holomorph(S, load_premorphisms(name)))


@st.cache_data(show_spinner="Calculando mapas de heap...")
def load_sha(name: str) -> list[tuple[int, ...]]:
    return enumerate_sha(load_example(name))


def map_frame(S: InverseSemigroup, maps: list[tuple[int, ...]], prefix: str = "m") -> pd.DataFrame:
    """Una fila por mapa, una columna por elemento (imágenes por nombre)."""
    rows = [[S.names[v] for v in m] for m in maps]
    return pd.DataFrame(rows, columns=list(S.names), index=[f"{prefix}{i}" for i in range(len(maps))])


def show_report(report: Report) -> None:
    c1, c2 = st.columns(2)
    c1.metric("Comprobaciones", len(report.checks))
    c2.metric("Resultado", "OK" if report.passed else "FALLO")
    if report.stats:
        st.json(report.to_dict()["stats"], expanded=False)
    st.dataframe(report.to_frame(), use_container_width=True, hide_index=True)
