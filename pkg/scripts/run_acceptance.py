from pathlib import Path
import sys

import click
import pandas as pd
from tqdm import tqdm

PROJECT_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from workbench.config import default_maxlen  # noqa: E402
from workbench.core_semigroup import build_example  # noqa: E402
from workbench.heap import enumerate_sha, verify_sha  # noqa: E402
from workbench.holomorph import (  # noqa: E402
    enumerate_holomorph,
    hol_tables,
    holomorph_units,
    verify_group_holomorph,
    verify_hol_laws,
    verify_interchange,
)
from workbench.morphisms import enumerate_premorphisms  # noqa: E402
from workbench.polycyclic import (  # noqa: E402
    bicyclic_hol_check,
    endo_classification_sweep,
    heap_type_check_polycyclic,
    premorphism_ideal_check,
    verify_bicyclic,
    verify_poly_arithmetic,
    verify_zappa,
)

# tamaños esperados de Hol(G) y de sus unidades
EXPECTED = {
    "Z2": (4, 2),
    "Z3": (9, 6),
    "Z4": (16, 8),
    "S3": (60, 36),
    "chain2": (3, None),
}
QUICK = ["trivial", "Z2", "Z3", "Z4", "chain2", "chain3", "I1", "I2", "clifford3"]


def semigroup_rows(names: list[str]) -> list[dict]:
    rows = []
    for name in tqdm(names, desc="semigrupos"):
        S = build_example(name)
        prem = enumerate_premorphisms(S)
        tables = hol_tables(S, enumerate_holomorph(S, prem))
        units = holomorph_units(tables)
        sha = enumerate_sha(S)
        reports = [verify_hol_laws(S, tables), verify_interchange(tables), verify_sha(S, sha)]
        if len(S.idempotents) == 1:
            reports.append(verify_group_holomorph(S, tables))
        size, n_units = EXPECTED.get(name, (None, None))
        rows.append(
            {
                "name": name,
                "elements": S.size,
                "prem": len(prem),
                "hol": tables.size,
                "units": len(units),
                "sha": len(sha),
                "expected_hol": size,
                "expected_units": n_units,
                "passed": all(r.passed for r in reports)
                and (size is None or size == tables.size)
                and (n_units is None or n_units == len(units)),
            }
        )
    return rows


def polycyclic_rows() -> list[dict]:
    L = default_maxlen(2)
    checks = {
        "arithmetic n=2": lambda: verify_poly_arithmetic(2, L),
        "arithmetic n=1": lambda: verify_poly_arithmetic(1, default_maxlen(1)),
        "bicyclic": lambda: verify_bicyclic(default_maxlen(1)),
        "bicyclic hol": lambda: bicyclic_hol_check(4),
        "zappa": lambda: verify_zappa(2, L),
        "premorphisms": lambda: premorphism_ideal_check(2, L),
        "endomorphisms": lambda: endo_classification_sweep(2, 2),
        "heap": lambda: heap_type_check_polycyclic(2, L),
    }
    rows = []
    for label, run in tqdm(checks.items(), desc="policíclicos"):
        report = run()
        rows.append({"name": label, "checks": len(report.checks), "passed": report.passed})
    return rows


@click.command()
@click.option("--full", is_flag=True, help="Incluye S3 y clifford4 (lento).")
def main(full: bool):
    """Barrido de aceptación del workbench."""
    out_dir = PROJECT_ROOT / "data_processed"
    out_dir.mkdir(parents=True, exist_ok=True)

    names = QUICK + (["S3", "clifford4"] if full else [])
    df = pd.DataFrame(semigroup_rows(names))
    poly = pd.DataFrame(polycyclic_rows())

    out_path = out_dir / "acceptance.csv"
    poly_path = out_dir / "acceptance_polycyclic.csv"
    df.to_csv(out_path, index=False)
    poly.to_csv(poly_path, index=False)

    print(f"Saved: {out_path}")
    print(f"Rows: {len(df)} | Cols: {len(df.columns)}")
    print(f"Saved: {poly_path}")
    print(f"Rows: {len(poly)} | Cols: {len(poly.columns)}")
    failed = int((~df["passed"]).sum() + (~poly["passed"]).sum())
    print(f"Failed: {failed}")
    sys.exit(1 if failed else 0)


if __name__ == "__main__":
    main()
