from pathlib import Path
import sys

import pandas as pd

PROJECT_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from workbench.core_semigroup import CATALOG, build_example  # noqa: E402
from workbench.ordered_groupoid import esn_forward  # noqa: E402
from workbench.tables import write_groupoid, write_semigroup  # noqa: E402


def main():
    out_dir = PROJECT_ROOT / "data_processed"
    groupoid_dir = out_dir / "groupoids"
    groupoid_dir.mkdir(parents=True, exist_ok=True)

    rows = []
    for name in sorted(CATALOG):
        S = build_example(name)
        path = write_semigroup(out_dir / f"{name}.json", S)
        # ESN del mismo ejemplo, para `flows` y `verify`
        G = esn_forward(S)
        write_groupoid(groupoid_dir / f"{name}.json", G)
        rows.append(
            {
                "name": name,
                "path": path.relative_to(PROJECT_ROOT).as_posix(),
                "elements": S.size,
                "idempotents": len(S.idempotents),
                "monoid": S.is_monoid,
                "zero": S.zero is not None,
                "arrows": G.size,
            }
        )

    df = pd.DataFrame(rows)
    index_path = out_dir / "catalog.csv"
    df.to_csv(index_path, index=False)

    print(f"Saved: {index_path}")
    print(f"Rows: {len(df)} | Cols: {len(df.columns)}")


if __name__ == "__main__":
    main()
