"""Regenerate the bundled benchmark datasets and their manifest.

Run from the repository root:

    python3 scripts/gen_datasets.py

Output is deterministic; the committed CSVs under src/infbench/bench/data/
are exactly what this script writes.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

from infbench.bench.synth import GENERATORS

OUT_DIR = Path(__file__).resolve().parent.parent / "src" / "infbench" / "bench" / "data"


def main() -> None:
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    manifest = {"datasets": []}
    for gen in GENERATORS:
        table = gen()
        path = OUT_DIR / f"{table.name}.csv"
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(table.header)
            writer.writerows(table.rows)
        manifest["datasets"].append({
            "id": table.name,
            "path": f"{table.name}.csv",
            "target_column": table.target,
            "columns": table.kinds,
            "note": table.note,
        })
        print(f"wrote {path} ({len(table.rows)} rows)")
    manifest_path = OUT_DIR / "manifest.json"
    manifest_path.write_text(
        json.dumps(manifest, indent=2) + "\n", encoding="utf-8"
    )
    print(f"wrote {manifest_path}")


if __name__ == "__main__":
    main()
