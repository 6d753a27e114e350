"""Regenerate src/knotclasp/data/pd_codes.txt from a KnotInfo CSV export.

Usage:
    python tools/build_pd_codes.py path/to/knotinfo_data_complete.csv

The CSV ships inside the ``database_knotinfo`` wheel (csv_data/).  It is a
build-time input only; the package never reads it.  Every PD code written is
first run through the library's own engines and compared with KnotInfo's
Jones polynomial, Conway polynomial and genus, so a convention mismatch
aborts the build instead of shipping silently.
"""

from __future__ import annotations

import csv
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from knotclasp.diagram import PdCode, orient  # noqa: E402
from knotclasp.invariants import conway, jones  # noqa: E402
from knotclasp.laurent import parse  # noqa: E402
from knotclasp.tables import knotinfo_name, read_table_rows  # noqa: E402

OUT = ROOT / "src" / "knotclasp" / "data" / "pd_codes.txt"


def _tuples(text: str) -> list[tuple[int, int, int, int]]:
    inner = text.strip()[2:-2]
    return [tuple(int(v) for v in chunk.split(",")) for chunk in inner.split("],[")]


def main(csv_path: str) -> int:
    csv.field_size_limit(1 << 30)
    with open(csv_path, newline="") as fh:
        rows = {r["name"]: r for r in csv.DictReader(fh, delimiter="|")}
    names = []
    for name, *_ in read_table_rows((ROOT / "src" / "knotclasp" / "data" / "clasp_table.txt").read_text()):
        if name not in names and knotinfo_name(name) is not None:
            names.append(name)
    lines = ["# Rolfsen-name PD code (KnotInfo diagrams, KnotInfo chirality)"]
    bad = 0
    for name in names:
        src = knotinfo_name(name)
        row = rows[src]
        pd = PdCode(tuple(_tuples(row["pd_notation"])))
        d = orient(pd)
        want_v = parse(row["jones_polynomial"].replace(" ", ""), "t")
        want_c = parse(row["conway_polynomial"].replace(" ", ""), "z")
        got_v, got_c = jones(d), conway(d)
        if got_v != want_v or got_c != want_c:
            bad += 1
            print(f"{name} ({src}): jones {got_v} vs {want_v}; conway {got_c.format('z')} vs {want_c.format('z')}")
        lines.append(f"{name} {pd.to_text()}")
    if bad:
        print(f"{bad} mismatches; not writing {OUT}")
        return 1
    OUT.write_text("\n".join(lines) + "\n")
    print(f"wrote {len(names)} PD codes to {OUT}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1]))
