"""The clasp-number table of prime knots through ten crossings, and its audit.

Two bundled files back this module:

``data/clasp_table.txt``
    One printed row per line, ``name g u c``, in the printed order.  ``X``
    stands for "2 or 3".  Lines starting with ``#`` are comments.  The
    printed table lists Rolfsen's 10_161 and 10_162 separately although
    they are the same knot (the Perko pair); both lines are kept so the file
    stays a faithful transcription, and :func:`load_table` folds them into
    one record, leaving 249 knots.

``data/pd_codes.txt``
    ``name X[a,b,c,d] X[...] ...`` keyed by Rolfsen name, generated from
    KnotInfo by ``tools/build_pd_codes.py``.

Names are Rolfsen names.  :func:`lookup` also understands KnotInfo/Knot
Atlas numbering (which drops 10_162 and shifts 10_163..10_166 down by one)
and Kawauchi's (which swaps 10_83 and 10_86).
"""

from __future__ import annotations

import csv
import difflib
import io
import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

from .clasp import conway_genus2_of, genus_lower_from_conway, mod8_obstruction, one_clasp_form, two_clasp_realizable
from .diagram import PdCode, orient, parse_pd
from .invariants import conway

__all__ = [
    "TableError",
    "UnknownKnotError",
    "ValueOrRange",
    "KnotRecord",
    "RecordAudit",
    "AuditReport",
    "data_dir",
    "read_table_rows",
    "format_table_rows",
    "read_pd_codes",
    "format_pd_codes",
    "load_table",
    "lookup",
    "knotinfo_name",
    "audit",
    "equality_census",
]

EXPECTED_KNOTS = 249
DATA_ENV = "KNOTCLASP_DATA"

# Rolfsen names that denote the same knot as an earlier row.
DUPLICATES = {"10_162": "10_161"}
_KAWAUCHI_SWAP = {"10_83": "10_86", "10_86": "10_83"}


class TableError(ValueError):
    pass


class UnknownKnotError(KeyError):
    def __init__(self, name: str, near: Sequence[str]):
        self.name = name
        self.near = list(near)
        hint = f"; did you mean {', '.join(self.near)}?" if self.near else ""
        super().__init__(f"unknown knot {name!r}{hint}")

    def __str__(self) -> str:
        return self.args[0]


@dataclass(frozen=True, order=True)
class ValueOrRange:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise TableError(f"empty range [{self.lo}, {self.hi}]")

    @classmethod
    def parse(cls, token: str) -> "ValueOrRange":
        if token == "X":
            return cls(2, 3)
        if not re.fullmatch(r"\d+", token):
            raise TableError(f"malformed table entry {token!r}")
        v = int(token)
        return cls(v, v)

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def token(self) -> str:
        if self.exact:
            return str(self.lo)
        if (self.lo, self.hi) == (2, 3):
            return "X"
        return f"{self.lo}..{self.hi}"

    def to_json(self):
        return self.lo if self.exact else [self.lo, self.hi]


@dataclass(frozen=True)
class KnotRecord:
    name: str
    g: ValueOrRange
    u: ValueOrRange
    c: ValueOrRange
    pd: PdCode | None = None
    aliases: tuple[str, ...] = ()

    @property
    def crossing_number(self) -> int:
        return int(self.name.split("_")[0])

    @property
    def exact(self) -> bool:
        return self.g.exact and self.u.exact and self.c.exact


def data_dir() -> Path:
    env = os.environ.get(DATA_ENV)
    return Path(env) if env else Path(__file__).with_name("data")


# ---------------------------------------------------------------------------
# file formats


def read_table_rows(text: str) -> list[tuple[str, str, str, str]]:
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 4:
            raise TableError(f"line {lineno}: expected 'name g u c', got {line!r}")
        if not re.fullmatch(r"\d+_\d+", parts[0]):
            raise TableError(f"line {lineno}: malformed knot name {parts[0]!r}")
        rows.append(tuple(parts))
    return rows


def format_table_rows(rows: Iterable[Sequence[str]], header: str | None = "# name g u c   (X = 2 or 3)") -> str:
    lines = [header] if header else []
    lines += [" ".join(r) for r in rows]
    return "\n".join(lines) + "\n"


def read_pd_codes(text: str) -> dict[str, PdCode]:
    out: dict[str, PdCode] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        name, _, rest = line.strip().partition(" ")
        if name in out:
            raise TableError(f"line {lineno}: duplicate PD entry for {name}")
        out[name] = parse_pd(rest)
    return out


def format_pd_codes(codes: dict[str, PdCode], header: str | None = None) -> str:
    lines = [header] if header else []
    lines += [f"{name} {pd.to_text()}" for name, pd in codes.items()]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# loading


def _build_records(rows, pds: dict[str, PdCode]) -> list[KnotRecord]:
    seen: dict[str, KnotRecord] = {}
    aliases: dict[str, list[str]] = {}
    for name, g, u, c in rows:
        rec = KnotRecord(name, ValueOrRange.parse(g), ValueOrRange.parse(u), ValueOrRange.parse(c))
        if not 3 <= rec.crossing_number <= 10:
            raise TableError(f"{name}: crossing number outside 3..10")
        if max(rec.g.lo, rec.u.lo) > rec.c.hi:
            raise TableError(f"{name}: max(g, u) exceeds c")
        target = DUPLICATES.get(name)
        if target is not None:
            prev = seen.get(target)
            if prev is None:
                raise TableError(f"{name} listed before the row it duplicates ({target})")
            if (prev.g, prev.u, prev.c) != (rec.g, rec.u, rec.c):
                raise TableError(f"{name} duplicates {target} but its values differ")
            aliases.setdefault(target, []).append(name)
            continue
        if name in seen:
            raise TableError(f"duplicate row for {name}")
        seen[name] = rec
    if len(seen) != EXPECTED_KNOTS:
        raise TableError(f"expected {EXPECTED_KNOTS} knots, found {len(seen)}")
    unknown = set(pds) - set(seen)
    if unknown:
        raise TableError(f"PD codes for knots not in the table: {sorted(unknown)}")
    return [
        KnotRecord(r.name, r.g, r.u, r.c, pds.get(r.name), tuple(aliases.get(r.name, ())))
        for r in seen.values()
    ]


def load_table(path: str | os.PathLike | None = None, pd_path: str | os.PathLike | None = None) -> list[KnotRecord]:
    """249 records in printed order, with PD codes attached where bundled."""
    base = data_dir()
    table_path = Path(path) if path is not None else base / "clasp_table.txt"
    if pd_path is None:
        pd_path = table_path.with_name("pd_codes.txt")
    pd_path = Path(pd_path)
    rows = read_table_rows(table_path.read_text())
    pds = read_pd_codes(pd_path.read_text()) if pd_path.exists() else {}
    return _build_records(rows, pds)


@lru_cache(maxsize=4)
def _default_records(key: str) -> tuple[KnotRecord, ...]:
    return tuple(load_table())


def default_records() -> tuple[KnotRecord, ...]:
    return _default_records(str(data_dir()))


# ---------------------------------------------------------------------------
# names


def normalize_name(name: str) -> str:
    s = name.strip().replace("{", "").replace("}", "").replace("-", "_").replace(" ", "")
    sub = re.fullmatch(r"(\d+)([₀-₉]+)", s)
    if sub:
        s = sub.group(1) + "_" + sub.group(2).translate(str.maketrans("₀₁₂₃₄₅₆₇₈₉", "0123456789"))
    # bare digits such as "1097": table crossing numbers run 3..10
    m = re.fullmatch(r"(\d+)_(\d+)", s) if "_" in s else re.fullmatch(r"(10|[3-9])(\d+)", s)
    if not m:
        return s
    return f"{int(m.group(1))}_{int(m.group(2))}"


def knotinfo_name(rolfsen: str) -> str | None:
    """KnotInfo / Knot Atlas name for a Rolfsen name (None for the dropped 10_162)."""
    cr, idx = map(int, rolfsen.split("_"))
    if cr == 10 and idx == 162:
        return None
    if cr == 10 and 163 <= idx <= 166:
        return f"10_{idx - 1}"
    return rolfsen


def _from_convention(name: str, convention: str) -> str:
    if convention == "rolfsen":
        return name
    cr, idx = map(int, name.split("_"))
    if convention == "knotinfo":
        if cr == 10 and 162 <= idx <= 165:
            return f"10_{idx + 1}"
        return name
    if convention == "kawauchi":
        return _KAWAUCHI_SWAP.get(name, name)
    raise ValueError(f"unknown naming convention {convention!r}")


def lookup(name: str, records: Sequence[KnotRecord] | None = None, convention: str = "rolfsen") -> KnotRecord:
    records = default_records() if records is None else records
    key = normalize_name(name)
    index = {r.name: r for r in records}
    for r in records:
        for a in r.aliases:
            index[a] = r
    if re.fullmatch(r"\d+_\d+", key):
        key = _from_convention(key, convention)
        if key in index:
            return index[key]
    near = difflib.get_close_matches(key, list(index), n=3, cutoff=0.6)
    raise UnknownKnotError(name, near)


# ---------------------------------------------------------------------------
# audit


@dataclass(frozen=True)
class RecordAudit:
    name: str
    g: ValueOrRange
    u: ValueOrRange
    c: ValueOrRange
    has_pd: bool
    conway: str | None = None
    genus_lower: int | None = None
    mod8_fires: bool | None = None
    realizable: bool | None = None
    witness: tuple[int, ...] | None = None
    checks: dict[str, bool] = field(default_factory=dict)
    flags: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "g": self.g.to_json(),
            "u": self.u.to_json(),
            "c": self.c.to_json(),
            "has_pd": self.has_pd,
            "conway": self.conway,
            "genus_lower": self.genus_lower,
            "mod8_fires": self.mod8_fires,
            "realizable": self.realizable,
            "witness": list(self.witness) if self.witness else None,
            "checks": dict(sorted(self.checks.items())),
            "flags": list(self.flags),
            "passed": self.passed,
        }


@dataclass(frozen=True)
class AuditReport:
    records: tuple[RecordAudit, ...]
    census_exact: tuple[str, ...]
    census_undetermined: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def failures(self) -> list[str]:
        return [f"{r.name}: {', '.join(r.flags)}" for r in self.records if not r.passed]

    def to_json(self) -> dict:
        checked = [r for r in self.records if r.has_pd]
        return {
            "records": [r.to_json() for r in self.records],
            "summary": {
                "rows": len(self.records),
                "with_pd": len(checked),
                "passed": sum(r.passed for r in self.records),
                "failed": sum(not r.passed for r in self.records),
                "mod8_fires": sorted(r.name for r in checked if r.mod8_fires),
            },
            "census": {"exact": list(self.census_exact), "undetermined": list(self.census_undetermined)},
            "failures": self.failures,
            "passed": self.passed,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["knot", "g", "u", "c", "conway", "genus_lower", "mod8_fires", "realizable", "flags"])
        for r in self.records:
            w.writerow(
                [
                    r.name,
                    r.g.token(),
                    r.u.token(),
                    r.c.token(),
                    r.conway or "",
                    "" if r.genus_lower is None else r.genus_lower,
                    "" if r.mod8_fires is None else int(r.mod8_fires),
                    "" if r.realizable is None else int(r.realizable),
                    ";".join(r.flags),
                ]
            )
        return buf.getvalue()


def _audit_one(rec: KnotRecord) -> RecordAudit:
    checks: dict[str, bool] = {}
    flags: list[str] = []

    def check(tag: str, ok: bool, why: str) -> None:
        checks[tag] = ok
        if not ok:
            flags.append(f"{tag}: {why} (table/paper discrepancy candidate)")

    cr = rec.crossing_number
    check("question2", rec.c.hi <= (cr - 1) // 2, f"c={rec.c.token()} exceeds floor((cr-1)/2)={(cr - 1) // 2}")
    check("shibuya", max(rec.g.lo, rec.u.lo) <= rec.c.hi, "max(g, u) exceeds c")
    if rec.pd is None:
        return RecordAudit(rec.name, rec.g, rec.u, rec.c, False, checks=checks, flags=tuple(flags))

    nabla = conway(orient(rec.pd))
    glow = genus_lower_from_conway(nabla)
    check("genus", glow <= rec.g.hi, f"deg(conway)/2={glow} exceeds g={rec.g.token()}")
    fires = realizable = None
    witness = None
    try:
        shape = conway_genus2_of(nabla)
    except ValueError:
        shape = None
    if shape is not None:
        fires = mod8_obstruction(shape)
        w = two_clasp_realizable(shape)
        realizable = bool(w)
        witness = tuple(w.as_list()) if w else None
        check("mod8", not fires or rec.c.lo >= 3, "mod-8 obstruction fires but table allows c <= 2")
    if rec.c.hi <= 2:
        check("realizable", bool(realizable), "c <= 2 but Conway polynomial is not of two-clasp form")
    if rec.c.hi <= 1:
        check("one_clasp", one_clasp_form(nabla) is not None, "c <= 1 but Conway polynomial is not b1 z^2 + 1")
    return RecordAudit(
        rec.name,
        rec.g,
        rec.u,
        rec.c,
        True,
        conway=nabla.format("z"),
        genus_lower=glow,
        mod8_fires=fires,
        realizable=realizable,
        witness=witness,
        checks=checks,
        flags=tuple(flags),
    )


def audit(records: Sequence[KnotRecord], workers: int | None = None) -> AuditReport:
    """Check every record; records without PD data get only the computation-free checks."""
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_audit_one, records, chunksize=8))
    else:
        results = [_audit_one(r) for r in records]
    exact, undetermined = equality_census(records)
    return AuditReport(tuple(results), tuple(exact), tuple(undetermined))


def equality_census(records: Sequence[KnotRecord]) -> tuple[list[str], list[str]]:
    """Knots with max{g, u} < c: (certain among exact rows, possible among range rows)."""
    exact = [r.name for r in records if r.exact and max(r.g.hi, r.u.hi) < r.c.lo]
    undetermined = [r.name for r in records if not r.exact and max(r.g.lo, r.u.lo) < r.c.hi]
    return exact, undetermined
