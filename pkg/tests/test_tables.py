import csv
import io
import json

import pytest

from knotclasp import tables
from knotclasp.clasp import conway_genus2_of, mod8_obstruction, two_clasp_realizable
from knotclasp.diagram import orient
from knotclasp.invariants import conway
from knotclasp.tables import (
    EXPECTED_KNOTS,
    KnotRecord,
    TableError,
    UnknownKnotError,
    ValueOrRange,
    audit,
    default_records,
    equality_census,
    format_pd_codes,
    format_table_rows,
    knotinfo_name,
    load_table,
    lookup,
    normalize_name,
    read_pd_codes,
    read_table_rows,
)

DATA = tables.data_dir()


@pytest.fixture(scope="module")
def records():
    return default_records()


@pytest.fixture(scope="module")
def report(records):
    return audit(records)


# -- loading ---------------------------------------------------------------


def test_loads_every_row(records):
    assert len(records) == EXPECTED_KNOTS
    assert all(r.pd is not None for r in records)
    assert records[0].name == "3_1" and records[-1].name == "10_166"


def test_duplicate_row_becomes_alias(records):
    perko = lookup("10_161", records)
    assert perko.aliases == ("10_162",)
    assert lookup("10_162", records) is perko


def test_x_means_two_or_three(records):
    r = next(r for r in records if not r.c.exact)
    assert (r.c.lo, r.c.hi) == (2, 3) and r.c.token() == "X"
    assert r.c.to_json() == [2, 3]


def test_data_files_round_trip_bit_exact():
    table_text = (DATA / "clasp_table.txt").read_text()
    assert format_table_rows(read_table_rows(table_text)) == table_text
    pd_text = (DATA / "pd_codes.txt").read_text()
    header = pd_text.splitlines()[0]
    assert format_pd_codes(read_pd_codes(pd_text), header) == pd_text


def _write(tmp_path, rows):
    p = tmp_path / "t.txt"
    p.write_text(format_table_rows(rows))
    return p


def _good_rows():
    return read_table_rows((DATA / "clasp_table.txt").read_text())


def test_load_table_from_path(tmp_path):
    recs = load_table(_write(tmp_path, _good_rows()))
    assert len(recs) == EXPECTED_KNOTS
    assert all(r.pd is None for r in recs)  # no pd_codes.txt alongside


@pytest.mark.parametrize(
    "mutate, message",
    [
        (lambda rows: rows[:-1], "expected 249"),
        (lambda rows: rows + [rows[0]], "duplicate row"),
        (lambda rows: [("3_1", "1", "1", "7")] + rows[1:], "question2"),
        (lambda rows: [("3_1", "2", "1", "1")] + rows[1:], "exceeds c"),
        (lambda rows: [("3_1", "1", "Y", "1")] + rows[1:], "malformed"),
        (lambda rows: [r if r[0] != "10_162" else (r[0], "9", "9", "9") for r in rows], "values differ"),
    ],
)
def test_load_errors(tmp_path, mutate, message):
    rows = mutate(_good_rows())
    if message == "question2":
        # out-of-range c loads; the audit is what flags it
        recs = load_table(_write(tmp_path, rows))
        assert not audit(recs[:1]).passed
        return
    with pytest.raises(TableError, match=message):
        load_table(_write(tmp_path, rows))


def test_malformed_lines():
    with pytest.raises(TableError):
        read_table_rows("3_1 1 1\n")
    with pytest.raises(TableError):
        read_table_rows("trefoil 1 1 1\n")
    with pytest.raises(TableError):
        read_pd_codes("3_1 X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]\n3_1 X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]\n")
    with pytest.raises(TableError):
        ValueOrRange(3, 2)


def test_data_dir_env(tmp_path, monkeypatch):
    monkeypatch.setenv(tables.DATA_ENV, str(tmp_path))
    assert tables.data_dir() == tmp_path


# -- names -----------------------------------------------------------------


@pytest.mark.parametrize("raw", ["10_97", "10-97", " 10_{97} ", "10₉₇", "1097"])
def test_normalize_name(raw):
    assert normalize_name(raw) == "10_97"


def test_lookup_conventions(records):
    assert lookup("10_162", records, convention="knotinfo").name == "10_163"
    assert lookup("10_83", records, convention="kawauchi").name == "10_86"
    assert knotinfo_name("10_163") == "10_162" and knotinfo_name("10_162") is None
    with pytest.raises(ValueError):
        lookup("3_1", records, convention="hoste")


def test_lookup_unknown_suggests(records):
    with pytest.raises(UnknownKnotError) as info:
        lookup("10_197", records)
    assert "10_97" in info.value.near
    with pytest.raises(KeyError):
        lookup("11_1", records)


# -- audit -----------------------------------------------------------------


def test_audit_passes_table_wide(report):
    assert report.passed, report.failures
    assert len(report.records) == EXPECTED_KNOTS


def test_census(records, report):
    exact, undetermined = equality_census(records)
    assert exact == ["10_97"]
    assert len(undetermined) == 15
    assert all(not lookup(n, records).c.exact for n in undetermined)
    assert report.census_exact == ("10_97",)
    assert equality_census([]) == ([], [])


def test_empty_audit():
    rep = audit([])
    assert rep.passed and rep.to_json()["summary"]["rows"] == 0


def test_shibuya_consistency(records):
    assert all(max(r.g.lo, r.u.lo) <= r.c.hi for r in records)


def test_mod8_rows(report):
    assert report.to_json()["summary"]["mod8_fires"] == ["10_97", "9_49"]
    fired = [r for r in report.records if r.mod8_fires]
    assert all(r.c.lo >= 3 for r in fired)


def test_small_clasp_rows_realizable(records):
    for r in records:
        if r.c.hi <= 2:
            w = two_clasp_realizable(conway_genus2_of(conway(orient(r.pd))))
            assert w, r.name


def test_obstruction_soundness(records):
    # obstruction never fires on a knot the table allows two clasps for
    for r in records:
        nabla = conway(orient(r.pd))
        if max(nabla.doubled_terms) <= 8 and mod8_obstruction(conway_genus2_of(nabla)):
            assert r.c.lo >= 3


def test_flags_name_discrepancy_candidates():
    bogus = KnotRecord("3_1", ValueOrRange(1, 1), ValueOrRange(1, 1), ValueOrRange(1, 1), lookup("10_97").pd)
    rep = audit([bogus])
    assert not rep.passed
    assert any("discrepancy candidate" in f for f in rep.failures)


def test_report_formats(report):
    js = report.to_json()
    json.dumps(js)
    assert js["summary"]["passed"] == EXPECTED_KNOTS
    rows = list(csv.reader(io.StringIO(report.to_csv())))
    assert rows[0][0] == "knot" and len(rows) == EXPECTED_KNOTS + 1
    k = next(r for r in rows if r[0] == "10_97")
    assert k[3] == "3" and k[6] == "1"


def test_parallel_audit_matches(records):
    sub = records[:30]
    assert audit(sub, workers=2).to_json() == audit(sub).to_json()
