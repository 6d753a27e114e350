from __future__ import annotations

import pytest
from hypothesis import strategies as st

from knotclasp.diagram import Diagram, _rebuild, orient, parse_pd
from knotclasp.laurent import parse

TREFOIL_PD = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"  # left-handed in this convention
FIGURE8_PD = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]"


def T(text: str):
    return parse(text, "t")


def Z(text: str):
    return parse(text, "z")


def braid_closure(word, strands: int) -> Diagram:
    """Closed braid; generator +i is a positive crossing of strands i, i+1 (1-based)."""
    level = [0] * strands
    raw = []
    for g in word:
        i = abs(g) - 1
        bl, br = ("s", i, level[i]), ("s", i + 1, level[i + 1])
        level[i] += 1
        level[i + 1] += 1
        tl, tr = ("s", i, level[i]), ("s", i + 1, level[i + 1])
        if g > 0:
            raw.append(((br, tr, tl, bl), 3))
        else:
            raw.append(((bl, br, tr, tl), 1))
    merges = [(("s", p, level[p]), ("s", p, 0)) for p in range(strands)]
    untouched = sum(1 for p in range(strands) if level[p] == 0)
    return _rebuild(raw, merges, (), untouched)


def add_kink(d: Diagram, label: int, over: bool, twist: int) -> Diagram:
    """Reidemeister I: insert a one-crossing curl into arc ``label``."""
    (i, p), _ = [s for s in d.slots[label] if d.crossings[s[0]].is_incoming(s[1])] + [None]
    raw = [(list(x.arcs), x.over_in) for x in d.crossings]
    raw[i][0][p] = ("k", "out")
    a, k, b = label, ("k", "loop"), ("k", "out")
    if over:
        cross = ((k, a, b, k), 1) if twist > 0 else ((k, k, b, a), 3)
    else:
        cross = ((a, k, k, b), 1) if twist > 0 else ((a, b, k, k), 3)
    raw = [(tuple(arcs), oi) for arcs, oi in raw] + [cross]
    return _rebuild(raw, (), (), d.free_loops)


@pytest.fixture
def trefoil() -> Diagram:
    return orient(parse_pd(TREFOIL_PD))


@pytest.fixture
def figure8() -> Diagram:
    return orient(parse_pd(FIGURE8_PD))


def braid_words(max_strands: int = 4, max_len: int = 9):
    return st.integers(2, max_strands).flatmap(
        lambda m: st.tuples(
            st.lists(st.sampled_from([g for k in range(1, m) for g in (k, -k)]), min_size=1, max_size=max_len),
            st.just(m),
        )
    )


ACCEPTANCE = {
    "01": "published constants reproduced exactly",
    "02": "Conway closed form and skein recursion for K_n",
    "03": "Jones closed form and recursions for K_n",
    "04": "Seifert-matrix identity on 1000 random tuples",
    "05": "mod-8 obstruction: odd n only, and implies NotRealizable",
    "06": "two-clasp decision vs brute-force oracle (B=50)",
    "07": "genus 2, unknotting in <= 2 changes, primeness census",
    "08": "Jones span bounds and question-2 inequality",
    "09": "table audit, census and obstruction on 10_97",
    "10": "skein, connected sum and Reidemeister invariance",
}


def pytest_terminal_summary(terminalreporter):
    outcomes = {}
    for reports in terminalreporter.stats.values():
        for rep in reports:
            nodeid = getattr(rep, "nodeid", "")
            if nodeid.endswith("test_oracle_agrees_at_bound_75") and rep.when == "call":
                outcomes["06b"] = rep.outcome
            if "test_acceptance.py::test_criterion_" not in nodeid or getattr(rep, "when", None) != "call":
                continue
            outcomes[nodeid.split("test_criterion_")[1][:2]] = rep.outcome
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for key, text in ACCEPTANCE.items():
        status = {"passed": "PASS", "failed": "FAIL"}.get(outcomes.get(key), "NOT RUN")
        terminalreporter.write_line(f"criterion {int(key):2d}: {status}  {text}")
        if key == "06" and "06b" in outcomes:
            extra = {"passed": "PASS", "failed": "FAIL"}.get(outcomes["06b"])
            terminalreporter.write_line(f"      note: {extra}  same comparison with oracle bound 75 (smallest that agrees)")
